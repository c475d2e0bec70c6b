#include <cstdio>
#include <exception>
#include <new>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pdpp/errors.hpp"

using namespace pdpp::cli;

int main(int argc, char** argv) {
    CLI::App app{"pdpp: Poisson-Dirichlet PD(alpha, theta) numerics"};
    app.set_config("--config", "", "TOML/INI file of option values");
    app.require_subcommand(1);

    DickmanArgs d;
    auto* dk = app.add_subcommand("dickman", "tabulate rho_{alpha,theta} on a uniform grid");
    dk->add_option("--alpha", d.alpha, "0 <= alpha < 1")->required();
    dk->add_option("--theta", d.theta, "theta > -alpha")->required();
    dk->add_option("--s-max", d.s_max, "right end of the grid")->capture_default_str();
    dk->add_option("--step", d.step, "grid step")->capture_default_str();
    dk->add_option("--method", d.method)
        ->check(CLI::IsMember({"series", "volterra", "renewal", "auto"}))
        ->capture_default_str();
    dk->add_option("--out", d.out, "CSV path; the JSON header goes next to it (stdout when empty)");

    SampleArgs s;
    std::uint64_t seed = 0;
    auto* sp = app.add_subcommand("sample", "draw replicates from PD(alpha, theta)");
    sp->add_option("--alpha", s.alpha)->required();
    sp->add_option("--theta", s.theta)->required();
    sp->add_option("--mode", s.mode)
        ->check(CLI::IsMember({"sticks", "top-m", "hp", "mean"}))
        ->capture_default_str();
    sp->add_option("--m", s.m, "ranked weights per replicate")->capture_default_str();
    sp->add_option("--p", s.p, "power of H_p")->capture_default_str();
    sp->add_option("--nu-file", s.nu_file, "JSON description of nu");
    sp->add_option("--nu", s.nu, "inline JSON description of nu");
    sp->add_option("--n", s.n, "replicates")->capture_default_str();
    auto* seed_opt = sp->add_option("--seed", seed);
    sp->add_option("--eps", s.eps, "residual mass or tail tolerance")->capture_default_str();
    sp->add_option("--count", s.count, "sticks mode: fixed number of sticks instead of --eps");
    sp->add_option("--format", s.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sp->add_option("--out", s.out, "output path; CSV metadata goes next to it (stdout when empty)");
    sp->add_option("--workers", s.workers, "0 for all cores")->capture_default_str();

    VerifyArgs v;
    auto* vf = app.add_subcommand("verify", "run verification suites");
    vf->add_option("--suite", v.suite)
        ->check(CLI::IsMember({"all", "core", "dickman", "laws", "gumbel", "clt", "markov-krein"}))
        ->capture_default_str();
    vf->add_option("--budget", v.budget)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    vf->add_option("--seed", v.seed)->capture_default_str();
    vf->add_option("--out", v.out, "JSON report path (stdout when empty)");
    vf->add_option("--workers", v.workers, "0 for all cores")->capture_default_str();
    vf->add_option("--max-replicates", v.max_replicates, "cap on every replicate count, 0 for none")
        ->capture_default_str();
    vf->add_flag("--quiet", v.quiet, "no progress lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (*dk) return run_dickman(d);
        if (*sp) {
            if (*seed_opt) s.seed = seed;
            return run_sample(s);
        }
        return run_verify(v);
    } catch (const pdpp::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return bad_input;
    } catch (const pdpp::numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return internal;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "error: out of memory\n");
        return internal;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return internal;
    }
}
