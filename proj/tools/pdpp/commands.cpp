#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdpp/dickman.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/io.hpp"
#include "pdpp/nu.hpp"
#include "pdpp/params.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/stats.hpp"
#include "pdpp/suites.hpp"
#include "pdpp/tabulated.hpp"

namespace pdpp::cli {

namespace {

void check_writable(const std::string& path) {
    std::ofstream os(path, std::ios::app);
    if (!os) throw domain_error("cannot write " + path);
}

struct Replicate {
    std::vector<std::vector<double>> rows;
    bool uncertified = false;
    long sticks = 0;
    double truncation_bound = 0.0;
};

NuSpec load_nu(const SampleArgs& a) {
    if (!a.nu_file.empty() && !a.nu.empty()) throw domain_error("give only one of --nu-file and --nu");
    if (!a.nu_file.empty()) return NuSpec::from_json(read_json(a.nu_file));
    if (!a.nu.empty()) {
        try {
            return NuSpec::from_json(nlohmann::json::parse(a.nu));
        } catch (const nlohmann::json::exception& e) {
            throw domain_error(std::string("--nu: ") + e.what());
        }
    }
    throw domain_error("mean mode needs --nu-file or --nu");
}

} // namespace

int run_dickman(const DickmanArgs& a) {
    const PDParams p = validate_params(a.alpha, a.theta);
    if (!(a.s_max > 0.0) || !std::isfinite(a.s_max)) throw domain_error("--s-max must be positive");
    if (!(a.step > 0.0) || !(a.step <= a.s_max)) throw domain_error("--step must lie in (0, s-max]");
    const RhoMethod method = method_from_name(a.method);
    const TabulatedFunction tab = rho_table(p, a.s_max, a.step, method);
    const TableHeader header{p.alpha, p.theta, tab.step(), method_name(method)};
    if (a.out.empty()) {
        CsvTable t;
        t.columns = {"s", "rho"};
        for (std::size_t i = 0; i < tab.size(); ++i) t.rows.push_back({tab.node(i), tab.values()[i]});
        write_csv(t, std::cout);
        return ok;
    }
    check_writable(a.out);
    const std::string hp = save_table(tab, header, a.out, "rho");
    std::fprintf(stderr, "wrote %s and %s (%zu rows)\n", a.out.c_str(), hp.c_str(), tab.size());
    return ok;
}

int run_sample(const SampleArgs& a) {
    const PDParams p = validate_params(a.alpha, a.theta);
    if (a.n < 1) throw domain_error("--n must be at least 1");
    if (a.workers < 0) throw domain_error("--workers must be non-negative");
    if (a.m < 1) throw domain_error("--m must be at least 1");
    if (!(a.eps > 0.0 && a.eps < 1.0)) throw domain_error("--eps must lie in (0, 1)");
    if (a.count < 0) throw domain_error("--count must be non-negative");
    if (a.mode == "hp" && !(a.p > p.alpha))
        throw domain_error("H_p needs p > alpha (got p = " + std::to_string(a.p) + ")");

    const bool generated = !a.seed.has_value();
    const std::uint64_t seed =
        generated ? (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}() : *a.seed;
    if (generated) std::fprintf(stderr, "seed %llu\n", static_cast<unsigned long long>(seed));

    nlohmann::ordered_json meta;
    meta["command"] = "sample";
    meta["mode"] = a.mode;
    meta["params"] = {{"alpha", p.alpha}, {"theta", p.theta}};
    meta["n"] = a.n;
    meta["seed"] = seed;
    meta["seed_generated"] = generated;

    CsvTable table;
    std::vector<Replicate> reps;
    std::optional<NuSpec> nu;

    if (a.mode == "sticks") {
        const StopRule rule = a.count > 0 ? StopRule::count(a.count) : StopRule::residual(a.eps);
        meta["stop_rule"] = a.count > 0 ? nlohmann::ordered_json{{"kind", "count"}, {"n", a.count}}
                                        : nlohmann::ordered_json{{"kind", "residual_below"}, {"eps", a.eps}};
        table.columns = {"replicate", "index", "value", "residual"};
        reps = run_replicates<Replicate>(
            a.n, seed,
            [&](RngStream& rng, long i) {
                const StickSample st = stick_breaking(p, rule, rng);
                Replicate r;
                double left = 1.0;
                for (std::size_t k = 0; k < st.sticks.size(); ++k) {
                    left -= st.sticks[k];
                    const double res = k + 1 == st.sticks.size() ? st.residual : std::max(left, 0.0);
                    r.rows.push_back({static_cast<double>(i), static_cast<double>(k + 1), st.sticks[k], res});
                }
                r.uncertified = st.capped;
                r.sticks = static_cast<long>(st.sticks.size());
                return r;
            },
            a.workers);
    } else if (a.mode == "top-m") {
        meta["stop_rule"] = {{"kind", "certified_top_m"}, {"m", a.m}, {"stick_cap", kDefaultStickCap}};
        table.columns = {"replicate", "rank", "value"};
        reps = run_replicates<Replicate>(
            a.n, seed,
            [&](RngStream& rng, long i) {
                const RankedPrefix t = top_m(p, a.m, rng);
                Replicate r;
                for (std::size_t k = 0; k < t.weights.size(); ++k)
                    r.rows.push_back({static_cast<double>(i), static_cast<double>(k + 1), t.weights[k]});
                r.uncertified = !t.certified;
                r.sticks = t.sticks_used;
                return r;
            },
            a.workers);
    } else if (a.mode == "hp") {
        meta["power"] = a.p;
        meta["stop_rule"] = {{"kind", "tail_mean_below"}, {"tol", a.eps}, {"stick_cap", kDefaultStickCap}};
        table.columns = {"replicate", "value"};
        reps = run_replicates<Replicate>(
            a.n, seed,
            [&](RngStream& rng, long i) {
                const HpDraw d = sample_Hp(p, a.p, rng, a.eps, TailPolicy::truncate);
                Replicate r;
                r.rows.push_back({static_cast<double>(i), d.value});
                r.uncertified = !d.certified;
                r.sticks = d.sticks;
                return r;
            },
            a.workers);
    } else {
        nu = load_nu(a);
        meta["nu"] = nu->to_json();
        meta["stop_rule"] = {{"kind", "residual_below"}, {"eps", a.eps}};
        table.columns = {"replicate", "value"};
        reps = run_replicates<Replicate>(
            a.n, seed,
            [&](RngStream& rng, long i) {
                const MeanDraw d = sample_mean_functional(p, *nu, rng, a.eps, TailPolicy::truncate);
                Replicate r;
                r.rows.push_back({static_cast<double>(i), d.value});
                r.sticks = d.sticks;
                r.truncation_bound = d.truncation_bound;
                return r;
            },
            a.workers);
    }

    long uncertified = 0;
    double sticks = 0.0;
    for (auto& r : reps) {
        uncertified += r.uncertified ? 1 : 0;
        sticks += static_cast<double>(r.sticks);
        for (auto& row : r.rows) table.rows.push_back(std::move(row));
    }
    meta["columns"] = table.columns;
    meta["mean_sticks"] = sticks / static_cast<double>(a.n);
    meta["uncertified"] = uncertified;
    if (uncertified > 0) {
        const std::string w = std::to_string(uncertified) + " of " + std::to_string(a.n) +
                              " replicates hit the stick cap before the stop rule was certified";
        meta["warning"] = w;
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }

    int code = ok;
    if (nu) {
        nlohmann::ordered_json check;
        const auto mean = nu->mean();
        if (mean) {
            RunningStats st;
            double bound = 0.0;
            for (std::size_t i = 0; i < reps.size(); ++i) {
                st.add(table.rows[i][1]);
                bound = std::max(bound, reps[i].truncation_bound);
            }
            const MCEstimate e = st.estimate();
            if (!std::isfinite(bound)) bound = a.eps * std::abs(*mean);
            const double tol = 4.0 * e.std_error + bound;
            const bool pass = std::abs(e.mean - *mean) <= tol;
            check = {{"sample_mean", e.mean}, {"std_error", e.std_error}, {"nu_mean", *mean},
                     {"tolerance", tol},      {"pass", pass}};
            if (!pass) {
                std::fprintf(stderr, "self-check failed: sample mean %.6g, nu mean %.6g, tolerance %.3g\n", e.mean,
                             *mean, tol);
                code = check_failed;
            }
        } else {
            check = {{"skipped", "nu has no mean"}};
        }
        meta["self_check"] = check;
    }

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["meta"] = meta;
        j["table"] = table_json(table);
        if (a.out.empty())
            std::cout << j.dump(2) << '\n';
        else
            write_json(j, a.out);
    } else if (a.out.empty()) {
        write_csv(table, std::cout);
        std::cerr << meta.dump() << '\n';
    } else {
        write_csv(table, a.out);
        write_json(meta, header_path_for(a.out));
    }
    return code;
}

int run_verify(const VerifyArgs& a) {
    SuiteOptions opt;
    opt.budget = budget_from_name(a.budget);
    opt.seed = a.seed;
    opt.workers = a.workers;
    opt.max_replicates = a.max_replicates;
    if (!a.quiet) opt.progress = [](const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); };
    if (!a.out.empty()) check_writable(a.out);
    if (a.workers > 0) set_default_workers(a.workers);

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SuiteRun> runs = run_suites(a.suite, opt);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const nlohmann::ordered_json j = verify_json(runs, opt.budget, opt.seed, seconds);
    if (a.out.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_json(j, a.out);

    int errors = 0;
    bool pass = true;
    for (const auto& r : runs) {
        errors += r.errors;
        pass = pass && r.passed();
    }
    if (!a.quiet)
        std::fprintf(stderr, "%s in %.1f s%s\n", pass ? "all checks passed" : "some checks failed", seconds,
                     errors ? " (with numerical errors)" : "");
    if (errors > 0) return internal;
    return pass ? ok : check_failed;
}

} // namespace pdpp::cli
