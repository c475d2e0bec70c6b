#include <cmath>
#include <complex>

#include "context.hpp"
#include "pdpp/markov_krein.hpp"

namespace pdpp::suites {
namespace {

using cplx = std::complex<double>;

const NuSpec& bernoulli() {
    static const NuSpec nu = NuSpec::discrete({{0.0, 0.5}, {1.0, 0.5}});
    return nu;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

ExperimentReport kernels_check() {
    ExperimentReport rep;
    double g = 0.0, s = 0.0, l = 0.0;
    for (double u : {0.5, 1.0, 2.0}) {
        for (double th : {0.5, 1.0, 2.0}) g = std::max(g, kernel_gap_gamma(th, u));
        for (double a : {0.3, 0.7}) s = std::max(s, kernel_gap_stable(a, u));
        l = std::max(l, kernel_gap_log(u));
    }
    rep.add_below("gamma_kernel_gap", g, 1e-10);
    rep.add_below("stable_kernel_gap", s, 1e-10);
    rep.add_below("log_kernel_gap", l, 1e-10);
    return rep;
}

ExperimentReport cf_nu_check() {
    ExperimentReport rep;
    rep.add_abs("point_mass", std::abs(cf_nu(NuSpec::point_mass(0.7), 1.3) - std::exp(cplx(0.0, 0.91))), 0.0, 1e-15);
    rep.add_abs("bernoulli_at_pi", std::abs(cf_nu(bernoulli(), M_PI)), 0.0, 1e-15);
    rep.add_abs("cauchy_at_1", std::abs(cf_nu(NuSpec::cauchy(0.0, 1.0), 1.0) - std::exp(-1.0)), 0.0, 1e-15);
    return rep;
}

ExperimentReport arcsine(const Context& ctx, std::uint64_t seed) {
    TransformOptions o;
    o.replicates = ctx.replicates(1'000'000, 100'000);
    o.seed = seed;
    o.eps = 1e-6;
    o.workers = ctx.workers();
    const std::vector<double> z{1.5, 2.0, 3.0, 5.0};
    const TransformCheckReport r = mk_identity_check({0.0, 1.0}, bernoulli(), z, o);
    ExperimentReport rep = r.to_report({0.0, 1.0}, o, 3.5);
    rep.params["nu"] = bernoulli().to_json();
    rep.add_abs("rhs_at_2_is_root_half", r.rhs[1], std::sqrt(0.5), 1e-15);
    double arcsine_stieltjes = 1.0 / std::sqrt(2.0 * (2.0 - 1.0));
    rep.add_abs("classical_stieltjes_at_2", r.rhs[1], arcsine_stieltjes, 1e-15);
    bool shape = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        shape = shape && r.lhs[i].mean > 0.0;
        if (i > 0) shape = shape && r.lhs[i].mean < r.lhs[i - 1].mean;
    }
    rep.add_abs("lhs_positive_decreasing", shape ? 1.0 : 0.0, 1.0, 0.5);
    return rep;
}

ExperimentReport identity_run(const Context& ctx, std::uint64_t seed, const PDParams& p, long full_n, long quick_n) {
    TransformOptions o;
    o.replicates = ctx.replicates(full_n, quick_n);
    o.seed = seed;
    o.eps = 1e-3;
    o.workers = ctx.workers();
    const TransformCheckReport r = mk_identity_check(p, bernoulli(), {2.0, 3.0}, o);
    ExperimentReport rep = r.to_report(p, o, 3.5);
    rep.params["nu"] = bernoulli().to_json();
    return rep;
}

ExperimentReport mean_preservation(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    const long n = ctx.replicates(100'000, 20'000);
    rep.replicates = n;
    struct Case {
        PDParams p;
        NuSpec nu;
    };
    const std::vector<Case> cases{{{0.0, 1.0}, bernoulli()},
                                  {{0.3, 0.7}, NuSpec::uniform(0.0, 1.0)},
                                  {{0.0, 2.5}, NuSpec::discrete({{-1.0, 0.2}, {0.5, 0.5}, {3.0, 0.3}})}};
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const Case& c = cases[k];
        const RunningStats s = reduce_replicates(
            n, seed + k, RunningStats{},
            [&](RngStream& rng, long, RunningStats& acc) {
                acc.add(sample_mean_functional(c.p, c.nu, rng, 1e-6, TailPolicy::truncate).value);
            },
            [](RunningStats& a, const RunningStats& b) { a.merge(b); }, ctx.workers());
        const MCEstimate e = s.estimate();
        rep.add_se("mean_" + c.nu.name() + fmt("_(%g,%g)", c.p.alpha, c.p.theta), e.mean, e.std_error, *c.nu.mean(),
                   3.5);
    }
    RngStream rng(seed, 99);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
        worst = std::max(worst, std::abs(sample_mean_functional({0.3, 0.7}, NuSpec::point_mass(2.0), rng, 1e-6).value - 2.0));
    rep.add_below("point_mass_truncation", worst, 2.0 * 1e-6 + 1e-15);
    return rep;
}

ExperimentReport cf_series_check(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    rep.add_abs("t0_is_one", std::abs(cf_series({0.5, 0.5}, bernoulli(), 0.0).value - 1.0), 0.0, 1e-300);
    for (double t : {0.25, 0.5}) {
        const CfSeriesResult r = cf_series({0.5, 0.5}, NuSpec::point_mass(0.7), t);
        rep.add_below(fmt("point_mass_gap_t_%g", t), std::abs(r.value - std::exp(cplx(0.0, 0.7 * t))),
                      r.remainder_bound + 10.0 * r.quadrature_error);
    }
    const cplx plus = cf_series({0.5, 0.5}, bernoulli(), 0.5).value;
    const cplx minus = cf_series({0.5, 0.5}, bernoulli(), -0.5).value;
    rep.add_below("conjugate_symmetry", std::abs(minus - std::conj(plus)), 1e-12);

    const CfSeriesResult s = cf_series({0.0, 1.0}, bernoulli(), 0.5);
    TransformOptions o;
    o.replicates = ctx.replicates(1'000'000, 100'000);
    o.seed = seed;
    o.eps = 1e-6;
    o.workers = ctx.workers();
    const EmpiricalCf e = empirical_cf({0.0, 1.0}, bernoulli(), {0.5}, o)[0];
    rep.replicates = o.replicates;
    auto component = [&](const std::string& name, double series, double emp, double se) {
        Statistic st;
        st.name = name;
        st.value = series;
        st.se = se;
        st.reference = emp;
        st.tolerance = std::max(3.5 * se, s.remainder_bound);
        st.pass = std::abs(series - emp) < st.tolerance;
        rep.add(st);
    };
    component("series_vs_empirical_re", s.value.real(), e.value.real(), e.se_re);
    component("series_vs_empirical_im", s.value.imag(), e.value.imag(), e.se_im);

    // the majorant used for the remainder must dominate |psi(x) - 1| pointwise
    long violations = 0;
    const std::vector<NuSpec> kinds{bernoulli(), NuSpec::point_mass(-1.5), NuSpec::cauchy(0.3, 2.0),
                                    NuSpec::uniform(-1.0, 2.0)};
    for (const NuSpec& nu : kinds)
        for (double a : {0.0, 0.3, 0.7}) {
            const CfIncrementBound b = cf_increment_bound(nu, a);
            for (int k = -400; k <= 400; ++k) {
                const double x = 0.05 * k;
                if (std::abs(cf_nu(nu, x) - 1.0) > b(x) * (1.0 + 1e-12) + 1e-15) ++violations;
            }
        }
    rep.add_abs("majorant_violations", static_cast<double>(violations), 0.0, 0.5);
    return rep;
}

ExperimentReport fixed_point(const Context& ctx, std::uint64_t seed) {
    TransformOptions o;
    o.replicates = ctx.replicates(200'000, 20'000);
    o.seed = seed;
    o.eps = 1e-3;
    o.tail = TailPolicy::truncate;
    o.workers = ctx.workers();
    return fixed_point_check({0.5, 0.5}, NuSpec::cauchy(0.0, 1.0), {0.5, 1.0, 2.0}, o, true, 3.5);
}

ExperimentReport non_fixed_point(const Context& ctx, std::uint64_t seed) {
    TransformOptions o;
    o.replicates = ctx.replicates(100'000, 20'000);
    o.seed = seed;
    o.eps = 1e-3;
    o.workers = ctx.workers();
    return fixed_point_check({0.5, 0.5}, NuSpec::uniform(0.0, 1.0), {2.0}, o, false, 5.0);
}

ExperimentReport composition(const Context& ctx, std::uint64_t seed) {
    ComposeOptions co;
    co.direct.replicates = ctx.replicates(100'000, 10'000);
    co.direct.seed = seed;
    co.direct.workers = ctx.workers();
    ExperimentReport rep = compose_check(0.5, 0.25, 0.5, bernoulli(), co);
    double rejected = 0.0;
    try {
        compose_check(0.5, 0.5, 0.5, bernoulli(), co);
    } catch (const domain_error&) {
        rejected = 1.0;
    }
    rep.add_abs("beta_not_below_alpha_rejected", rejected, 1.0, 0.5);
    return rep;
}

ExperimentReport membership(const Context& ctx, std::uint64_t seed) {
    TransformOptions o;
    o.replicates = ctx.replicates(1'000'000, 100'000);
    o.seed = seed;
    o.eps = 1e-2;
    o.workers = ctx.workers();
    const PDParams p{0.5, -0.25};
    const TransformCheckReport r = p_theta_membership_check(p, bernoulli(), {0.5, 1.0, 2.0}, o);
    ExperimentReport rep = r.to_report(p, o, 3.5);
    rep.params["nu"] = bernoulli().to_json();
    const double c = 0.8;
    rep.add_abs("theta0_point_mass_rhs", membership_rhs({0.5, 0.0}, NuSpec::point_mass(c), 1.0), -std::log1p(c),
                1e-12);
    return rep;
}

} // namespace

SuiteRun run_markov_krein(const SuiteOptions& opt) {
    Context ctx("markov-krein", opt);
    ctx.run("mk.kernels", [](std::uint64_t) { return kernels_check(); });
    ctx.run("mk.cf_nu", [](std::uint64_t) { return cf_nu_check(); });
    ctx.run("mk.arcsine", [&](std::uint64_t s) { return arcsine(ctx, s); });
    ctx.run("mk.identity_half_half",
            [&](std::uint64_t s) { return identity_run(ctx, s, {0.5, 0.5}, 200'000, 50'000); });
    ctx.run("mk.identity_theta0", [&](std::uint64_t s) { return identity_run(ctx, s, {0.5, 0.0}, 100'000, 20'000); });
    ctx.run("mk.mean_preservation", [&](std::uint64_t s) { return mean_preservation(ctx, s); });
    ctx.run("mk.cf_series", [&](std::uint64_t s) { return cf_series_check(ctx, s); });
    ctx.run("mk.fixed_point_cauchy", [&](std::uint64_t s) { return fixed_point(ctx, s); });
    ctx.run("mk.non_fixed_uniform", [&](std::uint64_t s) { return non_fixed_point(ctx, s); });
    ctx.run("mk.composition", [&](std::uint64_t s) { return composition(ctx, s); });
    ctx.run("mk.membership", [&](std::uint64_t s) { return membership(ctx, s); });
    return ctx.take();
}

} // namespace pdpp::suites
