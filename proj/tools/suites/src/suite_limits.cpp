#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>

#include "context.hpp"
#include "pdpp/asymptotics.hpp"
#include "pdpp/laws.hpp"

namespace pdpp::suites {
namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

ExperimentReport reference_check() {
    ExperimentReport rep;
    rep.add_abs("F1_at_0", gumbel_reference(1, 0.0), std::exp(-1.0), 1e-15);
    rep.add_abs("F2_at_0", gumbel_reference(2, 0.0), 2.0 * std::exp(-1.0), 1e-15);
    bool valid = true;
    for (int m = 1; m <= 3; ++m) {
        double prev = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double f = gumbel_reference(m, -5.0 + 0.1 * k);
            valid = valid && f >= prev && f <= 1.0;
            prev = f;
        }
        valid = valid && gumbel_reference(m, -5.0) < 1e-9 && gumbel_reference(m, 40.0) > 1.0 - 1e-15;
    }
    rep.add_abs("valid_cdf", valid ? 1.0 : 0.0, 1.0, 0.5);
    // P(Z1 <= x1, Z2 <= x2) for the Poisson process with intensity e^{-z}
    double worst = 0.0;
    for (double x1 : {-1.0, 0.0, 0.7, 2.0, 4.0})
        for (double x2 : {-1.5, -0.5, 0.3, 1.0, 3.0}) {
            const double exact = x2 >= x1 ? std::exp(-std::exp(-x1))
                                          : std::exp(-std::exp(-x2)) * (1.0 + std::exp(-x2) - std::exp(-x1));
            worst = std::max(worst, std::abs(gumbel_joint_cdf(x1, x2) - exact));
        }
    rep.add_below("joint_cdf_vs_poisson_form", worst, 1e-8);
    rep.add_abs("beta_at_e", beta_scale({0.0, std::exp(1.0)}), 1.0, 1e-14);
    return rep;
}

ExperimentReport gumbel_marginal(const Context& ctx, std::uint64_t seed, double alpha, double theta, int m, long full_n,
                                 long quick_n, double ks_threshold) {
    LimitExperiment e;
    e.params = {alpha, theta};
    e.m = m;
    e.replicates = ctx.replicates(full_n, quick_n);
    e.seed = seed;
    e.workers = ctx.workers();
    const GumbelResult r = gumbel_experiment(e);
    const double widen = ctx.widen(full_n, quick_n);
    ExperimentReport rep = gumbel_report(e, r, ks_threshold * widen, 0.03 * widen);
    rep.notes.push_back(fmt("mean sticks per replicate %.1f", r.mean_sticks));
    return rep;
}

ExperimentReport gumbel_trend(const Context& ctx, std::uint64_t seed, double alpha, long full_n, long quick_n) {
    ExperimentReport rep;
    rep.seed = seed;
    rep.replicates = ctx.replicates(full_n, quick_n);
    rep.params = {{"alpha", alpha}, {"theta_low", 200.0}, {"theta_high", 2000.0}};
    std::vector<double> ks;
    for (double theta : {200.0, 2000.0}) {
        LimitExperiment e;
        e.params = {alpha, theta};
        e.replicates = rep.replicates;
        e.seed = seed;
        e.workers = ctx.workers();
        const GumbelResult r = gumbel_experiment(e);
        Statistic s;
        s.name = fmt("ks_Z1_theta_%g", theta);
        s.value = r.ks[0];
        rep.add(s);
        rep.add_abs(fmt("uncertified_theta_%g", theta), static_cast<double>(r.uncertified), 0.0, 0.5);
        ks.push_back(r.ks[0]);
    }
    rep.add_above("ks_decrease_200_to_2000", ks[0] - ks[1], 0.0);
    return rep;
}

ExperimentReport rho_limit() {
    ExperimentReport rep;
    const double alpha = 0.3;
    rep.params = {{"alpha", alpha}, {"theta", 1000.0}, {"theta_check", 2000.0}};
    for (int m = 1; m <= 2; ++m)
        for (double x : {-1.0, 0.0, 1.0}) {
            const double g1 = gumbel_rho_gap({alpha, 1000.0}, m, x);
            const double g2 = gumbel_rho_gap({alpha, 2000.0}, m, x);
            rep.add_below(fmt("gap_m%g_x%g_theta_1000", m, x), g1, 0.05);
            Statistic& s = rep.add_below(fmt("gap_m%g_x%g_theta_2000_below_theta_1000", m, x), g2, g1);
            s.reference = g1;
        }
    return rep;
}

ExperimentReport sigma2_check(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    rep.add_abs("sigma2_0_2", sigma2(0.0, 2.0), 2.0, 1e-13);
    rep.add_abs("sigma2_half_2", sigma2(0.5, 2.0), 4.0, 1e-12);
    rep.add_below("identity_gap_half_2", sigma2_identity_gap({0.5, 1.0}, 2.0), 1e-8);
    double worst_gap = 0.0;
    for (double a : {0.0, 0.3, 0.7})
        for (double p : {0.8, 1.5, 2.5}) {
            if (p <= a) continue;
            worst_gap = std::max(worst_gap, sigma2_identity_gap({a, 1.0}, p));
        }
    rep.add_below("identity_gap_grid", worst_gap, 1e-8);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double min_s2 = INFINITY, worst_cpp = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double a = 0.99 * u(gen);
        double p = a + 0.01 + 4.0 * u(gen);
        if (std::abs(p - 1.0) < 1e-3) p += 0.01;
        const double s2 = sigma2(a, p);
        min_s2 = std::min(min_s2, s2);
        const double direct = boost::math::tgamma(1.0 - a) * boost::math::tgamma(2.0 * p - a) /
                                  std::pow(boost::math::tgamma(p - a), 2) +
                              a - p * p;
        worst_cpp = std::max(worst_cpp, std::abs(limit_covariance(a, p, p) - direct) / std::max(1.0, std::abs(direct)));
    }
    rep.add_above("min_sigma2_random", min_s2, 0.0);
    rep.add_below("C_pp_vs_sigma2_formula", worst_cpp, 1e-12);
    for (double a : {0.0, 0.5}) {
        const double ratio = scaled_finite_variance({a, 1e4}, 2.0) / limit_scaled_covariance(a, 2.0, 2.0);
        rep.add_abs(fmt("scaled_finite_variance_ratio_alpha_%g_theta_1e4", a), ratio, 1.0, 0.02);
    }
    return rep;
}

// standard deviation of the truncated tail on the W scale; adds kTailSd^2 to Var(W)
constexpr double kTailSd = 0.03;

ExperimentReport clt_run(const Context& ctx, std::uint64_t seed, double alpha, double theta, double p2, long full_n,
                         long quick_n, bool variance_band) {
    LimitExperiment e;
    e.params = {alpha, theta};
    e.rescale = LimitExperiment::Rescale::clt;
    e.p = 2.0;
    e.p2 = p2;
    e.replicates = ctx.replicates(full_n, quick_n);
    e.seed = seed;
    e.workers = ctx.workers();
    e.w_tail_sd = kTailSd;
    const CltResult r = clt_experiment(e);
    const double widen = ctx.widen(full_n, quick_n);
    ExperimentReport rep;
    rep.params = params_json(e.params);
    rep.params["p"] = e.p;
    if (!std::isnan(p2)) rep.params["p2"] = p2;
    rep.replicates = e.replicates;
    rep.seed = seed;
    rep.add_se("mean_W", r.mean.mean, r.mean.std_error, 0.0, 3.5);
    if (std::isnan(p2)) {
        if (variance_band)
            rep.add_abs("var_W", r.variance, r.sigma2, 0.05 * r.sigma2 * widen);
        else
            rep.add_abs("var_W_relative", r.variance / r.sigma2, 1.0, 0.05 * widen);
        rep.add_below("ks_normal", r.ks, 0.02 * widen);
    } else {
        rep.add_se("var_W", r.variance, r.variance_se, r.sigma2, 4.0);
        rep.add_se("cov_W", r.covariance, r.covariance_se, r.covariance_reference, 4.0);
    }
    rep.add_abs("uncertified", static_cast<double>(r.uncertified), 0.0, 0.5);
    rep.notes.push_back(fmt("mean sticks per replicate %.1f; variance SE %.4f", r.mean_sticks, r.variance_se));
    return rep;
}

ExperimentReport clt_finite_mean(const Context& ctx, std::uint64_t seed) {
    LimitExperiment e;
    e.params = {0.5, 1e3};
    e.rescale = LimitExperiment::Rescale::clt;
    e.p = 2.0;
    e.replicates = ctx.replicates(50'000, 10'000);
    e.seed = seed;
    e.workers = ctx.workers();
    e.w_tail_sd = kTailSd;
    const CltResult r = clt_experiment(e);
    ExperimentReport rep;
    rep.params = params_json(e.params);
    rep.params["p"] = e.p;
    rep.replicates = e.replicates;
    rep.seed = seed;
    rep.add_se("theta_H2_mean", r.scaled_h.mean, r.scaled_h.std_error, r.scaled_h_reference, 3.5);
    rep.add_abs("uncertified", static_cast<double>(r.uncertified), 0.0, 0.5);
    return rep;
}

} // namespace

SuiteRun run_gumbel(const SuiteOptions& opt) {
    Context ctx("gumbel", opt);
    ctx.run("gumbel.reference", [](std::uint64_t) { return reference_check(); });
    ctx.run("gumbel.ks_alpha0_theta500",
            [&](std::uint64_t s) { return gumbel_marginal(ctx, s, 0.0, 500.0, 1, 100'000, 10'000, 0.02); });
    ctx.run("gumbel.ks_alpha0.3_theta500",
            [&](std::uint64_t s) { return gumbel_marginal(ctx, s, 0.3, 500.0, 1, 100'000, 5'000, 0.02); });
    ctx.run("gumbel.trend_alpha0", [&](std::uint64_t s) { return gumbel_trend(ctx, s, 0.0, 20'000, 10'000); });
    ctx.run("gumbel.trend_alpha0.3", [&](std::uint64_t s) { return gumbel_trend(ctx, s, 0.3, 20'000, 1'500); });
    ctx.run("gumbel.m2_alpha0.3_theta1000",
            [&](std::uint64_t s) { return gumbel_marginal(ctx, s, 0.3, 1000.0, 2, 20'000, 2'500, 0.03); });
    ctx.run("gumbel.rho_limit", [](std::uint64_t) { return rho_limit(); });
    return ctx.take();
}

SuiteRun run_clt(const SuiteOptions& opt) {
    Context ctx("clt", opt);
    ctx.run("clt.sigma2", [](std::uint64_t s) { return sigma2_check(s); });
    ctx.run("clt.alpha0_theta1e4",
            [&](std::uint64_t s) { return clt_run(ctx, s, 0.0, 1e4, NAN, 100'000, 6'000, true); });
    ctx.run("clt.covariance_alpha0_theta1e4",
            [&](std::uint64_t s) { return clt_run(ctx, s, 0.0, 1e4, 3.0, 20'000, 2'000, false); });
    ctx.run("clt.alpha0.5_theta1e4",
            [&](std::uint64_t s) { return clt_run(ctx, s, 0.5, 1e4, NAN, 20'000, 2'500, false); });
    ctx.run("clt.finite_mean", [&](std::uint64_t s) { return clt_finite_mean(ctx, s); });
    return ctx.take();
}

} // namespace pdpp::suites
