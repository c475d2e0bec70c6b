#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "context.hpp"
#include "pdpp/core.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/special.hpp"

namespace pdpp::suites {
namespace {

using cplx = std::complex<double>;

double accepts(double alpha, double theta) {
    try {
        validate_params(alpha, theta);
        return 1.0;
    } catch (const domain_error&) {
        return 0.0;
    }
}

ExperimentReport params_check() {
    ExperimentReport rep;
    rep.add_abs("accepts_0_1", accepts(0.0, 1.0), 1.0, 0.5);
    rep.add_abs("accepts_0.5_-0.4", accepts(0.5, -0.4), 1.0, 0.5);
    rep.add_abs("rejects_1_1", accepts(1.0, 1.0), 0.0, 0.5);
    rep.add_abs("rejects_0.5_-0.5", accepts(0.5, -0.5), 0.0, 0.5);
    return rep;
}

ExperimentReport log_c_check() {
    ExperimentReport rep;
    rep.add_abs("log_c_0", log_c(0, {0.3, 0.7}), 0.0, 1e-14);
    rep.add_abs("log_c_3_alpha0_theta2", log_c(3, {0.0, 2.0}), std::log(8.0), 1e-13);
    rep.add_abs("log_c_1_half_half", log_c(1, {0.5, 0.5}), std::log(0.5), 1e-13);
    double worst = 0.0;
    for (double th : {0.5, 1.0, 2.5, 10.0})
        for (int n = 0; n <= 10; ++n) {
            const double exact = std::pow(th, n);
            worst = std::max(worst, std::abs(std::exp(log_c(n, {0.0, th})) - exact) / exact);
        }
    rep.add_below("alpha0_power_rel_error", worst, 1e-12);
    return rep;
}

ExperimentReport recurrence_check(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    long failures = 0;
    for (int k = 0; k < 20; ++k) {
        const double a = k < 4 ? 0.0 : 0.95 * u(gen);
        const PDParams p{a, -a + 0.01 + 10.0 * u(gen)};
        for (int m = 0; m <= 6; ++m)
            for (int n = 0; n <= 6; ++n) {
                worst = std::max(worst, std::abs(log_c(m + n, p) - log_c(m, p) - log_c(n, p.shifted(m))));
                if (!c_recurrence_check(m, n, p)) ++failures;
            }
    }
    rep.replicates = 20;
    rep.add_below("max_log_gap", worst, 1e-10);
    rep.add_abs("failed_checks", static_cast<double>(failures), 0.0, 0.5);
    return rep;
}

ExperimentReport c_alpha_check() {
    ExperimentReport rep;
    rep.add_abs("C_0", C_alpha(0.0), 0.0, 1e-300);
    rep.add_abs("C_0.5", C_alpha(0.5), 0.5 / std::sqrt(M_PI), 1e-15);
    rep.add_abs("C_0.9", C_alpha(0.9), 0.9 / boost::math::tgamma(0.1), 1e-14);
    return rep;
}

// Taylor coefficients of R at 0 from the discrete Fourier transform on a circle of radius r
ExperimentReport taylor_check() {
    ExperimentReport rep;
    const std::vector<PDParams> sets{{0.0, 1.0}, {0.0, 2.5}, {0.3, 0.7}, {0.5, 0.5}, {0.5, 0.0}, {0.6, -0.3}};
    constexpr int kPoints = 128;
    double worst = 0.0;
    for (const auto& p : sets) {
        const double r = p.alpha == 0.0 ? 0.5 : 0.5 / C_alpha(p.alpha);
        std::vector<cplx> values(kPoints);
        for (int k = 0; k < kPoints; ++k) values[k] = R(p, std::polar(r, 2.0 * M_PI * k / kPoints));
        const RCoefficients rc = R_coefficients(p, 5);
        for (int n = 1; n <= 5; ++n) {
            cplx a{0.0, 0.0};
            for (int k = 0; k < kPoints; ++k) a += values[k] * std::polar(1.0, -2.0 * M_PI * n * k / kPoints);
            a /= static_cast<double>(kPoints) * std::pow(r, n);
            worst = std::max(worst, std::abs(a - rc.coeffs[n]) / std::abs(rc.coeffs[n]));
        }
    }
    rep.add_below("max_rel_coefficient_gap", worst, 1e-6);
    return rep;
}

ExperimentReport branches_check() {
    ExperimentReport rep;
    rep.add_abs("R_at_0", std::abs(R({0.3, 0.7}, 0.0)), 0.0, 1e-300);
    rep.add_abs("R_0_1_at_1", R({0.0, 1.0}, 1.0).real(), std::exp(1.0) - 1.0, 1e-14);
    rep.add_abs("R_half_0_at_1", R({0.5, 0.0}, 1.0).real(), -2.0 * std::log1p(-0.5 / std::sqrt(M_PI)), 1e-14);
    double thrown = 0.0;
    try {
        R({0.5, 1.0}, 2.0 / C_alpha(0.5));
    } catch (const branch_cut_error&) {
        thrown = 1.0;
    }
    rep.add_abs("branch_cut_rejected", thrown, 1.0, 0.5);
    const cplx limit = R({0.5, 0.0}, 0.3);
    std::vector<double> gaps;
    for (double th : {1e-2, 1e-3, 1e-4}) gaps.push_back(std::abs(R({0.5, th}, 0.3) - limit));
    rep.add_below("theta_1e-4_gap", gaps[2], 1e-3);
    rep.add_below("decay_ratio_1e-2_1e-3", gaps[1] / gaps[0], 0.2);
    rep.add_below("decay_ratio_1e-3_1e-4", gaps[2] / gaps[1], 0.2);
    return rep;
}

ExperimentReport r_m_check() {
    ExperimentReport rep;
    const cplx u{0.3, 0.2};
    rep.add_abs("R_1_equals_R", std::abs(R_m(1, {0.3, 0.7}, u) - R({0.3, 0.7}, u)), 0.0, 1e-15);
    rep.add_abs("R_m_at_0", std::abs(R_m(3, {0.3, 0.7}, 0.0)), 0.0, 1e-300);
    rep.add_abs("R_2_0_1_at_half", R_m(2, {0.0, 1.0}, 0.5).real(), -(1.0 - 0.5 * std::exp(0.5)), 1e-13);
    return rep;
}

ExperimentReport special_check() {
    ExperimentReport rep;
    rep.add_abs("log_gamma_1", log_gamma(1.0), 0.0, 1e-15);
    rep.add_abs("T0_1", tail_integral_T(0.0, 1.0), 0.2193839, 1e-7);
    rep.add_abs("T0_1_vs_E1", tail_integral_T(0.0, 1.0), boost::math::expint(1, 1.0), 1e-15);
    boost::math::quadrature::exp_sinh<double> integrator;
    double worst = 0.0;
    bool decreasing = true;
    for (double a : {0.0, 0.3, 0.5, 0.7, 0.9}) {
        double prev = INFINITY;
        for (int k = 0; k <= 16; ++k) {
            const double x = 0.01 * std::pow(5000.0, k / 16.0);
            auto f = [&](double z) { return std::exp(-(x + z)) * std::pow(x + z, -(a + 1.0)); };
            const double oracle = integrator.integrate(f, 0.0, INFINITY, 1e-15);
            const double t = tail_integral_T(a, x);
            worst = std::max(worst, std::abs(t - oracle) / oracle);
            decreasing = decreasing && t < prev;
            prev = t;
        }
    }
    rep.add_below("T_rel_error_vs_quadrature", worst, 1e-12);
    rep.add_abs("T_decreasing", decreasing ? 1.0 : 0.0, 1.0, 0.5);
    const double x0 = 1e-8;
    rep.add_abs("T_half_small_x", tail_integral_T(0.5, x0) * std::sqrt(x0), 2.0, 1e-3);
    return rep;
}

ExperimentReport quadrature_check() {
    ExperimentReport rep;
    auto one = [](double) { return 1.0; };
    rep.add_abs("right_sqrt_weight", quad(one, 0.0, 1.0, {0.0, -0.5}, 1e-12), 2.0, 1e-12);
    rep.add_abs("arcsine_weight", quad(one, 0.0, 1.0, {-0.5, -0.5}, 1e-12), M_PI, 1e-12);
    rep.add_abs("identity", quad([](double v) { return v; }, 0.0, 1.0, {}, 1e-12), 0.5, 1e-14);
    double worst = 0.0;
    for (auto [l, r] : {std::pair{0.0, 0.0}, std::pair{-0.5, 0.3}, std::pair{0.7, -0.6}}) {
        const GaussRule& g = gauss_jacobi_rule(8, l, r);
        for (int k = 0; k <= 15; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
            const double exact = boost::math::beta(k + l + 1.0, r + 1.0);
            worst = std::max(worst, std::abs(s - exact) / exact);
        }
    }
    rep.add_below("jacobi_polynomial_exactness", worst, 1e-13);
    return rep;
}

} // namespace

SuiteRun run_core(const SuiteOptions& opt) {
    Context ctx("core", opt);
    ctx.run("core.params", [](std::uint64_t) { return params_check(); });
    ctx.run("core.log_c", [](std::uint64_t) { return log_c_check(); });
    ctx.run("core.c_recurrence", [](std::uint64_t s) { return recurrence_check(s); });
    ctx.run("core.C_alpha", [](std::uint64_t) { return c_alpha_check(); });
    ctx.run("core.R_taylor", [](std::uint64_t) { return taylor_check(); });
    ctx.run("core.R_branches", [](std::uint64_t) { return branches_check(); });
    ctx.run("core.R_m", [](std::uint64_t) { return r_m_check(); });
    ctx.run("core.special_functions", [](std::uint64_t) { return special_check(); });
    ctx.run("core.quadrature", [](std::uint64_t) { return quadrature_check(); });
    return ctx.take();
}

} // namespace pdpp::suites
