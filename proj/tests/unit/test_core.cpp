#include <cmath>
#include <complex>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "pdpp/core.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/special.hpp"

using namespace pdpp;
using cplx = std::complex<double>;

namespace {

double log_c_product(int n, double a, double t) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i)
        s += boost::math::lgamma(t + 1.0 + (i - 1) * a) - boost::math::lgamma(1.0 - a) - boost::math::lgamma(t + i * a);
    return s;
}

} // namespace

TEST(Params, RejectsOutsideDomain) {
    EXPECT_THROW(validate_params(1.0, 0.5), domain_error);
    EXPECT_THROW(validate_params(-0.1, 1.0), domain_error);
    EXPECT_THROW(validate_params(0.5, -0.5), domain_error);
    EXPECT_THROW(validate_params(0.0, 0.0), domain_error);
    EXPECT_THROW(validate_params(NAN, 1.0), domain_error);
    EXPECT_NO_THROW(validate_params(0.5, -0.49));
    EXPECT_NO_THROW(validate_params(0.0, 1e-9));
}

TEST(Constants, LogCMatchesGammaProduct) {
    for (double a : {0.1, 0.5, 0.9})
        for (double t : {-0.05, 0.5, 3.0, 40.0})
            for (int n = 1; n <= 8; ++n) {
                const double ref = log_c_product(n, a, t);
                EXPECT_NEAR(log_c(n, {a, t}), ref, 1e-12 * std::max(1.0, std::abs(ref))) << a << " " << t << " " << n;
            }
}

TEST(Constants, LogCAlphaZeroIsPower) {
    for (double t : {0.3, 1.0, 7.5})
        for (int n = 0; n <= 6; ++n) EXPECT_NEAR(std::exp(log_c(n, {0.0, t})), std::pow(t, n), 1e-12 * std::pow(t, n));
}

TEST(Constants, ShiftRecurrence) {
    for (double a : {0.0, 0.3, 0.8})
        for (double t : {-0.2, 1.0, 4.0}) {
            if (t <= -a) continue;
            for (int m = 0; m <= 6; ++m)
                for (int n = 0; n <= 6; ++n) {
                    EXPECT_TRUE(c_recurrence_check(m, n, {a, t}));
                    const double lhs = log_c(m + n, {a, t});
                    const double rhs = log_c(m, {a, t}) + log_c(n, {a, t + a * m});
                    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
                }
        }
}

TEST(Constants, CAlpha) {
    EXPECT_EQ(C_alpha(0.0), 0.0);
    for (double a : {0.1, 0.5, 0.75}) EXPECT_NEAR(C_alpha(a), a / boost::math::tgamma(1.0 - a), 1e-15);
    EXPECT_NEAR(C_alpha(0.5), 0.5 / std::sqrt(M_PI), 1e-15);
}

TEST(Generating, ClosedFormsMatchTaylorSeries) {
    for (PDParams p : {PDParams{0.0, 1.0}, PDParams{0.0, 2.5}, PDParams{0.3, 0.7}, PDParams{0.6, -0.3}, PDParams{0.5, 0.0}}) {
        const double radius = p.alpha == 0.0 ? 2.0 : 0.4 / C_alpha(p.alpha);
        for (cplx u : {cplx{0.5 * radius, 0.0}, cplx{-0.3 * radius, 0.2 * radius}, cplx{0.0, -0.6 * radius}}) {
            cplx series = 0.0, un = 1.0;
            for (int n = 1; n <= 120; ++n) {
                un *= u;
                const double lc = p.theta == 0.0 ? log_c_product(n, p.alpha, 0.0) : log_c_product(n, p.alpha, p.theta);
                const double g = p.theta == 0.0 ? boost::math::lgamma(p.alpha * n) : boost::math::lgamma(p.theta + p.alpha * n);
                series += std::exp(g + lc - boost::math::lgamma(n + 1.0)) * un;
            }
            EXPECT_LT(std::abs(R(p, u) - series), 1e-11 * std::max(1.0, std::abs(series))) << to_string(p);
        }
    }
}

TEST(Generating, AlphaZeroExponential) {
    for (double t : {0.5, 2.0})
        for (cplx u : {cplx{1.5, 0.0}, cplx{-3.0, 1.0}})
            EXPECT_LT(std::abs(R({0.0, t}, u) - boost::math::tgamma(t) * (std::exp(t * u) - 1.0)), 1e-12 * std::abs(std::exp(t * u)));
}

TEST(Generating, BranchCut) {
    const double a = 0.5;
    EXPECT_THROW(R({a, 1.0}, cplx{2.0 / C_alpha(a), 0.0}), branch_cut_error);
    EXPECT_NO_THROW(R({a, 1.0}, cplx{2.0 / C_alpha(a), 1e-3}));
    EXPECT_NO_THROW(R({0.0, 1.0}, cplx{50.0, 0.0}));
}

TEST(Generating, SecondPathIntegral) {
    for (double u : {0.5, -1.0, 2.0}) {
        const double exact = -(1.0 - (1.0 - u) * std::exp(u));
        EXPECT_NEAR(R_m(2, {0.0, 1.0}, cplx{u, 0.0}).real(), exact, 1e-12);
    }
    EXPECT_EQ(R_m(1, {0.3, 0.7}, cplx{0.4, 0.1}), R({0.3, 0.7}, cplx{0.4, 0.1}));
    EXPECT_THROW(R_m(0, {0.3, 0.7}, cplx{0.4, 0.0}), domain_error);
}

TEST(Generating, Coefficients) {
    const RCoefficients c = R_coefficients({0.0, 2.0}, 6);
    for (int n = 1; n <= 6; ++n) EXPECT_NEAR(c.coeffs[n], std::pow(2.0, n) / boost::math::tgamma(n + 1.0), 1e-12);
}

TEST(Special, TailIntegralAgainstDirectQuadrature) {
    boost::math::quadrature::exp_sinh<double> q;
    for (double a : {0.0, 0.25, 0.5, 0.9})
        for (double x : {0.01, 0.3, 1.0, 7.0, 40.0}) {
            const double ref = q.integrate([&](double z) { return std::exp(-(x + z)) * std::pow(x + z, -(a + 1.0)); });
            EXPECT_NEAR(tail_integral_T(a, x), ref, 1e-11 * ref) << a << " " << x;
        }
    EXPECT_NEAR(tail_integral_T(0.0, 2.0), boost::math::expint(1, 2.0), 1e-15);
}

TEST(Special, IncompleteGamma) {
    for (double s : {0.2, 0.5, 1.0})
        for (double x : {0.1, 2.0, 30.0}) EXPECT_NEAR(upper_incomplete_gamma(s, x), boost::math::tgamma(s, x), 1e-13 * boost::math::tgamma(s, x));
    for (double s : {-2.5, -1.3, -0.4})
        for (double x : {0.2, 3.0}) {
            const double lhs = upper_incomplete_gamma_any(s + 1.0, x);
            const double rhs = s * upper_incomplete_gamma_any(s, x) + std::pow(x, s) * std::exp(-x);
            EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    EXPECT_NEAR(gamma_q(3.0, 2.0), boost::math::gamma_q(3.0, 2.0), 1e-15);
    // log Gamma(x + 1/2) - log Gamma(x) = log(x)/2 - 1/(8x) + O(x^-3)
    EXPECT_NEAR(log_gamma_ratio(1e6, 0.5), 0.5 * std::log(1e6) - 1.0 / 8e6, 1e-13);
    EXPECT_NEAR(log_gamma_ratio(3.0, 1.5), boost::math::lgamma(4.5) - boost::math::lgamma(3.0), 1e-14);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-15);
}
