#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "pdpp/dickman.hpp"
#include "pdpp/errors.hpp"

using namespace pdpp;

TEST(Dickman, ClassicalValues) {
    const PDParams p{0.0, 1.0};
    EXPECT_EQ(rho(p, 0.5), 1.0);
    EXPECT_NEAR(rho(p, 1.0), 1.0, 1e-15);
    EXPECT_NEAR(rho(p, 2.0), 1.0 - std::log(2.0), 1e-13);
    EXPECT_NEAR(rho(p, 3.0), 0.0486083882911316, 1e-12);
    EXPECT_NEAR(rho(p, 4.0), 0.00491092564776083, 1e-12);
    EXPECT_NEAR(rho(p, 5.0), 3.54724700456040e-4, 1e-9);
}

TEST(Dickman, FirstStretchClosedForm) {
    // for s in [1, 2] only one weight can exceed 1/s
    for (double s : {1.0, 1.3, 1.7, 2.0}) {
        EXPECT_NEAR(rho({0.5, 0.5}, s), 2.0 - std::sqrt(s), 1e-12) << s;
        EXPECT_NEAR(rho({0.0, 2.0}, s), 1.0 - 2.0 * (std::log(s) - 1.0 + 1.0 / s), 1e-12) << s;
    }
}

TEST(Dickman, MarchAgreesWithSeries) {
    for (PDParams p : {PDParams{0.3, 1.0}, PDParams{0.6, -0.2}, PDParams{0.0, 0.7}}) {
        const bool volterra = p.alpha > 0.0;
        const TabulatedFunction v = rho_table(p, 4.0, volterra ? 1.0 / 512.0 : 1.0 / 1024.0,
                                              volterra ? RhoMethod::volterra : RhoMethod::renewal);
        for (double s : {1.5, 2.5, 3.5, 4.0})
            EXPECT_NEAR(v(s), rho_series(p, s), volterra ? 1e-4 : 1e-5) << to_string(p) << " " << s;
    }
}

TEST(Dickman, VolterraConvergenceOrder) {
    const PDParams p{0.5, 0.5};
    const double exact = rho_series(p, 2.5);
    const double e1 = std::abs(rho_table(p, 3.0, 1.0 / 64.0, RhoMethod::volterra)(2.5) - exact);
    const double e2 = std::abs(rho_table(p, 3.0, 1.0 / 128.0, RhoMethod::volterra)(2.5) - exact);
    EXPECT_NEAR(e1 / e2, std::exp2(1.5), 0.3);
}

TEST(Dickman, AutomaticTableUsesEvaluator) {
    for (PDParams p : {PDParams{0.3, 1.0}, PDParams{0.0, 2.0}}) {
        const TabulatedFunction t = rho_table(p, 6.0, 1.0 / 64.0);
        for (std::size_t i = 64; i < t.size(); i += 37) EXPECT_NEAR(t.values()[i], rho(p, t.node(i)), 1e-14);
        EXPECT_NEAR(t(5.0), rho_series(p, 5.0), 1e-8);
    }
}

TEST(Dickman, MethodValidation) {
    EXPECT_THROW(rho_table({0.5, 1.0}, 5.0, 1.0 / 64.0, RhoMethod::renewal), domain_error);
    EXPECT_EQ(method_from_name(method_name(RhoMethod::volterra)), RhoMethod::volterra);
    EXPECT_THROW(method_from_name("bogus"), domain_error);
}

TEST(Dickman, MonotoneAndBounded) {
    const PDParams p{0.4, 2.0};
    double prev = 1.0;
    for (int k = 1; k <= 80; ++k) {
        const double r = rho(p, 0.1 * k);
        EXPECT_LE(r, prev + 1e-12);
        EXPECT_GE(r, 0.0);
        prev = r;
    }
}

TEST(Dickman, FirstWeightDensityIntegratesToOne) {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (PDParams p : {PDParams{0.0, 1.0}, PDParams{0.5, 1.0}}) {
        double mass = 0.0;
        for (int k = 2; k <= 8; ++k) {
            const double lo = 1.0 / (k + 1), hi = 1.0 / k;
            mass += ts.integrate([&](double v) { return v1_density(p, v); }, lo, hi);
        }
        mass += ts.integrate([&](double v) { return v1_density(p, v); }, 0.5, 1.0);
        EXPECT_NEAR(mass + rho(p, 9.0), 1.0, 1e-6) << to_string(p);
    }
    EXPECT_NEAR(v1_density({0.0, 2.0}, 0.6), 2.0 / 0.6 * 0.4, 1e-13);
}

TEST(Dickman, LaplaceIdentity) {
    const LaplaceCheck c = laplace_check({0.3, 1.0}, 1.0);
    EXPECT_LT(c.gap(), 1e-6);
    EXPECT_LT(c.lhs.upper - c.lhs.lower, 1e-9);
}
