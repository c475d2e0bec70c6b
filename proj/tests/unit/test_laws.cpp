#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "pdpp/dickman.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/laws.hpp"

using namespace pdpp;

TEST(Laws, GolombDickmanConstant) {
    const MomentResult m = mixed_moment({0.0, 1.0}, {1.0});
    EXPECT_NEAR(m.value, 0.62432998854355087099, 1e-9);
}

TEST(Laws, HpClosedForm) {
    for (double a : {0.0, 0.3, 0.7})
        for (double t : {0.5, 2.0})
            for (double pw : {0.8, 2.0, 3.5}) {
                if (pw <= a) continue;
                const double ref = boost::math::tgamma(t + 1.0) * boost::math::tgamma(pw - a) /
                                   (boost::math::tgamma(1.0 - a) * boost::math::tgamma(t + pw));
                EXPECT_NEAR(h_p({a, t}, pw), ref, 1e-12 * ref);
            }
    EXPECT_NEAR(h_p({0.4, 1.0}, 1.0), 1.0, 1e-14);
    EXPECT_THROW(h_p({0.5, 1.0}, 0.5), domain_error);
}

TEST(Laws, CovarianceWithTotalMassVanishes) {
    for (double q : {0.7, 2.0, 3.0}) EXPECT_NEAR(cov_H({0.4, 1.5}, 1.0, q), 0.0, 1e-13);
    // Var H_2 for PD(0, theta): E H_2^2 = (theta + 6) / ((theta + 1)(theta + 2)(theta + 3))
    const double t = 2.0;
    const double eh2 = 1.0 / (1.0 + t);
    EXPECT_NEAR(cov_H({0.0, t}, 2.0, 2.0), (t + 6.0) / ((t + 1.0) * (t + 2.0) * (t + 3.0)) - eh2 * eh2, 1e-13);
}

TEST(Laws, FirstCorrelationFunction) {
    const double t = 2.5;
    for (double v : {0.1, 0.5, 0.9})
        EXPECT_NEAR(q_n({0.0, t}, std::vector<double>{v}), t / v * std::pow(1.0 - v, t - 1.0), 1e-12);
    EXPECT_EQ(q_n({0.0, t}, std::vector<double>{0.6, 0.5}), 0.0);
    EXPECT_FALSE(SimplexPoint::ordered({0.2, 0.3}).satisfies_constraint());
    EXPECT_TRUE(SimplexPoint::simplex({0.2, 0.3}).satisfies_constraint());
}

TEST(Laws, CountProbabilitiesSumToOne) {
    for (double s : {1.5, 2.5, 4.0}) {
        double total = 0.0;
        for (int j = 0; j <= static_cast<int>(s); ++j) total += count_probability({0.3, 1.0}, j, s);
        EXPECT_NEAR(total, 1.0, 1e-9) << s;
        EXPECT_NEAR(count_probability({0.3, 1.0}, 0, s), rho({0.3, 1.0}, s), 1e-9);
    }
}

TEST(Laws, RankedLaws) {
    const PDParams p{0.3, 1.0};
    EXPECT_NEAR(rho_m(p, 1, 2.7), rho(p, 2.7), 1e-10);
    // V_2 < 1/s is certain for s < 2
    EXPECT_NEAR(rho_m(p, 2, 1.9), 1.0, 1e-12);
    EXPECT_NEAR(vm_density(p, 1, 0.7), v1_density(p, 0.7), 1e-10);
    EXPECT_NEAR(joint_density(p, std::vector<double>{0.7}), v1_density(p, 0.7), 1e-10);
}

TEST(Laws, MomentConventionsDifferAndQuadratureMatchesMonteCarlo) {
    const PDParams p{0.4, 1.0};
    const double a = moment_quadrature(p, {1.0, 1.0}, MomentExponent::minus_m);
    const double b = moment_quadrature(p, {1.0, 1.0}, MomentExponent::plus_m);
    EXPECT_GT(std::abs(a - b), 1e-3);
    MomentOptions o;
    o.mc_replicates = 200000;
    const MomentResult mc = mixed_moment(p, {1.0, 1.0, 1.0, 1.0}, o);
    EXPECT_EQ(mc.method, "monte-carlo");
    EXPECT_FALSE(mc.warning.empty());
    const MomentResult q = mixed_moment(p, {1.0, 1.0});
    EXPECT_TRUE(std::abs(q.value - a) < 1e-9 || std::abs(q.value - b) < 1e-9);
}
