#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "pdpp/asymptotics.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/laws.hpp"

using namespace pdpp;

TEST(Asymptotics, Sigma2Values) {
    EXPECT_NEAR(sigma2(0.0, 2.0), 2.0, 1e-13);
    EXPECT_NEAR(sigma2(0.5, 2.0), 4.0, 1e-12);
    for (double a : {0.0, 0.3, 0.8})
        for (double p : {1.2, 2.0, 3.0}) EXPECT_NEAR(limit_covariance(a, p, p), sigma2(a, p), 1e-12 * sigma2(a, p));
    EXPECT_THROW(sigma2(0.5, 0.4), domain_error);
    EXPECT_LT(sigma2_identity_gap({0.3, 1.0}, 2.5), 1e-8);
}

TEST(Asymptotics, ScaledVarianceApproachesLimit) {
    const double lim = limit_scaled_covariance(0.0, 2.0, 2.0);
    EXPECT_NEAR(scaled_finite_variance({0.0, 1e5}, 2.0) / lim, 1.0, 1e-3);
    // Gamma(p+q-alpha)/Gamma(1-alpha) + Gamma(p-alpha)Gamma(q-alpha)(alpha-pq)/Gamma(1-alpha)^2 at alpha = 0
    const double ref = boost::math::tgamma(4.0) + boost::math::tgamma(2.0) * boost::math::tgamma(2.0) * (0.0 - 4.0);
    EXPECT_NEAR(lim, ref, 1e-12);
}

TEST(Asymptotics, GumbelReference) {
    for (double x : {-2.0, 0.0, 1.5}) {
        const double e = std::exp(-x);
        EXPECT_NEAR(gumbel_reference(1, x), std::exp(-e), 1e-15);
        EXPECT_NEAR(gumbel_reference(2, x), std::exp(-e) * (1.0 + e), 1e-15);
        EXPECT_NEAR(gumbel_reference(3, x), std::exp(-e) * (1.0 + e + 0.5 * e * e), 1e-15);
    }
    EXPECT_LE(gumbel_reference(1, 50.0), 1.0);
    EXPECT_EQ(gumbel_reference(1, -1e3), 0.0);
}

TEST(Asymptotics, GumbelJointCdfMarginals) {
    EXPECT_NEAR(gumbel_joint_cdf(0.5, 40.0), gumbel_reference(1, 0.5), 1e-9);
    EXPECT_NEAR(gumbel_joint_cdf(40.0, 0.5), gumbel_reference(2, 0.5), 1e-9);
}

TEST(Asymptotics, BetaScale) {
    EXPECT_NEAR(beta_scale({0.0, std::exp(1.0)}), 1.0, 1e-14);
    const double t = 1e4, a = 0.3;
    EXPECT_NEAR(beta_scale({a, t}),
                std::log(t) - (a + 1.0) * std::log(std::log(t)) - boost::math::lgamma(1.0 - a), 1e-12);
}

TEST(Asymptotics, SmallGumbelExperimentRuns) {
    LimitExperiment e;
    e.params = {0.0, 100.0};
    e.m = 2;
    e.replicates = 500;
    const GumbelResult r = gumbel_experiment(e);
    ASSERT_EQ(r.ks.size(), 2u);
    EXPECT_EQ(r.z.size(), 1000u);
    EXPECT_EQ(r.uncertified, 0);
    for (std::size_t i = 0; i < r.z.size(); i += 2) EXPECT_GE(r.z[i], r.z[i + 1]);
}

TEST(Asymptotics, CorrelationReferenceIntegrals) {
    // q_1 = theta v^{-1}(1-v)^{theta-1} for alpha = 0, theta = 1 integrates to log(hi/lo)
    EXPECT_NEAR(q1_integral({0.0, 1.0}, 0.2, 0.6), std::log(3.0), 1e-10);
    // q_2 = theta^2 (1-v1-v2)^{theta-1}/(v1 v2) for alpha = 0
    EXPECT_NEAR(q2_integral({0.0, 1.0}, 0.1, 0.3, 0.2, 0.4), std::log(3.0) * std::log(2.0), 1e-10);
}
