#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "pdpp/errors.hpp"
#include "pdpp/markov_krein.hpp"

using namespace pdpp;

TEST(MarkovKrein, KernelIdentities) {
    for (double u : {-0.5, 0.5, 1.0, 2.0}) {
        EXPECT_LT(kernel_gap_gamma(1.5, u), 1e-10);
        EXPECT_LT(kernel_gap_stable(0.4, u), 1e-10);
        EXPECT_LT(kernel_gap_log(u), 1e-10);
    }
    EXPECT_THROW(kernel_gap_log(-1.0), domain_error);
}

TEST(MarkovKrein, PointMassIsAFixedPoint) {
    const NuSpec nu = NuSpec::point_mass(0.5);
    for (double z : {1.0, 2.0}) {
        EXPECT_NEAR(mk_rhs({0.4, 1.5}, nu, z), std::pow(z - 0.5, -1.5), 1e-13);
        EXPECT_NEAR(mk_rhs({0.0, 2.0}, nu, z), std::pow(z - 0.5, -2.0), 1e-13);
        EXPECT_NEAR(mk_rhs({0.4, 0.0}, nu, z), std::log(z - 0.5), 1e-13);
    }
    EXPECT_THROW(mk_rhs({0.4, 1.0}, nu, 0.5), domain_error);
    for (double l : {0.5, 2.0})
        EXPECT_NEAR(membership_rhs({0.5, -0.2}, nu, l), (std::pow(1.0 + 0.5 / l, 0.2) - 1.0) / -0.2, 1e-10);
}

TEST(MarkovKrein, CharacteristicFunctions) {
    const NuSpec c = NuSpec::cauchy(1.0, 2.0);
    for (double t : {-1.0, 0.3})
        EXPECT_LT(std::abs(cf_nu(c, t) - std::exp(std::complex<double>(-2.0 * std::abs(t), t))), 1e-15);
    const NuSpec pm = NuSpec::point_mass(0.7);
    const CfSeriesResult s = cf_series({0.3, 1.0}, pm, 1.2, 3);
    const std::complex<double> exact = std::exp(std::complex<double>(0.0, 1.2 * 0.7));
    EXPECT_LE(std::abs(s.value - exact), s.remainder_bound + s.quadrature_error + 1e-12);
    EXPECT_THROW(cf_series({0.3, 1.0}, pm, 1.0, 4), domain_error);
}

TEST(MarkovKrein, IdentityHoldsByMonteCarlo) {
    const NuSpec nu = NuSpec::discrete({{-1.0, 0.3}, {2.0, 0.7}});
    TransformOptions o;
    o.replicates = 4000;
    o.seed = 5;
    const TransformCheckReport r = mk_identity_check({0.5, 1.0}, nu, {2.5, 4.0}, o);
    EXPECT_LT(r.max_gap_in_se, 4.5);
    EXPECT_EQ(r.lhs.size(), 2u);
}

TEST(MarkovKrein, CompositionRequiresOrderedIndices) {
    const NuSpec nu = NuSpec::uniform(0.0, 1.0);
    EXPECT_THROW(compose_check(0.4, 0.4, 1.0, nu), domain_error);
    EXPECT_THROW(compose_check(0.3, 0.5, 1.0, nu), domain_error);
    EXPECT_THROW(compose_check(0.5, 0.3, -0.4, nu), domain_error);
}

TEST(MarkovKrein, NuSpecJsonRoundTrip) {
    for (const NuSpec& nu : {NuSpec::discrete({{0.0, 0.25}, {3.0, 0.75}}), NuSpec::cauchy(0.5, 1.5), NuSpec::uniform(-1.0, 2.0)}) {
        const NuSpec back = NuSpec::from_json(nlohmann::json::parse(nu.to_json().dump()));
        EXPECT_EQ(back.kind(), nu.kind());
        for (double t : {0.4, 1.7}) EXPECT_LT(std::abs(back.cf(t) - nu.cf(t)), 1e-15);
    }
    EXPECT_NEAR(*NuSpec::discrete({{0.0, 0.25}, {3.0, 0.75}}).mean(), 2.25, 1e-15);
    EXPECT_FALSE(NuSpec::cauchy(0.0, 1.0).has_alpha_moment(1.0));
    EXPECT_TRUE(NuSpec::cauchy(0.0, 1.0).has_alpha_moment(0.5));
    EXPECT_THROW(NuSpec::from_json(nlohmann::json::parse(R"({"kind":"discrete","atoms":[[0,0.5]]})")), domain_error);
}
