#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "pdpp/errors.hpp"
#include "pdpp/nu.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/stats.hpp"

using namespace pdpp;

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    RngStream a(7, 0), b(7, 0), c(7, 1);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
    }
}

TEST(Rng, BetaMeanAndComplement) {
    RngStream rng(3, 0);
    RunningStats s;
    for (int i = 0; i < 40000; ++i) {
        const BetaDraw d = beta_pair(0.3, 2.0, rng);
        ASSERT_NEAR(d.y + d.one_minus_y, 1.0, 1e-15);
        s.add(d.y);
    }
    EXPECT_TRUE(s.estimate().within(0.3 / 2.3, 4.0)) << s.mean();
}

TEST(Sampler, FirstStickIsSizeBiasedBeta) {
    for (PDParams p : {PDParams{0.0, 1.0}, PDParams{0.4, 0.6}, PDParams{0.7, -0.5}}) {
        const int bins = 50;
        const long n = 50000;
        std::vector<double> observed(bins, 0.0), expected(bins, n / static_cast<double>(bins));
        RngStream rng(11, 0);
        for (long i = 0; i < n; ++i) {
            StickBreaker sb(p);
            const double y = sb.next(rng);
            const double u = boost::math::ibeta(1.0 - p.alpha, p.theta + p.alpha, y);
            observed[std::min(bins - 1, static_cast<int>(u * bins))] += 1.0;
        }
        const double stat = chi_square_statistic(observed, expected);
        EXPECT_GT(chi_square_pvalue(stat, bins - 1), 1e-3) << to_string(p);
    }
}

TEST(Sampler, StickBreakingConservesMass) {
    RngStream rng(5, 0);
    const StickSample s = stick_breaking({0.2, 1.0}, StopRule::residual(1e-6), rng);
    const double total = std::accumulate(s.sticks.begin(), s.sticks.end(), 0.0);
    EXPECT_NEAR(total + s.residual, 1.0, 1e-12);
    EXPECT_LT(s.residual, 1e-6);
    EXPECT_FALSE(s.capped);
    const StickSample c = stick_breaking({0.5, 1.0}, StopRule::count(17), rng);
    EXPECT_EQ(c.sticks.size(), 17u);
}

TEST(Sampler, TopMIsSortedAndCertified) {
    RngStream rng(9, 0);
    for (int r = 0; r < 200; ++r) {
        const RankedPrefix t = top_m({0.3, 2.0}, 4, rng);
        ASSERT_TRUE(t.certified);
        ASSERT_EQ(t.weights.size(), 4u);
        EXPECT_TRUE(std::is_sorted(t.weights.rbegin(), t.weights.rend()));
        EXPECT_GE(t.weights.back(), t.residual);
    }
}

TEST(Sampler, WeightsAboveThreshold) {
    RngStream rng(2, 0);
    const RankedPrefix w = weights_above({0.5, 1.0}, 0.01, rng);
    EXPECT_TRUE(w.certified);
    for (double x : w.weights) EXPECT_GE(x, 0.01);
    EXPECT_LT(w.residual, 0.01);
}

TEST(Sampler, LargestBelowMatchesDickmanValue) {
    // P(V_1 < 1/2) = 1 - log 2 for PD(0, 1)
    RngStream rng(4, 0);
    RunningStats s;
    for (int i = 0; i < 20000; ++i) {
        const LevelEvents e = largest_below({0.0, 1.0}, {0.5}, rng);
        ASSERT_TRUE(e.certified);
        s.add(e.below[0]);
    }
    EXPECT_TRUE(s.estimate().within(1.0 - std::log(2.0), 4.0)) << s.mean();
}

TEST(Sampler, HpMeanMatchesClosedForm) {
    // E sum V_i^2 = (1 - alpha) / (1 + theta)
    for (PDParams p : {PDParams{0.0, 3.0}, PDParams{0.5, 1.0}}) {
        RngStream rng(6, 0);
        RunningStats s;
        for (int i = 0; i < 20000; ++i) s.add(sample_Hp(p, 2.0, rng, 1e-10).value);
        EXPECT_TRUE(s.estimate().within((1.0 - p.alpha) / (1.0 + p.theta), 4.0)) << to_string(p);
    }
}

TEST(Sampler, HpRejectsPowerAtOrBelowAlpha) {
    RngStream rng(1, 0);
    EXPECT_THROW(sample_Hp({0.5, 1.0}, 0.5, rng, 1e-9), domain_error);
}

TEST(Sampler, MeanFunctionalOfPointMass) {
    RngStream rng(8, 0);
    const MeanDraw d = sample_mean_functional({0.3, 1.0}, NuSpec::point_mass(2.5), rng, 1e-9);
    EXPECT_NEAR(d.value, 2.5, 2.5 * 1e-9 + 1e-15);
    EXPECT_LE(d.truncation_bound, 2.5e-9 + 1e-18);
}

TEST(Sampler, ReplicatesDoNotDependOnWorkers) {
    auto draw = [](RngStream& rng, long) { return top_m({0.2, 1.5}, 1, rng).weights[0]; };
    const auto one = run_replicates<double>(10000, 42, draw, 1);
    const auto three = run_replicates<double>(10000, 42, draw, 3);
    EXPECT_EQ(one, three);
    auto add = [](RngStream& rng, long, RunningStats& acc) { acc.add(rng.uniform()); };
    auto merge = [](RunningStats& into, const RunningStats& from) { into.merge(from); };
    const RunningStats r1 = reduce_replicates(9000, 3, RunningStats{}, add, merge, 1);
    const RunningStats r4 = reduce_replicates(9000, 3, RunningStats{}, add, merge, 4);
    EXPECT_EQ(r1.mean(), r4.mean());
    EXPECT_EQ(r1.count(), 9000);
}

TEST(Stats, KolmogorovAndChiSquare) {
    RngStream rng(12, 0);
    std::vector<double> xs(5000), ys(5000);
    for (auto& x : xs) x = rng.uniform();
    for (auto& y : ys) y = rng.uniform();
    const double d = ks_statistic(xs, [](double x) { return std::clamp(x, 0.0, 1.0); });
    EXPECT_GT(kolmogorov_pvalue(d, 5000), 1e-3);
    EXPECT_GT(ks_two_sample_pvalue(ks_two_sample(xs, ys), 5000, 5000), 1e-3);
    EXPECT_NEAR(kolmogorov_pvalue(1.358 / std::sqrt(1e6), 1e6), 0.05, 2e-3);
    EXPECT_NEAR(chi_square_pvalue(3.841458820694124, 1.0), 0.05, 1e-12);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-14);
    EXPECT_NEAR(sample_variance({1.0, 2.0, 3.0, 4.0}), 5.0 / 3.0, 1e-15);
    const MCEstimate e{1.0, 0.0, 10};
    EXPECT_TRUE(e.within(1.0, 3.0));
    EXPECT_FALSE(e.within(1.1, 3.0));
}
