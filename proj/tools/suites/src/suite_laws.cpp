#include <algorithm>
#include <cmath>
#include <random>

#include "context.hpp"
#include "pdpp/asymptotics.hpp"
#include "pdpp/core.hpp"
#include "pdpp/dickman.hpp"
#include "pdpp/laws.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/sampler.hpp"

namespace pdpp::suites {
namespace {

// Golomb-Dickman constant
constexpr double kGolombDickman = 0.62432998854355087099;

std::string tag(const PDParams& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%g,%g)", p.alpha, p.theta);
    return buf;
}

std::vector<double> kinks_in(double lo, double hi, const std::function<double(int)>& at) {
    std::vector<double> out;
    for (int k = 1; k < 200; ++k) {
        const double x = at(k);
        if (x > lo && x < hi) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExperimentReport q_n_check(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    rep.add_abs("q1_0_1_at_half", q_n({0.0, 1.0}, std::vector<double>{0.5}), 2.0, 1e-14);
    rep.add_abs("q2_off_simplex", q_n({0.3, 0.7}, std::vector<double>{0.6, 0.5}), 0.0, 1e-300);
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.3, 0.7}, PDParams{0.5, 0.5}, PDParams{0.6, -0.3}}) {
        const double e1 = p.theta + p.alpha - 1.0;
        auto f1 = [&](double v) { return v * q_n(p, std::vector<double>{v}) * std::pow(v, p.alpha) * std::pow(1.0 - v, -e1); };
        rep.add_abs("mean_measure_mass_" + tag(p), integrate<double>(f1, 0.0, 1.0, {-p.alpha, e1}, opt).value, 1.0,
                    1e-9);
        const double e2 = p.theta + 2.0 * p.alpha - 1.0;
        auto inner = [&](double v1) {
            auto f2 = [&](double v2) {
                return v1 * v2 * q_n(p, std::vector<double>{v1, v2}) * std::pow(v1, p.alpha) * std::pow(v2, p.alpha) *
                       std::pow(1.0 - v1 - v2, -e2);
            };
            return integrate<double>(f2, 0.0, 1.0 - v1, {-p.alpha, e2}, opt).value;
        };
        QuadOptions outer;
        outer.rel_tol = 1e-9;
        const double pairs = integrate<double>(inner, 0.0, 1.0, {-p.alpha, 0.0}, outer).value;
        rep.add_abs("pair_mass_" + tag(p), pairs, (p.theta + p.alpha) / (p.theta + 1.0), 1e-7);
    }
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const PDParams p{0.9 * u(gen), 0.5 + u(gen)};
        std::vector<double> v{0.3 * u(gen), 0.3 * u(gen), 0.3 * u(gen)};
        const double base = q_n(p, v);
        std::shuffle(v.begin(), v.end(), gen);
        worst = std::max(worst, std::abs(q_n(p, v) - base) / base);
    }
    rep.add_below("permutation_rel_gap", worst, 1e-14);
    return rep;
}

ExperimentReport rho_m_check(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    double worst = 0.0;
    bool monotone = true, one_below_m = true;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.3, 0.7}, PDParams{0.6, -0.3}}) {
        for (int k = 1; k <= 16; ++k) {
            const double s = 0.25 * k;
            worst = std::max(worst, std::abs(rho_m(p, 1, s) - rho_series(p, s)));
            for (int m = 1; m <= 2; ++m) monotone = monotone && rho_m(p, m, s) <= rho_m(p, m + 1, s) + 1e-12;
            for (int m = 1; m <= 3; ++m)
                if (s < m) one_below_m = one_below_m && rho_m(p, m, s) == 1.0;
        }
    }
    rep.add_below("m1_vs_rho_series", worst, 1e-12);
    rep.add_abs("monotone_in_m", monotone ? 1.0 : 0.0, 1.0, 0.5);
    rep.add_abs("one_below_m", one_below_m ? 1.0 : 0.0, 1.0, 0.5);
    const long n = ctx.replicates(1'000'000, 100'000);
    rep.replicates = n;
    const PDParams p{0.0, 1.0};
    struct Acc {
        long hits = 0, uncertified = 0;
    };
    const Acc total = reduce_replicates(
        n, seed, Acc{},
        [&](RngStream& rng, long, Acc& acc) {
            const RankedPrefix r = top_m(p, 2, rng);
            if (!r.certified) ++acc.uncertified;
            if (2.5 * r.weights[1] < 1.0) ++acc.hits;
        },
        [](Acc& a, const Acc& b) {
            a.hits += b.hits;
            a.uncertified += b.uncertified;
        },
        ctx.workers());
    const double f = static_cast<double>(total.hits) / static_cast<double>(n);
    rep.add_se("P(2.5V2<1)_(0,1)", f, std::sqrt(f * (1.0 - f) / static_cast<double>(n)), rho_m(p, 2, 2.5), 3.5);
    rep.add_abs("uncertified", static_cast<double>(total.uncertified), 0.0, 0.5);
    return rep;
}

ExperimentReport vm_density_check(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double a = k < 4 ? 0.0 : 0.9 * u(gen);
        const PDParams p{a, -a + 0.05 + 3.0 * u(gen)};
        const double v = 0.1 + 0.85 * u(gen);
        const double ref = v1_density(p, v);
        worst = std::max(worst, std::abs(vm_density(p, 1, v) - ref) / ref);
    }
    rep.add_below("m1_vs_v1_density_rel", worst, 1e-12);
    rep.add_abs("m2_at_0.6", vm_density({0.3, 0.7}, 2, 0.6), 0.0, 1e-300);
    const PDParams p{0.0, 1.0};
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-12;
    const auto kinks = kinks_in(1.0 / 64.0, 0.5, [](int k) { return 1.0 / (k + 1.0); });
    auto f2 = [&](double v) { return vm_density(p, 2, v); };
    const double mass = integrate<double>(f2, 0.0, 1.0 / 64.0, {}, opt).value +
                        integrate<double>(f2, 1.0 / 64.0, 0.5, {}, opt, kinks).value;
    rep.add_abs("m2_normalization_(0,1)", mass, 1.0, 1e-5);
    return rep;
}

double joint_pair(const PDParams& p, double v1, double v2) { return joint_density(p, std::vector<double>{v1, v2}); }

ExperimentReport joint_marginal_check() {
    ExperimentReport rep;
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-12;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.5, 0.5}}) {
        const double e = p.theta + 2.0 * p.alpha - 1.0;
        for (double v2 : {0.1, 0.2, 0.3}) {
            const double top = 1.0 - v2;
            auto f = [&](double v1) { return joint_pair(p, v1, v2) * std::pow(top - v1, -e); };
            const auto kinks = kinks_in(v2, top, [&](int k) { return 1.0 - v2 * (1.0 + k); });
            const double m = integrate<double>(f, v2, top, {0.0, e}, opt, kinks).value;
            char name[96];
            std::snprintf(name, sizeof name, "marginal_%s_at_%g", tag(p).c_str(), v2);
            rep.add_abs(name, m, vm_density(p, 2, v2), 1e-4);
        }
    }
    double worst = 0.0;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.3, 0.7}})
        for (double v : {0.2, 0.45, 0.7}) {
            const double ref = v1_density(p, v);
            worst = std::max(worst, std::abs(joint_density(p, std::vector<double>{v}) - ref) / ref);
        }
    rep.add_below("m1_vs_v1_density_rel", worst, 1e-12);
    return rep;
}

// 20 x 20 histogram of (V_1, V_2) over [0.05, 1]^2 against the bin-averaged joint density
ExperimentReport joint_histogram(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    const PDParams p{0.0, 1.0};
    constexpr int kBins = 20;
    constexpr double kLo = 0.05;
    const double w = (1.0 - kLo) / kBins;
    const long n = ctx.replicates(1'000'000, 100'000);
    rep.replicates = n;
    struct Acc {
        std::vector<long> counts = std::vector<long>(kBins * kBins, 0);
        long uncertified = 0;
    };
    const Acc total = reduce_replicates(
        n, seed, Acc{},
        [&](RngStream& rng, long, Acc& acc) {
            const RankedPrefix r = top_m(p, 2, rng);
            if (!r.certified) ++acc.uncertified;
            const double v1 = r.weights[0], v2 = r.weights[1];
            if (v1 < kLo || v2 < kLo) return;
            const int i = std::min(kBins - 1, static_cast<int>((v1 - kLo) / w));
            const int j = std::min(kBins - 1, static_cast<int>((v2 - kLo) / w));
            ++acc.counts[static_cast<std::size_t>(i * kBins + j)];
        },
        [](Acc& a, const Acc& b) {
            for (std::size_t k = 0; k < a.counts.size(); ++k) a.counts[k] += b.counts[k];
            a.uncertified += b.uncertified;
        },
        ctx.workers());
    QuadOptions opt;
    opt.rel_tol = 1e-7;
    opt.abs_tol = 1e-12;
    long occupied = 0, agree = 0;
    for (int i = 0; i < kBins; ++i)
        for (int j = 0; j < kBins; ++j) {
            const long c = total.counts[static_cast<std::size_t>(i * kBins + j)];
            if (c == 0) continue;
            ++occupied;
            const double lo1 = kLo + i * w, hi1 = lo1 + w, lo2 = kLo + j * w, hi2 = lo2 + w;
            auto inner = [&](double v1) {
                const double top = std::min({hi2, v1, 1.0 - v1});
                if (!(top > lo2)) return 0.0;
                const auto kinks = kinks_in(lo2, top, [&](int k) { return (1.0 - v1) / (k + 1.0); });
                return integrate<double>([&](double v2) { return joint_pair(p, v1, v2); }, lo2, top, {}, opt, kinks)
                    .value;
            };
            const double a = std::max(lo1, lo2), b = std::min(hi1, 1.0 - lo2);
            const double prob = b > a ? integrate<double>(inner, a, b, {}, opt, {0.5}).value : 0.0;
            const double f = static_cast<double>(c) / static_cast<double>(n);
            const double se = std::sqrt(std::max(f * (1.0 - f), prob * (1.0 - prob)) / static_cast<double>(n));
            if (std::abs(f - prob) < 4.0 * se) ++agree;
        }
    rep.add_above("fraction_within_4se", static_cast<double>(agree) / static_cast<double>(occupied), 0.95);
    rep.add_abs("uncertified", static_cast<double>(total.uncertified), 0.0, 0.5);
    return rep;
}

ExperimentReport moments_check(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    const MomentResult gd = mixed_moment({0.0, 1.0}, {1.0});
    rep.add_abs("golomb_dickman", gd.value, kGolombDickman, 1e-5);
    MomentOptions fine;
    fine.rel_tol = 1e-12;
    rep.add_abs("refinement_gap", gd.value, mixed_moment({0.0, 1.0}, {1.0}, fine).value, 1e-9);
    rep.add_abs("zero_exponents", mixed_moment({0.3, 0.7}, {0.0, 0.0}).value, 1.0, 1e-8);

    const long n = ctx.replicates(1'000'000, 100'000);
    rep.replicates = n;
    struct Case {
        PDParams p;
        std::vector<double> a;
    };
    const std::vector<Case> cases{{{0.0, 1.0}, {1.0}}, {{0.5, 0.5}, {2.0}}, {{0.0, 1.0}, {1.0, 1.0}},
                                  {{0.5, 0.5}, {1.0, 1.0}}, {{0.3, 0.7}, {0.5, 2.0}}};
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const Case& c = cases[k];
        const int m = static_cast<int>(c.a.size());
        struct Acc {
            RunningStats s;
            long uncertified = 0;
        };
        const Acc total = reduce_replicates(
            n, seed + k, Acc{},
            [&](RngStream& rng, long, Acc& acc) {
                const RankedPrefix r = top_m(c.p, m, rng);
                if (!r.certified) ++acc.uncertified;
                double x = 1.0;
                for (int i = 0; i < m; ++i) x *= std::pow(r.weights[static_cast<std::size_t>(i)], c.a[static_cast<std::size_t>(i)]);
                acc.s.add(x);
            },
            [](Acc& a, const Acc& b) {
                a.s.merge(b.s);
                a.uncertified += b.uncertified;
            },
            ctx.workers());
        const MCEstimate mc = total.s.estimate();
        std::string name = "mc_" + tag(c.p) + "_a";
        for (double x : c.a) name += "_" + std::to_string(static_cast<int>(std::lround(x * 10)));
        rep.add_se(name, mixed_moment(c.p, c.a).value, mc.std_error, mc.mean, 3.5);
        rep.add_abs(name + "_uncertified", static_cast<double>(total.uncertified), 0.0, 0.5);
    }
    return rep;
}

ExperimentReport hp_check(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    rep.add_abs("h_1", h_p({0.3, 0.7}, 1.0), 1.0, 1e-14);
    rep.add_abs("h_2_(0,1)", h_p({0.0, 1.0}, 2.0), 0.5, 1e-14);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_zero = 0.0, min_var = INFINITY;
    for (int k = 0; k < 20; ++k) {
        const double a = 0.95 * u(gen);
        const PDParams p{a, -a + 0.01 + 10.0 * u(gen)};
        const double q = a + 0.01 + 4.0 * u(gen);
        worst_zero = std::max(worst_zero, std::abs(cov_H(p, 1.0, q)));
        min_var = std::min(min_var, cov_H(p, q, q));
    }
    rep.add_below("cov_with_H1", worst_zero, 1e-12);
    rep.add_above("min_variance", min_var, 0.0);
    const long n = ctx.replicates(1'000'000, 100'000);
    rep.replicates = n;
    const RunningStats s = reduce_replicates(
        n, seed, RunningStats{},
        [&](RngStream& rng, long, RunningStats& acc) {
            acc.add(sample_Hp({0.0, 1.0}, 2.0, rng, 1e-12, TailPolicy::conditional_mean).value);
        },
        [](RunningStats& a, const RunningStats& b) { a.merge(b); }, ctx.workers());
    const MCEstimate e = s.estimate();
    rep.add_se("mc_H2_(0,1)", e.mean, e.std_error, 0.5, 3.0);
    return rep;
}

ExperimentReport correlation_check(const Context& ctx, std::uint64_t seed, int n) {
    ExperimentReport rep;
    rep.seed = seed;
    const std::vector<PDParams> sets = n == 1 ? std::vector<PDParams>{{0.0, 1.0}, {0.0, 2.5}, {0.3, 0.7}, {0.5, 0.5},
                                                                      {0.6, -0.3}, {0.8, 1.0}}
                                              : std::vector<PDParams>{{0.0, 1.0}, {0.5, 0.5}};
    const int bins = n == 1 ? 20 : 10;
    long uncertified = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const PDParams& p = sets[k];
        // weights above 0.05 for alpha = 0.8 need about 5.6e5 sticks per replicate
        const long reps = p.alpha >= 0.8 ? ctx.replicates(4'000, 200) : ctx.replicates(1'000'000, 100'000);
        const CorrelationResult r = empirical_correlation(p, n, bins, 0.05, reps, seed + k, ctx.workers());
        uncertified += r.uncertified;
        const double nr = static_cast<double>(reps);
        double worst = 0.0, worst_asym = 0.0;
        for (int i = 0; i < bins; ++i)
            for (int j = 0; j < (n == 1 ? 1 : bins); ++j) {
                const CorrelationCell& c = r.cell(i, j);
                const double volume = (c.hi1 - c.lo1) * (n == 1 ? 1.0 : c.hi2 - c.lo2);
                // null-hypothesis floor for cells whose sample variance vanishes
                const double pairs = n == 2 && i == j ? 2.0 : 1.0;
                const double se = std::max(c.se, std::sqrt(pairs * c.reference * volume / nr) / volume);
                if (se > 0.0) worst = std::max(worst, std::abs(c.estimate - c.reference) / se);
                if (n == 2 && j > i) {
                    const CorrelationCell& t = r.cell(j, i);
                    const double d = std::abs(c.estimate - t.estimate);
                    if (d > 0.0) worst_asym = std::max(worst_asym, d / std::hypot(c.se, t.se));
                }
            }
        rep.add_below("max_gap_in_se_" + tag(p) + "_replicates_" + std::to_string(reps), worst, 4.0);
        if (n == 2) rep.add_below("symmetry_gap_in_se_" + tag(p), worst_asym, 4.0);
    }
    rep.add_abs("uncertified", static_cast<double>(uncertified), 0.0, 0.5);
    return rep;
}

} // namespace

SuiteRun run_laws(const SuiteOptions& opt) {
    Context ctx("laws", opt);
    ctx.run("laws.q_n", [](std::uint64_t s) { return q_n_check(s); });
    ctx.run("laws.rho_m", [&](std::uint64_t s) { return rho_m_check(ctx, s); });
    ctx.run("laws.vm_density", [](std::uint64_t s) { return vm_density_check(s); });
    ctx.run("laws.joint_density", [](std::uint64_t) { return joint_marginal_check(); });
    ctx.run("laws.joint_histogram", [&](std::uint64_t s) { return joint_histogram(ctx, s); });
    ctx.run("laws.moments", [&](std::uint64_t s) { return moments_check(ctx, s); });
    ctx.run("laws.h_p", [&](std::uint64_t s) { return hp_check(ctx, s); });
    ctx.run("laws.correlation_n1", [&](std::uint64_t s) { return correlation_check(ctx, s, 1); });
    ctx.run("laws.correlation_n2", [&](std::uint64_t s) { return correlation_check(ctx, s, 2); });
    return ctx.take();
}

} // namespace pdpp::suites
