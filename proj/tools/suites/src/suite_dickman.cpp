#include <algorithm>
#include <cmath>
#include <random>

#include "context.hpp"
#include "pdpp/core.hpp"
#include "pdpp/dickman.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/volterra.hpp"

namespace pdpp::suites {
namespace {

// int_lo^hi of the V_1 density, split at the kinks 1/k and with the (1-v) factor carried by the weight on [1/2, 1]
double density_mass(const PDParams& p, double lo, double hi) {
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-13;
    double total = 0.0;
    const double mid = std::min(hi, 0.5);
    if (lo < mid) {
        std::vector<double> kinks;
        for (int k = 3; 1.0 / k > lo; ++k)
            if (1.0 / k < mid) kinks.push_back(1.0 / k);
        std::sort(kinks.begin(), kinks.end());
        total += integrate<double>([&](double v) { return v1_density(p, v); }, lo, mid, {}, opt, kinks).value;
    }
    if (hi > 0.5) {
        const double a = std::max(lo, 0.5);
        const double e = p.theta + p.alpha - 1.0;
        if (hi == 1.0) {
            auto f = [&](double v) { return v1_density(p, v) * std::pow(1.0 - v, -e); };
            total += integrate<double>(f, a, 1.0, {0.0, e}, opt).value;
        } else {
            total += integrate<double>([&](double v) { return v1_density(p, v); }, a, hi, {}, opt).value;
        }
    }
    return total;
}

std::string tag(const PDParams& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%g,%g)", p.alpha, p.theta);
    return buf;
}

ExperimentReport ground_truth() {
    ExperimentReport rep;
    rep.add_abs("series_0_1_at_2", rho_series({0.0, 1.0}, 2.0), 1.0 - std::log(2.0), 1e-8);
    const TabulatedFunction ren = renewal_march(1.0, MarchGrid{3.0, 1.0 / 1024.0});
    rep.add_abs("renewal_0_1_at_2", ren(2.0), 1.0 - std::log(2.0), 1e-5);
    const TabulatedFunction vol = volterra_march(0.5, 0.5, MarchGrid{2.0, 1.0 / 512.0});
    rep.add_abs("volterra_half_half_at_1.5", vol(1.5), 2.0 - std::sqrt(1.5), 1e-4);
    return rep;
}

ExperimentReport i_n_check() {
    ExperimentReport rep;
    rep.add_abs("I_0", I_n(0, {0.3, 0.7}, 2.3), 1.0, 1e-15);
    rep.add_abs("I_2_at_1.5", I_n(2, {0.3, 0.7}, 1.5), 0.0, 1e-300);
    rep.add_abs("I_1_0_1_at_2", I_n(1, {0.0, 1.0}, 2.0), std::log(2.0), 1e-10);
    return rep;
}

ExperimentReport series_range(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long outside = 0, not_one = 0;
    for (int k = 0; k < 100; ++k) {
        const double a = k % 5 == 0 ? 0.0 : 0.9 * u(gen);
        const PDParams p{a, -a + 0.05 + 4.0 * u(gen)};
        const double s = 4.0 * u(gen);
        const double r = rho_series(p, s);
        if (!(r > 0.0 && r <= 1.0)) ++outside;
        if (s <= 1.0 && r != 1.0) ++not_one;
    }
    rep.replicates = 100;
    rep.add_abs("values_outside_unit_interval", static_cast<double>(outside), 0.0, 0.5);
    rep.add_abs("not_one_below_1", static_cast<double>(not_one), 0.0, 0.5);
    return rep;
}

bool table_shape_ok(const TabulatedFunction& t) {
    const auto& v = t.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0 && v[i] <= 1.0)) return false;
        if (t.node(i) <= 1.0 && v[i] != 1.0) return false;
        if (i > 0 && v[i] > v[i - 1]) return false;
    }
    return true;
}

ExperimentReport tables_check() {
    ExperimentReport rep;
    const TabulatedFunction t01 = rho_table({0.0, 1.0}, 3.0, 1.0 / 1024.0);
    rep.add_abs("table_0_1_at_3", t01(3.0), rho_series({0.0, 1.0}, 3.0), 1e-4);
    rep.add_abs("series_0_1_at_3", rho_series({0.0, 1.0}, 3.0), 0.0486084, 1e-7);
    const TabulatedFunction t2 = renewal_march(2.0, MarchGrid{2.0, 1.0 / 1024.0});
    rep.add_abs("renewal_theta2_at_1.5", t2(1.5), rho_series({0.0, 2.0}, 1.5), 1e-6);
    double worst37 = 0.0;
    const TabulatedFunction t37 = rho_table({0.3, 0.7}, 3.0, 1.0 / 512.0);
    for (double s : {1.25, 1.75, 2.5}) worst37 = std::max(worst37, std::abs(t37(s) - rho_series({0.3, 0.7}, s)));
    rep.add_below("volterra_0.3_0.7_max_gap", worst37, 1e-3);
    bool shapes = table_shape_ok(t01) && table_shape_ok(t2) && table_shape_ok(t37);
    for (const PDParams& p : {PDParams{0.3, 0.7}, PDParams{0.5, 0.5}, PDParams{0.6, -0.3}, PDParams{0.8, 1.0},
                              PDParams{0.2, 2.0}}) {
        const TabulatedFunction t = rho_table(p, 4.0, 1.0 / 512.0);
        shapes = shapes && table_shape_ok(t);
        double worst = 0.0;
        for (int k = 0; k <= 12; ++k) {
            const double s = 1.0 + 0.25 * k;
            worst = std::max(worst, std::abs(t(s) - rho_series(p, s)));
        }
        rep.add_below("series_volterra_gap_" + tag(p), worst, 1e-3);
    }
    rep.add_abs("tables_monotone_in_unit_interval", shapes ? 1.0 : 0.0, 1.0, 0.5);
    return rep;
}

ExperimentReport order_check() {
    ExperimentReport rep;
    for (const PDParams& p : {PDParams{0.5, 0.5}, PDParams{0.3, 0.7}, PDParams{0.6, -0.3}}) {
        const TabulatedFunction coarse = volterra_march(p.alpha, p.theta, MarchGrid{4.0, 1.0 / 32.0});
        const TabulatedFunction fine = volterra_march(p.alpha, p.theta, MarchGrid{4.0, 1.0 / 64.0});
        for (double s : {1.5, 2.5, 3.5}) {
            const double ref = rho_series(p, s);
            const double ratio = std::abs(coarse(s) - ref) / std::abs(fine(s) - ref);
            char name[96];
            std::snprintf(name, sizeof name, "halving_factor_%s_at_%g", tag(p).c_str(), s);
            rep.add_above(name, ratio, 1.8);
        }
    }
    return rep;
}

ExperimentReport density_check(std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double a = k < 2 ? 0.0 : 0.9 * u(gen);
        const PDParams p{a, -a + 0.05 + 3.0 * u(gen)};
        worst = std::max(worst, std::abs(density_mass(p, 1.0 / 16.0, 1.0) + rho(p, 16.0) - 1.0));
    }
    rep.replicates = 10;
    rep.add_below("max_normalization_gap", worst, 1e-6);
    rep.add_abs("density_0_1_at_0.6", v1_density({0.0, 1.0}, 0.6), 1.0 / 0.6, 1e-12);
    double worst_cdf = 0.0;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.5, 0.5}, PDParams{0.6, -0.3}})
        for (double s : {1.5, 2.5, 6.0})
            worst_cdf = std::max(worst_cdf, std::abs(density_mass(p, 1.0 / s, 1.0) - (1.0 - rho(p, s))));
    rep.add_below("max_cdf_gap", worst_cdf, 1e-5);
    return rep;
}

ExperimentReport recursion_check() {
    ExperimentReport rep;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.3, 0.7}, PDParams{0.6, -0.3}})
        for (double s : {0.5, 1.5, 2.5}) {
            const double lhs = density_mass(p, 1.0 / 64.0, std::min(1.0 / s, 1.0));
            char name[96];
            std::snprintf(name, sizeof name, "closure_%s_at_%g", tag(p).c_str(), s);
            rep.add_abs(name, lhs, rho(p, s), 1e-5);
        }
    return rep;
}

ExperimentReport laplace_suite() {
    ExperimentReport rep;
    for (const PDParams& p : {PDParams{0.0, 1.0}, PDParams{0.0, 2.5}, PDParams{0.3, 0.7}, PDParams{0.5, 0.5}})
        for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
            const LaplaceCheck c = laplace_check(p, lambda);
            char name[96];
            std::snprintf(name, sizeof name, "gap_%s_lambda_%g", tag(p).c_str(), lambda);
            rep.add_abs(name, c.lhs.value, c.rhs, 1e-3);
        }
    const LaplaceCheck c = laplace_check({0.0, 1.0}, 1.0);
    rep.add_abs("rhs_0_1_lambda_1", c.rhs, std::exp(-0.2193839343955203), 1e-12);
    rep.add_abs("gap_0_1_lambda_1", c.lhs.value, c.rhs, 1e-6);
    rep.add_below("tail_bracket_width_0_1_lambda_1", c.lhs.upper - c.lhs.lower, 1e-9);
    const LaplaceCheck big = laplace_check({0.5, 0.5}, 50.0);
    rep.add_abs("lhs_lambda_50", big.lhs.value, 1.0, 1e-6);
    rep.add_abs("rhs_lambda_50", big.rhs, 1.0, 1e-6);
    return rep;
}

ExperimentReport mc_consistency(const Context& ctx, std::uint64_t seed) {
    ExperimentReport rep;
    rep.seed = seed;
    const long n = ctx.replicates(1'000'000, 100'000);
    rep.replicates = n;
    const std::vector<double> s_grid{1.5, 2.0, 3.0};
    std::vector<double> levels;
    for (double s : s_grid) levels.push_back(1.0 / s);
    const std::vector<PDParams> sets{{0.0, 1.0}, {0.0, 2.5}, {0.3, 0.7}, {0.5, 0.5}, {0.6, -0.3}, {0.8, 1.0}};
    long uncertified = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const PDParams p = sets[k];
        struct Acc {
            std::vector<long> hits = std::vector<long>(3, 0);
            long uncertified = 0;
        };
        const Acc total = reduce_replicates(
            n, seed + k, Acc{},
            [&](RngStream& rng, long, Acc& acc) {
                const LevelEvents e = largest_below(p, levels, rng);
                if (!e.certified) ++acc.uncertified;
                for (std::size_t j = 0; j < levels.size(); ++j) acc.hits[j] += e.below[j];
            },
            [](Acc& into, const Acc& from) {
                for (std::size_t j = 0; j < into.hits.size(); ++j) into.hits[j] += from.hits[j];
                into.uncertified += from.uncertified;
            },
            ctx.workers());
        uncertified += total.uncertified;
        for (std::size_t j = 0; j < s_grid.size(); ++j) {
            const double f = static_cast<double>(total.hits[j]) / static_cast<double>(n);
            const double se = std::sqrt(f * (1.0 - f) / static_cast<double>(n));
            char name[96];
            std::snprintf(name, sizeof name, "P(sV1<1)_%s_s_%g", tag(p).c_str(), s_grid[j]);
            rep.add_se(name, f, se, rho_series(p, s_grid[j]), 3.5);
        }
    }
    rep.add_abs("uncertified", static_cast<double>(uncertified), 0.0, 0.5);
    return rep;
}

} // namespace

SuiteRun run_dickman(const SuiteOptions& opt) {
    Context ctx("dickman", opt);
    ctx.run("dickman.ground_truth", [](std::uint64_t) { return ground_truth(); });
    ctx.run("dickman.I_n", [](std::uint64_t) { return i_n_check(); });
    ctx.run("dickman.series_range", [](std::uint64_t s) { return series_range(s); });
    ctx.run("dickman.tables", [](std::uint64_t) { return tables_check(); });
    ctx.run("dickman.volterra_order", [](std::uint64_t) { return order_check(); });
    ctx.run("dickman.density", [](std::uint64_t s) { return density_check(s); });
    ctx.run("dickman.recursion", [](std::uint64_t) { return recursion_check(); });
    ctx.run("dickman.laplace", [](std::uint64_t) { return laplace_suite(); });
    ctx.run("dickman.mc_consistency", [&](std::uint64_t s) { return mc_consistency(ctx, s); });
    return ctx.take();
}

} // namespace pdpp::suites
