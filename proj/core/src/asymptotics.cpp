#include "pdpp/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "pdpp/core.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/laws.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/special.hpp"

namespace pdpp {
namespace {

constexpr int kJointGrid = 41;
constexpr double kJointLo = -2.0;
constexpr double kJointHi = 6.0;

double joint_grid_point(int k) {
    return kJointLo + (kJointHi - kJointLo) * static_cast<double>(k) / static_cast<double>(kJointGrid - 1);
}

// sup over the grid of |F_n(x1, x2) - F(x1, x2)| for (Z_1, Z_2)
double joint_cdf_distance(const std::vector<double>& z, int m, long n) {
    std::vector<double> counts(static_cast<std::size_t>(kJointGrid * kJointGrid), 0.0);
    auto first_at_or_above = [](double x) {
        const double t = (x - kJointLo) / (kJointHi - kJointLo) * (kJointGrid - 1);
        if (t <= 0.0) return 0;
        const int k = static_cast<int>(std::ceil(t));
        if (k < kJointGrid && joint_grid_point(k - 1) >= x) return k - 1;
        return k;
    };
    for (long r = 0; r < n; ++r) {
        const int i = first_at_or_above(z[static_cast<std::size_t>(r * m)]);
        const int j = first_at_or_above(z[static_cast<std::size_t>(r * m + 1)]);
        if (i < kJointGrid && j < kJointGrid) counts[static_cast<std::size_t>(i * kJointGrid + j)] += 1.0;
    }
    for (int i = 0; i < kJointGrid; ++i)
        for (int j = 0; j < kJointGrid; ++j) {
            double c = counts[static_cast<std::size_t>(i * kJointGrid + j)];
            if (i > 0) c += counts[static_cast<std::size_t>((i - 1) * kJointGrid + j)];
            if (j > 0) c += counts[static_cast<std::size_t>(i * kJointGrid + j - 1)];
            if (i > 0 && j > 0) c -= counts[static_cast<std::size_t>((i - 1) * kJointGrid + j - 1)];
            counts[static_cast<std::size_t>(i * kJointGrid + j)] = c;
        }
    double worst = 0.0;
    for (int i = 0; i < kJointGrid; ++i)
        for (int j = 0; j < kJointGrid; ++j) {
            const double emp = counts[static_cast<std::size_t>(i * kJointGrid + j)] / static_cast<double>(n);
            worst = std::max(worst, std::abs(emp - gumbel_joint_cdf(joint_grid_point(i), joint_grid_point(j))));
        }
    return worst;
}

void require_clt(const LimitExperiment& e) {
    validate_params(e.params.alpha, e.params.theta);
    if (!(e.p > e.params.alpha) || e.p == 1.0) throw domain_error("clt_experiment: requires p > alpha and p != 1");
    if (!std::isnan(e.p2) && (!(e.p2 > e.params.alpha) || e.p2 == 1.0))
        throw domain_error("clt_experiment: requires p2 > alpha and p2 != 1");
    if (e.replicates < 2) throw domain_error("clt_experiment: needs at least 2 replicates");
}

} // namespace

double beta_scale(const PDParams& p) {
    validate_params(p.alpha, p.theta);
    if (!(p.theta > 1.0)) throw domain_error("beta_scale: requires theta > 1");
    const double lt = std::log(p.theta);
    return lt - (p.alpha + 1.0) * std::log(lt) - log_gamma(1.0 - p.alpha);
}

double gumbel_reference(int m, double x) {
    if (m < 1) throw domain_error("gumbel_reference: requires m >= 1");
    const double u = std::exp(-x);
    if (!std::isfinite(u)) return 0.0;
    if (u == 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(m), u);
}

double gumbel_joint_cdf(double x1, double x2) {
    const double top = std::min(x1, x2);
    const double e1 = std::exp(-x1);
    // int_{-inf}^{top} e^{-z - e^{-z}} (e^{-z} - e^{-x1}) dz, with u = e^{-z}
    const double u0 = std::exp(-top);
    if (!std::isfinite(u0)) return 0.0;
    auto f = [&](double u) { return std::exp(-u) * (u - e1); };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    const double scale = std::max(1.0, u0);
    return integrate_to_infinity<double>(f, u0, 0.0, opt, scale).value;
}

double gumbel_rho_gap(const PDParams& p, int m, double x) {
    const double b = beta_scale(p);
    if (!(x + b > 0.0)) throw domain_error("gumbel_rho_gap: requires x + beta > 0");
    return std::abs(rho_m(p, m, p.theta / (x + b)) - gumbel_reference(m, x));
}

GumbelResult gumbel_experiment(const LimitExperiment& e) {
    validate_params(e.params.alpha, e.params.theta);
    if (e.m < 1) throw domain_error("gumbel_experiment: requires m >= 1");
    if (e.replicates < 2) throw domain_error("gumbel_experiment: needs at least 2 replicates");
    const double b = beta_scale(e.params);
    const int m = e.m;
    struct Draw {
        std::vector<double> z;
        long sticks = 0;
        bool certified = true;
    };
    auto draws = run_replicates<Draw>(
        e.replicates, e.seed,
        [&](RngStream& rng, long) {
            const RankedPrefix r = top_m(e.params, m, rng);
            Draw d;
            d.z.resize(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                const double v = i < static_cast<int>(r.weights.size()) ? r.weights[static_cast<std::size_t>(i)] : 0.0;
                d.z[static_cast<std::size_t>(i)] = e.params.theta * v - b;
            }
            d.sticks = r.sticks_used;
            d.certified = r.certified;
            return d;
        },
        e.workers);

    GumbelResult out;
    out.z.reserve(static_cast<std::size_t>(e.replicates * m));
    double sticks = 0.0;
    for (const auto& d : draws) {
        out.z.insert(out.z.end(), d.z.begin(), d.z.end());
        sticks += static_cast<double>(d.sticks);
        if (!d.certified) ++out.uncertified;
    }
    out.mean_sticks = sticks / static_cast<double>(e.replicates);
    for (int i = 0; i < m; ++i) {
        std::vector<double> col(static_cast<std::size_t>(e.replicates));
        for (long r = 0; r < e.replicates; ++r) col[static_cast<std::size_t>(r)] = out.z[static_cast<std::size_t>(r * m + i)];
        out.ks.push_back(ks_statistic(std::move(col), [i](double x) { return gumbel_reference(i + 1, x); }));
    }
    if (m >= 2) out.joint_distance = joint_cdf_distance(out.z, m, e.replicates);
    return out;
}

double sigma2(double alpha, double power) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw domain_error("sigma2: requires 0 <= alpha < 1");
    if (!(power > alpha) || power == 1.0) throw domain_error("sigma2: requires p > alpha and p != 1");
    return limit_covariance(alpha, power, power);
}

double sigma2(const PDParams& p, double power) { return sigma2(p.alpha, power); }

double limit_covariance(double alpha, double p, double q) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw domain_error("limit_covariance: requires 0 <= alpha < 1");
    if (!(p > alpha && q > alpha)) throw domain_error("limit_covariance: requires p, q > alpha");
    const double g = std::exp(log_gamma(1.0 - alpha) + log_gamma(p + q - alpha) - log_gamma(p - alpha) -
                              log_gamma(q - alpha));
    return g + alpha - p * q;
}

double sigma2_identity_gap(const PDParams& p, double power) {
    const double a = p.alpha;
    const double s2 = sigma2(a, power);
    const double k = std::exp(log_gamma(1.0 - a) - log_gamma(power - a));
    const double lg2 = log_gamma(2.0 - a);
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    auto moment = [&](double r) {
        // E Y^r = Gamma(2 - alpha + r) / Gamma(2 - alpha), by quadrature of the density
        auto f = [&](double z) { return std::exp(r * std::log(z) - z - lg2); };
        return integrate_to_infinity<double>(f, 0.0, 1.0 - a, opt, 4.0).value;
    };
    const double m1 = moment(power - 1.0);
    const double m2 = moment(2.0 * (power - 1.0));
    const double var = k * k * (m2 - m1 * m1);
    const double rhs = (1.0 - a) * var + a * (power - 1.0) * (power - 1.0) / (1.0 - a);
    return std::abs(s2 - rhs);
}

double limit_scaled_covariance(double alpha, double p, double q) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw domain_error("limit_scaled_covariance: requires 0 <= alpha < 1");
    if (!(p > alpha && q > alpha)) throw domain_error("limit_scaled_covariance: requires p, q > alpha");
    const double g1 = log_gamma(1.0 - alpha);
    return std::exp(log_gamma(p + q - alpha) - g1) +
           std::exp(log_gamma(p - alpha) + log_gamma(q - alpha) - 2.0 * g1) * (alpha - p * q);
}

double scaled_finite_variance(const PDParams& p, double power) {
    return std::exp((2.0 * power - 1.0) * std::log(p.theta)) * cov_H(p, power, power);
}

CltResult clt_experiment(const LimitExperiment& e) {
    require_clt(e);
    const PDParams& pp = e.params;
    const double th = pp.theta;
    const bool pair = !std::isnan(e.p2);
    std::vector<double> powers{e.p};
    if (pair) powers.push_back(e.p2);
    // W = K H - sqrt(theta), K = sqrt(theta) Gamma(1-alpha) theta^{p-1} / Gamma(p-alpha)
    auto gain = [&](double q) {
        return std::exp(0.5 * std::log(th) + log_gamma(1.0 - pp.alpha) + (q - 1.0) * std::log(th) -
                        log_gamma(q - pp.alpha));
    };
    double tol = e.w_tail_sd / gain(e.p);
    if (pair) tol = std::min(tol, e.w_tail_sd / gain(e.p2));
    const double k1 = gain(e.p);
    const double k2 = pair ? gain(e.p2) : 0.0;
    const double root = std::sqrt(th);
    const double hscale = std::exp((e.p - 1.0) * std::log(th));

    struct Draw {
        double w1 = 0.0, w2 = 0.0, h = 0.0;
        long sticks = 0;
        bool certified = true;
    };
    auto draws = run_replicates<Draw>(
        e.replicates, e.seed,
        [&](RngStream& rng, long) {
            const HpMultiDraw d = sample_H(pp, powers, rng, tol, TailPolicy::conditional_mean);
            Draw w;
            w.w1 = k1 * d.values[0] - root;
            if (pair) w.w2 = k2 * d.values[1] - root;
            w.h = hscale * d.values[0];
            w.sticks = d.sticks;
            w.certified = d.certified;
            return w;
        },
        e.workers);

    CltResult out;
    out.w.reserve(draws.size());
    RunningStats sh;
    double sticks = 0.0;
    for (const auto& d : draws) {
        out.w.push_back(d.w1);
        sh.add(d.h);
        sticks += static_cast<double>(d.sticks);
        if (!d.certified) ++out.uncertified;
    }
    const double n = static_cast<double>(e.replicates);
    out.mean_sticks = sticks / n;
    out.mean = estimate_mean(out.w);
    out.variance = sample_variance(out.w);
    double m4 = 0.0;
    for (double w : out.w) m4 += std::pow(w - out.mean.mean, 4);
    m4 /= n;
    out.variance_se = std::sqrt(std::max(m4 - out.variance * out.variance, 0.0) / n);
    out.sigma2 = sigma2(pp.alpha, e.p);
    const double sd = std::sqrt(out.sigma2);
    out.ks = ks_statistic(out.w, [sd](double x) { return normal_cdf(x / sd); });
    out.scaled_h = sh.estimate();
    out.scaled_h_reference = hscale * h_p(pp, e.p);
    if (pair) {
        std::vector<double> w2(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) w2[i] = draws[i].w2;
        const double mean2 = estimate_mean(w2).mean;
        std::vector<double> prod(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) prod[i] = (out.w[i] - out.mean.mean) * (w2[i] - mean2);
        out.covariance = sample_covariance(out.w, w2);
        out.covariance_se = estimate_mean(prod).std_error;
        out.covariance_reference = limit_covariance(pp.alpha, e.p, e.p2);
    }
    return out;
}

double q1_integral(const PDParams& p, double lo, double hi) {
    validate_params(p.alpha, p.theta);
    if (!(lo > 0.0 && lo < hi && hi <= 1.0)) throw domain_error("q1_integral: requires 0 < lo < hi <= 1");
    const double lc = log_c(1, p);
    const double e = p.theta + p.alpha - 1.0;
    if (hi == 1.0) {
        auto f = [&](double v) { return std::exp(lc - (p.alpha + 1.0) * std::log(v)); };
        return quad(f, lo, hi, EndpointWeights{0.0, e}, 1e-11);
    }
    auto f = [&](double v) { return std::exp(lc - (p.alpha + 1.0) * std::log(v) + e * std::log1p(-v)); };
    return quad(f, lo, hi, EndpointWeights{}, 1e-11);
}

double q2_integral(const PDParams& p, double lo1, double hi1, double lo2, double hi2) {
    validate_params(p.alpha, p.theta);
    if (!(lo1 > 0.0 && lo1 < hi1 && lo2 > 0.0 && lo2 < hi2)) throw domain_error("q2_integral: empty or invalid cell");
    const double top1 = std::min(hi1, 1.0 - lo2);
    if (!(top1 > lo1)) return 0.0;
    const double lc = log_c(2, p);
    const double e = p.theta + 2.0 * p.alpha - 1.0;
    const double a1 = p.alpha + 1.0;
    auto inner = [&](double v1) {
        const double top2 = std::min(hi2, 1.0 - v1);
        if (!(top2 > lo2)) return 0.0;
        const double base = lc - a1 * std::log(v1);
        if (1.0 - v1 <= hi2) {
            auto f = [&](double v2) { return std::exp(base - a1 * std::log(v2)); };
            return quad(f, lo2, top2, EndpointWeights{0.0, e}, 1e-10);
        }
        auto f = [&](double v2) { return std::exp(base - a1 * std::log(v2) + e * std::log(1.0 - v1 - v2)); };
        return quad(f, lo2, top2, EndpointWeights{}, 1e-10);
    };
    QuadOptions opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-14;
    return integrate<double>(inner, lo1, top1, EndpointWeights{}, opt, {1.0 - hi2}).value;
}

CorrelationResult empirical_correlation(const PDParams& p, int n, int bins, double v_min, long replicates,
                                        std::uint64_t seed, int workers) {
    validate_params(p.alpha, p.theta);
    if (n != 1 && n != 2) throw domain_error("empirical_correlation: n must be 1 or 2");
    if (bins < 1) throw domain_error("empirical_correlation: needs at least one bin");
    if (!(v_min >= 0.02 && v_min < 1.0)) throw domain_error("empirical_correlation: requires 0.02 <= v_min < 1");
    if (replicates < 2) throw domain_error("empirical_correlation: needs at least 2 replicates");
    const double width = (1.0 - v_min) / bins;
    const int cells = n == 1 ? bins : bins * bins;
    auto bin_of = [&](double v) { return std::min(bins - 1, static_cast<int>((v - v_min) / width)); };

    struct Acc {
        std::vector<double> s1, s2;
        long uncertified = 0;
        double sticks = 0.0;
    };
    Acc init;
    init.s1.assign(static_cast<std::size_t>(cells), 0.0);
    init.s2.assign(static_cast<std::size_t>(cells), 0.0);

    struct Scratch {
        std::vector<double> counts;
        std::vector<int> touched;
    };
    auto step = [&](RngStream& rng, long, Acc& acc) {
        thread_local Scratch sc;
        sc.counts.assign(static_cast<std::size_t>(cells), 0.0);
        sc.touched.clear();
        const RankedPrefix r = weights_above(p, v_min, rng, kCorrelationStickCap);
        if (!r.certified) ++acc.uncertified;
        acc.sticks += static_cast<double>(r.sticks_used);
        const auto& w = r.weights;
        auto bump = [&](int c) {
            if (sc.counts[static_cast<std::size_t>(c)] == 0.0) sc.touched.push_back(c);
            sc.counts[static_cast<std::size_t>(c)] += 1.0;
        };
        if (n == 1) {
            for (double v : w) bump(bin_of(v));
        } else {
            for (std::size_t i = 0; i < w.size(); ++i)
                for (std::size_t j = 0; j < w.size(); ++j)
                    if (i != j) bump(bin_of(w[i]) * bins + bin_of(w[j]));
        }
        for (int c : sc.touched) {
            const double k = sc.counts[static_cast<std::size_t>(c)];
            acc.s1[static_cast<std::size_t>(c)] += k;
            acc.s2[static_cast<std::size_t>(c)] += k * k;
        }
    };
    auto merge = [](Acc& into, const Acc& from) {
        for (std::size_t c = 0; c < into.s1.size(); ++c) {
            into.s1[c] += from.s1[c];
            into.s2[c] += from.s2[c];
        }
        into.uncertified += from.uncertified;
        into.sticks += from.sticks;
    };
    const Acc total = reduce_replicates(replicates, seed, init, step, merge, workers);

    CorrelationResult out;
    out.n = n;
    out.bins = bins;
    out.v_min = v_min;
    out.uncertified = total.uncertified;
    const double nr = static_cast<double>(replicates);
    out.mean_sticks = total.sticks / nr;
    const double volume = n == 1 ? width : width * width;
    for (int c = 0; c < cells; ++c) {
        CorrelationCell cell;
        const int i = n == 1 ? c : c / bins;
        const int j = n == 1 ? 0 : c % bins;
        cell.lo1 = v_min + i * width;
        cell.hi1 = i == bins - 1 ? 1.0 : v_min + (i + 1) * width;
        if (n == 2) {
            cell.lo2 = v_min + j * width;
            cell.hi2 = j == bins - 1 ? 1.0 : v_min + (j + 1) * width;
        }
        const double mean = total.s1[static_cast<std::size_t>(c)] / nr;
        const double var = std::max(total.s2[static_cast<std::size_t>(c)] / nr - mean * mean, 0.0) * nr / (nr - 1.0);
        cell.estimate = mean / volume;
        cell.se = std::sqrt(var / nr) / volume;
        cell.reference = (n == 1 ? q1_integral(p, cell.lo1, cell.hi1)
                                 : q2_integral(p, cell.lo1, cell.hi1, cell.lo2, cell.hi2)) /
                         volume;
        out.cells.push_back(cell);
    }
    return out;
}

ExperimentReport gumbel_report(const LimitExperiment& e, const GumbelResult& r, double ks_threshold,
                               double joint_threshold) {
    ExperimentReport rep;
    rep.experiment = "gumbel";
    rep.params = params_json(e.params);
    rep.params["m"] = e.m;
    rep.params["beta"] = beta_scale(e.params);
    rep.replicates = e.replicates;
    rep.seed = e.seed;
    for (std::size_t i = 0; i < r.ks.size(); ++i)
        rep.add_below("ks_Z" + std::to_string(i + 1), r.ks[i], ks_threshold);
    if (!std::isnan(r.joint_distance)) rep.add_below("joint_cdf_distance", r.joint_distance, joint_threshold);
    rep.add_abs("uncertified", static_cast<double>(r.uncertified), 0.0, 0.5);
    return rep;
}

ExperimentReport clt_report(const LimitExperiment& e, const CltResult& r) {
    ExperimentReport rep;
    rep.experiment = "clt";
    rep.params = params_json(e.params);
    rep.params["p"] = e.p;
    if (!std::isnan(e.p2)) rep.params["p2"] = e.p2;
    rep.replicates = e.replicates;
    rep.seed = e.seed;
    rep.add_se("mean_W", r.mean.mean, r.mean.std_error, 0.0, 3.5);
    rep.add_abs("var_W", r.variance, r.sigma2, 0.05 * r.sigma2);
    rep.add_below("ks_normal", r.ks, 0.02);
    if (!std::isnan(r.covariance))
        rep.add_se("cov_W", r.covariance, r.covariance_se, r.covariance_reference, 4.0);
    rep.add_abs("uncertified", static_cast<double>(r.uncertified), 0.0, 0.5);
    return rep;
}

} // namespace pdpp
