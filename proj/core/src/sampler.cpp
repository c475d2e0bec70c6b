#include "pdpp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdpp/errors.hpp"
#include "pdpp/laws.hpp"

namespace pdpp {

namespace {

std::atomic<int> g_default_workers{0};

// Stopping diagnostics are checked after max(8, n/64) further sticks.
constexpr long kCheckEvery = 8;

} // namespace

void set_default_workers(int workers) { g_default_workers.store(std::max(0, workers)); }

int default_workers() {
    const int w = g_default_workers.load();
    if (w > 0) return w;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

StickSample stick_breaking(const PDParams& p, StopRule stop, RngStream& rng, long cap) {
    validate_params(p.alpha, p.theta);
    if (stop.kind == StopRule::Kind::residual_below && !(stop.eps > 0.0 && stop.eps < 1.0))
        throw domain_error("stick_breaking: eps must lie in (0, 1)");
    if (stop.kind == StopRule::Kind::count && stop.n < 1) throw domain_error("stick_breaking: n must be >= 1");
    StickBreaker sb(p);
    StickSample out;
    for (;;) {
        out.sticks.push_back(sb.next(rng));
        if (stop.kind == StopRule::Kind::count) {
            if (sb.count() >= stop.n) break;
        } else if (sb.residual() < stop.eps) {
            break;
        }
        if (sb.count() >= cap) {
            out.capped = true;
            break;
        }
    }
    out.residual = sb.residual();
    return out;
}

RankedPrefix top_m(const PDParams& p, int m, RngStream& rng, long cap) {
    validate_params(p.alpha, p.theta);
    if (m < 1) throw domain_error("top_m: m must be >= 1");
    StickBreaker sb(p);
    RankedPrefix out;
    auto& w = out.weights;
    w.reserve(static_cast<std::size_t>(m) + 1);
    for (;;) {
        const double x = sb.next(rng);
        if (static_cast<int>(w.size()) < m || x > w.back()) {
            auto pos = std::upper_bound(w.begin(), w.end(), x, std::greater<double>());
            w.insert(pos, x);
            if (static_cast<int>(w.size()) > m) w.pop_back();
        }
        if (static_cast<int>(w.size()) == m && sb.residual() < w.back()) {
            out.certified = true;
            break;
        }
        if (sb.count() >= cap) break;
    }
    out.residual = sb.residual();
    out.sticks_used = sb.count();
    return out;
}

RankedPrefix weights_above(const PDParams& p, double v_min, RngStream& rng, long cap) {
    validate_params(p.alpha, p.theta);
    if (!(v_min > 0.0 && v_min < 1.0)) throw domain_error("weights_above: v_min must lie in (0, 1)");
    StickBreaker sb(p);
    RankedPrefix out;
    for (;;) {
        const double x = sb.next(rng);
        if (x >= v_min) out.weights.push_back(x);
        if (sb.residual() < v_min) {
            out.certified = true;
            break;
        }
        if (sb.count() >= cap) break;
    }
    std::sort(out.weights.begin(), out.weights.end(), std::greater<double>());
    out.residual = sb.residual();
    out.sticks_used = sb.count();
    return out;
}

LevelEvents largest_below(const PDParams& p, const std::vector<double>& levels, RngStream& rng, long cap) {
    validate_params(p.alpha, p.theta);
    if (levels.empty()) throw domain_error("largest_below: no levels given");
    StickBreaker sb(p);
    double mx = 0.0;
    auto decided = [&] {
        const double r = sb.residual();
        if (r <= mx) return true;
        for (double t : levels)
            if (t > mx && t <= r) return false;
        return true;
    };
    LevelEvents out;
    for (;;) {
        mx = std::max(mx, sb.next(rng));
        if (decided()) {
            out.certified = true;
            break;
        }
        if (sb.count() >= cap) break;
    }
    out.below.resize(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) out.below[j] = mx < levels[j] ? 1 : 0;
    out.sticks_used = sb.count();
    return out;
}

HpMultiDraw sample_H(const PDParams& p, const std::vector<double>& powers, RngStream& rng, double tol,
                     TailPolicy tail, long cap) {
    validate_params(p.alpha, p.theta);
    if (powers.empty()) throw domain_error("sample_H: no powers given");
    for (double q : powers)
        if (!(q > p.alpha)) throw domain_error("sample_H: requires p > alpha");
    if (!(tol > 0.0)) throw domain_error("sample_H: tol must be positive");
    const std::size_t k = powers.size();
    StickBreaker sb(p);
    HpMultiDraw out;
    std::vector<double> sums(k, 0.0);
    auto raise = [](double v, double q) { return q == 2.0 ? v * v : q == 3.0 ? v * v * v : std::pow(v, q); };
    bool exhausted = false;
    long next_check = kCheckEvery;
    for (;;) {
        const double v = sb.next(rng);
        for (std::size_t j = 0; j < k; ++j) sums[j] += raise(v, powers[j]);
        const double r = sb.residual();
        if (r <= 0.0) {
            exhausted = true;
            break;
        }
        if (sb.count() >= next_check) {
            next_check = sb.count() + std::max(kCheckEvery, sb.count() / 64);
            const PDParams rest = sb.remainder_params();
            bool done = true;
            for (std::size_t j = 0; j < k && done; ++j) {
                const double scale = tail == TailPolicy::truncate
                                         ? h_p(rest, powers[j])
                                         : std::sqrt(std::max(cov_H(rest, powers[j], powers[j]), 0.0));
                done = raise(r, powers[j]) * scale < tol;
            }
            if (done) break;
        }
        if (sb.count() >= cap) {
            out.certified = false;
            break;
        }
    }
    if (tail == TailPolicy::conditional_mean && !exhausted) {
        const PDParams rest = sb.remainder_params();
        for (std::size_t j = 0; j < k; ++j) sums[j] += raise(sb.residual(), powers[j]) * h_p(rest, powers[j]);
    }
    out.values = std::move(sums);
    out.residual = sb.residual();
    out.sticks = sb.count();
    return out;
}

HpDraw sample_Hp(const PDParams& p, double power, RngStream& rng, double tol, TailPolicy tail, long cap) {
    const HpMultiDraw d = sample_H(p, {power}, rng, tol, tail, cap);
    return HpDraw{d.values[0], d.residual, d.sticks, d.certified};
}

MeanDraw sample_mean_functional(const PDParams& p, const NuSpec& nu, RngStream& rng, double eps, TailPolicy tail,
                                long cap) {
    validate_params(p.alpha, p.theta);
    if (!nu.has_alpha_moment(p.alpha)) throw domain_error("sample_mean_functional: nu must have a finite alpha-moment");
    if (!(eps > 0.0 && eps < 1.0)) throw domain_error("sample_mean_functional: eps must lie in (0, 1)");
    const auto nu_mean = nu.mean();
    if (tail == TailPolicy::conditional_mean && !nu_mean)
        throw domain_error("sample_mean_functional: the conditional-mean tail needs a finite mean of nu");
    StickBreaker sb(p);
    double sum = 0.0;
    while (sb.residual() >= eps && sb.count() < cap) {
        const double stick = sb.next(rng);
        sum += stick * nu.sample(rng);
    }
    MeanDraw out;
    out.residual = sb.residual();
    out.sticks = sb.count();
    if (tail == TailPolicy::conditional_mean) sum += out.residual * *nu_mean;
    out.value = sum;
    const auto lo = nu.support_lower();
    const auto hi = nu.support_upper();
    if (lo && hi) {
        out.truncation_bound = tail == TailPolicy::conditional_mean ? out.residual * (*hi - *lo)
                                                                    : out.residual * std::max(std::abs(*lo), std::abs(*hi));
    } else {
        out.truncation_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

} // namespace pdpp
