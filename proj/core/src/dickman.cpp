#include "pdpp/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>
#include <vector>

#include "pdpp/core.hpp"
#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/special.hpp"
#include "pdpp/summation.hpp"

namespace pdpp {

namespace {

constexpr double kLevelRelTol = 1e-12;
constexpr double kTinyTable = 1e-280;
// above this (1-t)^R exponent the factor joins the integrand instead of the Gauss-Jacobi weight
constexpr double kFoldedWeight = 40.0;

QuadOptions level_options() {
    QuadOptions opt;
    opt.rel_tol = kLevelRelTol;
    opt.abs_tol = 1e-300;
    return opt;
}

} // namespace

std::string method_name(RhoMethod m) {
    switch (m) {
    case RhoMethod::series: return "series";
    case RhoMethod::volterra: return "volterra";
    case RhoMethod::renewal: return "renewal";
    case RhoMethod::automatic: return "auto";
    }
    return "auto";
}

RhoMethod method_from_name(const std::string& name) {
    if (name == "series") return RhoMethod::series;
    if (name == "volterra") return RhoMethod::volterra;
    if (name == "renewal") return RhoMethod::renewal;
    if (name == "auto") return RhoMethod::automatic;
    throw domain_error("unknown method '" + name + "' (expected series, volterra, renewal or auto)");
}

DickmanEvaluator::DickmanEvaluator(const PDParams& p) : params_(validate_params(p.alpha, p.theta)) {}

double DickmanEvaluator::level_exponent(int k) const {
    return static_cast<double>(k) - 1.0 + params_.theta + params_.alpha * static_cast<double>(k);
}

// I_n(s) = ((s-n)/s)^{e_n} g_n(s) with
//   g_n(s) = int_0^1 (1-t)^R h(v) dt,  v = 1/s + t (1/n - 1/s),
// R = theta+alpha-1 and h = v^{-alpha-1} for n = 1, and for n >= 2
// R = e_{n-1} of the shifted level and h = v^{-alpha-1} (1-v)^{theta+alpha-1-R} g_{n-1}((1-v)/v).
namespace {

struct GIntegrand {
    int n;
    double alpha;
    double theta;
    double right;
    std::shared_ptr<const TabulatedFunction> inner;

    double h(double v) const {
        double y = std::pow(v, -alpha - 1.0);
        if (n >= 2) {
            const double x = std::max((1.0 - v) / v, inner->grid_start());
            y *= std::pow(1.0 - v, theta + alpha - 1.0 - right) * (*inner)(x);
        }
        return y;
    }

    double g(double s) const {
        const double lo = 1.0 / s;
        const double len = 1.0 / n - lo;
        if (len <= 0.0) return h(1.0 / n) / (right + 1.0);
        if (right > kFoldedWeight) {
            auto f = [&](double t) { return h(lo + t * len) * std::exp(right * std::log1p(-t)); };
            std::vector<double> cuts;
            for (double c = 2.0 / right; c < 1.0; c *= 4.0) cuts.push_back(c);
            return integrate<double>(f, 0.0, 1.0, EndpointWeights{}, level_options(), cuts).value;
        }
        auto f = [&](double t) { return h(lo + t * len); };
        return integrate<double>(f, 0.0, 1.0, EndpointWeights{0.0, right}, level_options()).value;
    }
};

} // namespace

DickmanEvaluator::LevelTable DickmanEvaluator::level_table(int k, double x_needed) const {
    {
        std::shared_lock lock(mutex_);
        auto it = levels_.find(k);
        if (it != levels_.end() && it->second.g->grid_end() >= x_needed) return it->second;
    }
    const double x_max = std::max(std::ceil(x_needed), static_cast<double>(k) + 3.0);
    GIntegrand gi{k, params_.alpha, params_.theta, 0.0, nullptr};
    if (k == 1) {
        gi.right = params_.theta + params_.alpha - 1.0;
    } else {
        auto inner = evaluator_for(params_.shifted(1.0));
        auto lt = inner->level_table(k - 1, x_max - 1.0);
        gi.right = lt.exponent;
        gi.inner = lt.g;
    }
    const auto count = static_cast<std::size_t>(std::llround((x_max - k) / kLevelStep)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = gi.g(k + kLevelStep * static_cast<double>(i));
    LevelTable table{level_exponent(k),
                     std::make_shared<const TabulatedFunction>(static_cast<double>(k), kLevelStep, std::move(values),
                                                               Interp::cubic)};
    std::unique_lock lock(mutex_);
    auto& slot = levels_[k];
    if (!slot.g || slot.g->grid_end() < table.g->grid_end()) slot = table;
    return slot;
}

double DickmanEvaluator::I(int n, double s) const {
    if (n < 0) throw domain_error("I_n: n must be non-negative");
    if (!(s > 0.0)) throw domain_error("I_n: s must be positive");
    if (n == 0) return 1.0;
    if (s <= n) return 0.0;
    GIntegrand gi{n, params_.alpha, params_.theta, 0.0, nullptr};
    if (n == 1) {
        gi.right = params_.theta + params_.alpha - 1.0;
    } else {
        auto lt = evaluator_for(params_.shifted(1.0))->level_table(n - 1, s - 1.0);
        gi.right = lt.exponent;
        gi.inner = lt.g;
    }
    return std::pow((s - n) / s, level_exponent(n)) * gi.g(s);
}

double DickmanEvaluator::I_tabulated(int k, double x) const {
    if (k == 0) return 1.0;
    if (x <= k) return 0.0;
    auto lt = level_table(k, x);
    return std::pow((x - k) / x, lt.exponent) * (*lt.g)(x);
}

double DickmanEvaluator::rho_series(double s) const {
    if (!(s > 0.0)) throw domain_error("rho: s must be positive");
    if (s <= 1.0) return 1.0;
    const int n_max = static_cast<int>(std::floor(s));
    CompensatedSum sum;
    sum += 1.0;
    double log_factorial = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        log_factorial += std::log(static_cast<double>(n));
        const double term = std::exp(log_c(n, params_) - log_factorial) * I(n, s);
        sum += (n % 2 == 1) ? -term : term;
    }
    const double value = sum.value();
    if (!(value >= -1e-8 && value <= 1.0 + 1e-8))
        throw numerical_error("rho_series: value " + std::to_string(value) + " outside [0, 1] at s=" +
                              std::to_string(s) + " for " + to_string(params_));
    return std::clamp(value, 0.0, 1.0);
}

std::shared_ptr<const TabulatedFunction> DickmanEvaluator::march_table(double s_needed) const {
    {
        std::shared_lock lock(mutex_);
        if (march_ && march_->grid_end() >= s_needed) return march_;
    }
    double s_max = 16.0;
    while (s_max < s_needed) s_max *= 2.0;
    MarchGrid grid{s_max, kMarchStep};
    std::shared_ptr<const TabulatedFunction> table;
    if (params_.alpha > 0.0) {
        // series values on [0, kSeriesMax], march beyond; one extrapolation step with the error order 2 - alpha
        auto seeded = [&](double h) {
            const long nodes = std::lround(kSeriesMax / h) + 1;
            std::vector<double> known(static_cast<std::size_t>(nodes));
            for (long i = 0; i < nodes; ++i) known[i] = i == 0 ? 1.0 : rho_series(static_cast<double>(i) * h);
            return volterra_march(params_.alpha, params_.theta, MarchGrid{s_max, h}, known);
        };
        const TabulatedFunction coarse = seeded(kMarchStep);
        const TabulatedFunction fine = seeded(kMarchStep / 2.0);
        const double q = std::exp2(2.0 - params_.alpha) - 1.0;
        std::vector<double> vals(coarse.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double f = fine.values()[2 * i];
            vals[i] = f + (f - coarse.values()[i]) / q;
        }
        table = std::make_shared<const TabulatedFunction>(0.0, kMarchStep, std::move(vals), Interp::cubic_monotone);
    } else {
        table = std::make_shared<const TabulatedFunction>(renewal_march(params_.theta, grid));
    }
    std::unique_lock lock(mutex_);
    if (!march_ || march_->grid_end() < table->grid_end()) march_ = table;
    return march_;
}

double DickmanEvaluator::rho(double s) const {
    if (!(s > 0.0)) throw domain_error("rho: s must be positive");
    if (s <= 1.0) return 1.0;
    if (s <= kSeriesMax) return rho_series(s);
    std::shared_ptr<const TabulatedFunction> t;
    {
        std::shared_lock lock(mutex_);
        t = march_;
    }
    if (t && s > t->grid_end() && t->values().back() < kTinyTable) return 0.0;
    for (;;) {
        t = march_table(std::min(s, t ? 2.0 * t->grid_end() : 16.0));
        if (s <= t->grid_end()) return std::max((*t)(s), 0.0);
        if (t->values().back() < kTinyTable) return 0.0;
    }
}

std::shared_ptr<const DickmanEvaluator> evaluator_for(const PDParams& p) {
    static std::mutex registry_mutex;
    static std::map<std::pair<double, double>, std::shared_ptr<const DickmanEvaluator>> registry;
    const auto key = std::make_pair(p.alpha, p.theta);
    {
        std::lock_guard lock(registry_mutex);
        auto it = registry.find(key);
        if (it != registry.end()) return it->second;
    }
    auto ev = std::make_shared<const DickmanEvaluator>(p);
    std::lock_guard lock(registry_mutex);
    auto [it, inserted] = registry.emplace(key, ev);
    return it->second;
}

double I_n(int n, const PDParams& p, double s) { return evaluator_for(p)->I(n, s); }

double rho_series(const PDParams& p, double s) { return evaluator_for(p)->rho_series(s); }

double rho(const PDParams& p, double s) { return evaluator_for(p)->rho(s); }

TabulatedFunction rho_table(const PDParams& p, double s_max, double h, RhoMethod method) {
    validate_params(p.alpha, p.theta);
    if (!(s_max >= 1.0)) throw domain_error("rho_table: s_max must be at least 1");
    const double inv = 1.0 / h;
    if (!(h > 0.0) || std::abs(inv - std::round(inv)) > 1e-9 || std::round(inv) < 1.0)
        throw domain_error("rho_table: 1/h must be a positive integer");
    switch (method) {
    case RhoMethod::volterra:
        if (!(p.alpha > 0.0)) throw domain_error("volterra method requires alpha > 0; use renewal for alpha = 0");
        return volterra_march(p.alpha, p.theta, MarchGrid{s_max, h});
    case RhoMethod::renewal:
        if (p.alpha != 0.0) throw domain_error("renewal method requires alpha = 0");
        if (!(p.theta > 0.0)) throw domain_error("renewal method requires theta > 0");
        return renewal_march(p.theta, MarchGrid{s_max, h});
    default: break;
    }
    auto ev = evaluator_for(p);
    const auto count = static_cast<std::size_t>(std::floor(s_max / h + 1e-9)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = h * static_cast<double>(i);
        if (s <= 1.0) values[i] = 1.0;
        else values[i] = method == RhoMethod::series ? ev->rho_series(s) : ev->rho(s);
    }
    return TabulatedFunction(0.0, h, std::move(values), Interp::cubic_monotone);
}

double v1_density(const PDParams& p, double v) {
    validate_params(p.alpha, p.theta);
    if (!(v > 0.0 && v < 1.0)) return 0.0;
    const double lc1 = log_c(1, p);
    const double base =
        std::exp(lc1 - (p.alpha + 1.0) * std::log(v) + (p.theta + p.alpha - 1.0) * std::log1p(-v));
    const double y = (1.0 - v) / v;
    return y <= 1.0 ? base : base * rho(p.shifted(1.0), y);
}

double LaplaceCheck::gap() const { return std::abs(lhs.value - rhs); }

LaplaceCheck laplace_check(const PDParams& p, double lambda) {
    validate_params(p.alpha, p.theta);
    if (!(lambda > 0.0)) throw domain_error("laplace_check: lambda must be positive");
    constexpr double kSMax = 60.0;
    auto ev = evaluator_for(p);
    auto full = ev->march_table(kSMax);
    std::vector<double> vals(full->values().begin(),
                             full->values().begin() + static_cast<std::ptrdiff_t>(std::llround(kSMax / full->step())) + 1);
    TabulatedFunction tab(0.0, full->step(), std::move(vals), Interp::cubic_monotone);
    const double T = tail_integral_T(p.alpha, lambda);
    LaplaceCheck out;
    if (p.theta > 0.0) {
        out.form = "weighted";
        out.lhs = laplace_weighted(tab, p.theta, lambda, std::max(tab.values().back(), 0.0));
        out.rhs = p.alpha == 0.0 ? std::exp(-p.theta * T)
                                 : std::exp(-(p.theta / p.alpha) * std::log1p(C_alpha(p.alpha) * T));
    } else {
        out.form = "deficit";
        out.lhs = laplace_deficit(tab, p.theta, lambda);
        out.rhs = R(p, std::complex<double>(-T, 0.0)).real();
    }
    return out;
}

} // namespace pdpp
