#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "pdpp/errors.hpp"

namespace pdpp {

/// Algebraic endpoint factors (v - a)^left_exponent (b - v)^right_exponent of a weighted integral.
struct EndpointWeights {
    double left_exponent = 0.0;
    double right_exponent = 0.0;
};

/// Gauss rule on [0, 1] for the weight t^L (1 - t)^R.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Jacobi rule with n nodes; nodes ascending.
const GaussRule& gauss_jacobi_rule(int n, double left_exponent, double right_exponent);

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 4000;
    bool throw_on_failure = true;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

inline constexpr int kLowOrder = 12;
inline constexpr int kHighOrder = 24;

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

struct Piece {
    double lo, hi;
    bool left_weighted, right_weighted;
};

template <class T>
struct Scored {
    Piece piece;
    T value;
    double error;
    bool operator<(const Scored& o) const { return error < o.error; }
};

template <class T, class F>
Scored<T> evaluate_piece(F& f, const Piece& pc, double a, double b, const EndpointWeights& w) {
    const double L = pc.left_weighted ? w.left_exponent : 0.0;
    const double R = pc.right_weighted ? w.right_exponent : 0.0;
    const bool fold_left = !pc.left_weighted && w.left_exponent != 0.0;
    const bool fold_right = !pc.right_weighted && w.right_exponent != 0.0;
    const double len = pc.hi - pc.lo;
    const double scale = std::pow(len, 1.0 + L + R);
    auto g = [&](double t) -> T {
        const double v = pc.lo + len * t;
        T y = f(v);
        if (fold_left) y *= std::pow(v - a, w.left_exponent);
        if (fold_right) y *= std::pow(b - v, w.right_exponent);
        return y;
    };
    const GaussRule& lo_rule = gauss_jacobi_rule(kLowOrder, L, R);
    const GaussRule& hi_rule = gauss_jacobi_rule(kHighOrder, L, R);
    T s_lo{}, s_hi{};
    for (std::size_t i = 0; i < lo_rule.nodes.size(); ++i) s_lo += lo_rule.weights[i] * g(lo_rule.nodes[i]);
    for (std::size_t i = 0; i < hi_rule.nodes.size(); ++i) s_hi += hi_rule.weights[i] * g(hi_rule.nodes[i]);
    s_lo *= scale;
    s_hi *= scale;
    return Scored<T>{pc, s_hi, magnitude(s_hi - s_lo)};
}

} // namespace detail

/// Adaptive Gauss-Jacobi quadrature of int_a^b (v-a)^L (b-v)^R f(v) dv with optional interior breakpoints.
template <class T, class F>
QuadResult<T> integrate(F&& f, double a, double b, EndpointWeights w, const QuadOptions& opt,
                        const std::vector<double>& breakpoints = {}) {
    if (!(a < b)) throw domain_error("quad: requires a < b");
    if (!(w.left_exponent > -1.0) || !(w.right_exponent > -1.0))
        throw domain_error("quad: endpoint exponents must exceed -1");

    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::priority_queue<detail::Scored<T>> heap;
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i] < cuts[i + 1])) continue;
        detail::Piece pc{cuts[i], cuts[i + 1], i == 0, i + 2 == cuts.size()};
        auto s = detail::evaluate_piece<T>(f, pc, a, b, w);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    int intervals = static_cast<int>(heap.size());
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)); };
    while (total_err > target() && intervals < opt.max_intervals) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.piece.lo + worst.piece.hi);
        if (!(mid > worst.piece.lo && mid < worst.piece.hi)) {
            heap.push(worst);
            break;
        }
        detail::Piece left{worst.piece.lo, mid, worst.piece.left_weighted, false};
        detail::Piece right{mid, worst.piece.hi, false, worst.piece.right_weighted};
        auto sl = detail::evaluate_piece<T>(f, left, a, b, w);
        auto sr = detail::evaluate_piece<T>(f, right, a, b, w);
        total += sl.value + sr.value - worst.value;
        total_err += sl.error + sr.error - worst.error;
        heap.push(sl);
        heap.push(sr);
        ++intervals;
    }
    // recompute from the pieces to shed accumulated rounding in the running sums
    T sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    QuadResult<T> out{sum, err, intervals, err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum))};
    if (!std::isfinite(detail::magnitude(sum))) {
        throw quadrature_error("quad: non-finite integrand value", detail::magnitude(sum), err);
    }
    if (!out.converged && opt.throw_on_failure) {
        throw quadrature_error("quad: no convergence after " + std::to_string(intervals) + " subintervals",
                               detail::magnitude(sum), err);
    }
    return out;
}

/// int_a^b (v-a)^L (b-v)^R f(v) dv to relative tolerance rel_tol.
double quad(const std::function<double(double)>& f, double a, double b, EndpointWeights weights,
            double rel_tol = 1e-10);

/// int_a^inf (v-a)^L f(v) dv; [a, a+scale] is integrated directly and the tail through v = a + scale/(1-t).
template <class T, class F>
QuadResult<T> integrate_to_infinity(F&& f, double a, double left_exponent, const QuadOptions& opt,
                                    double scale = 1.0) {
    auto head = integrate<T>(f, a, a + scale, EndpointWeights{left_exponent, 0.0}, opt);
    auto tail_f = [&](double t) -> T {
        const double u = 1.0 - t;
        const double v = a + scale / u;
        T y = f(v);
        if (left_exponent != 0.0) y *= std::pow(v - a, left_exponent);
        return y * (scale / (u * u));
    };
    QuadOptions tail_opt = opt;
    tail_opt.abs_tol = std::max(opt.abs_tol, 0.25 * opt.rel_tol * detail::magnitude(head.value));
    auto tail = integrate<T>(tail_f, 0.0, 1.0, EndpointWeights{}, tail_opt);
    return QuadResult<T>{head.value + tail.value, head.error + tail.error, head.intervals + tail.intervals,
                         head.converged && tail.converged};
}

} // namespace pdpp
