#include "pdpp/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

#include "pdpp/errors.hpp"

namespace pdpp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209;

// Gamma(s, x) = e^{-x} x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - ...)), modified Lentz.
double upper_gamma_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::exp(-x + s * std::log(x)) * h;
    }
    throw numerical_error("upper_incomplete_gamma: continued fraction did not converge");
}

// Gamma(s, x) for 0 < s <= 1, x < 1.5, arranged so the 1/s poles of Gamma(s) and x^s/s cancel analytically.
double upper_gamma_series(double s, double x) {
    const double lx = std::log(x);
    const double head = (std::expm1(std::lgamma(1.0 + s)) - std::expm1(s * lx)) / s;
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        term *= -x / n;
        const double add = term / (s + n);
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return head - std::exp(s * lx) * sum;
}

double exponential_integral_e1(double x) {
    if (x >= 1.5) return upper_gamma_cf(0.0, x);
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        term *= -x / n;
        const double add = term / n;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double upper_incomplete_gamma(double s, double x) {
    if (!(s > -1.0 && s <= 1.0)) throw domain_error("upper_incomplete_gamma: s must lie in (-1, 1]");
    if (!(x > 0.0)) throw domain_error("upper_incomplete_gamma: x must be positive");
    if (s == 0.0) return exponential_integral_e1(x);
    if (s < 0.0) return (upper_incomplete_gamma(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
    if (x >= 1.5) return upper_gamma_cf(s, x);
    return upper_gamma_series(s, x);
}

double upper_incomplete_gamma_any(double s, double x) {
    if (!(x > 0.0)) throw domain_error("upper_incomplete_gamma_any: x must be positive");
    if (s > 1.0) return boost::math::tgamma(s, x);
    if (s > -1.0) return upper_incomplete_gamma(s, x);
    return (upper_incomplete_gamma_any(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
}

double tail_integral_T(double alpha, double x) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw domain_error("tail_integral_T: alpha must lie in [0, 1)");
    return upper_incomplete_gamma(-alpha, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw domain_error("gamma_q: requires a > 0 and x >= 0");
    return boost::math::gamma_q(a, x);
}

double log_gamma_ratio(double x, double d) {
    if (!(x > 0.0) || !(x + d > 0.0)) throw domain_error("log_gamma_ratio: arguments must be positive");
    if (d == 0.0) return 0.0;
    return -std::log(boost::math::tgamma_delta_ratio(x, d));
}

} // namespace pdpp
