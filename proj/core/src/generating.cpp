#include "pdpp/core.hpp"

#include <cmath>

#include "pdpp/quadrature.hpp"

namespace pdpp {
namespace {

using cplx = std::complex<double>;

void require_valid(const PDParams& p) {
    validate_params(p.alpha, p.theta);
}

cplx expm1c(cplx z) {
    const double x = z.real(), y = z.imag();
    if (y == 0.0) return {std::expm1(x), 0.0};
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// principal log(1 + w)
cplx log1pc(cplx w) {
    const double re = w.real(), im = w.imag();
    return {0.5 * std::log1p(2.0 * re + re * re + im * im), std::atan2(im, 1.0 + re)};
}

void check_branch(const PDParams& p, cplx u) {
    if (p.alpha == 0.0) return;
    const double cu = C_alpha(p.alpha) * u.real();
    if (u.imag() == 0.0 && cu >= 1.0)
        throw branch_cut_error("R: C_alpha * u lies on the branch cut [1, inf)");
}

// d/dx R_{alpha,theta}(x)
cplx R_prime(const PDParams& p, cplx x) {
    if (p.alpha == 0.0) return std::exp(std::lgamma(p.theta + 1.0)) * std::exp(p.theta * x);
    const double C = C_alpha(p.alpha);
    const cplx w = log1pc(-C * x);
    return std::exp(std::lgamma(p.theta + 1.0)) * (C / p.alpha) * std::exp((-p.theta / p.alpha - 1.0) * w);
}

} // namespace

double log_c(int n, const PDParams& p) {
    if (n < 0) throw domain_error("log_c: n must be non-negative");
    require_valid(p);
    if (n == 0) return 0.0;
    if (p.alpha == 0.0) return n * std::log(p.theta);
    const double lg1a = std::lgamma(1.0 - p.alpha);
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
        s += std::lgamma(p.theta + 1.0 + (i - 1) * p.alpha) - lg1a - std::lgamma(p.theta + i * p.alpha);
    }
    return s;
}

bool c_recurrence_check(int m, int n, const PDParams& p) {
    if (m < 0 || n < 0) throw domain_error("c_recurrence_check: m, n must be non-negative");
    const double gap = log_c(m + n, p) - log_c(m, p) - log_c(n, p.shifted(m));
    return std::abs(gap) < 1e-10;
}

double C_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw domain_error("C_alpha: alpha must lie in [0, 1)");
    if (alpha == 0.0) return 0.0;
    return alpha / std::tgamma(1.0 - alpha);
}

std::complex<double> R(const PDParams& p, std::complex<double> u) {
    require_valid(p);
    if (u == cplx{0.0, 0.0}) return {0.0, 0.0};
    if (p.alpha == 0.0) return std::tgamma(p.theta) * expm1c(p.theta * u);
    check_branch(p, u);
    const cplx w = log1pc(-C_alpha(p.alpha) * u);
    if (p.theta == 0.0) return -w / p.alpha;
    return (std::tgamma(p.theta + 1.0) / p.theta) * expm1c(-(p.theta / p.alpha) * w);
}

std::complex<double> R_m(int m, const PDParams& p, std::complex<double> u) {
    if (m < 1) throw domain_error("R_m: m must be positive");
    require_valid(p);
    if (m == 1) return R(p, u);
    if (u == cplx{0.0, 0.0}) return {0.0, 0.0};
    check_branch(p, u);
    const PDParams shifted = p.shifted(m - 1);
    const double log_k = log_c(m - 1, p) - std::lgamma(static_cast<double>(m));
    const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
    const cplx um1 = std::pow(u, m - 1);
    auto integrand = [&](double t) -> cplx { return std::pow(t, m - 1) * um1 * R_prime(shifted, t * u); };
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-300;
    const cplx integral = u * integrate<cplx>(integrand, 0.0, 1.0, EndpointWeights{}, opt).value;
    return sign * std::exp(log_k) * integral;
}

RCoefficients R_coefficients(const PDParams& p, int n_max) {
    require_valid(p);
    RCoefficients out{p, std::vector<double>(static_cast<std::size_t>(n_max + 1), 0.0)};
    for (int n = 1; n <= n_max; ++n) {
        out.coeffs[n] = std::exp(std::lgamma(p.theta + p.alpha * n) + log_c(n, p) - std::lgamma(n + 1.0));
    }
    return out;
}

} // namespace pdpp
