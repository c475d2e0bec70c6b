#include "pdpp/laplace.hpp"

#include <cmath>
#include <limits>

#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"
#include "pdpp/special.hpp"

namespace pdpp {
namespace {

std::vector<double> integer_breaks(double lo, double hi) {
    std::vector<double> b;
    for (double k = std::floor(lo) + 1.0; k < hi; k += 1.0) b.push_back(k);
    return b;
}

// quadrature error estimate plus the rounding of summing the pieces
double slack(const QuadResult<double>& r) {
    return r.error + 4.0 * r.intervals * std::numeric_limits<double>::epsilon() * std::abs(r.value);
}

} // namespace

Bracketed laplace_weighted(const TabulatedFunction& tab, double theta, double lambda, double tail_value) {
    if (!(theta > 0.0)) throw domain_error("laplace_weighted: theta must be positive");
    if (!(lambda > 0.0)) throw domain_error("laplace_weighted: lambda must be positive");
    if (tab.grid_start() > 0.0) throw domain_error("laplace_weighted: table must start at 0");
    const double S = tab.grid_end();
    const double log_norm = theta * std::log(lambda) - std::lgamma(theta);

    // the exponential is folded into the integrand; s^{theta-1} is the left endpoint weight
    auto f = [&](double s) { return std::exp(log_norm - lambda * s) * tab(s); };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    opt.max_intervals = 20000;
    auto main = integrate<double>(f, 0.0, S, EndpointWeights{theta - 1.0, 0.0}, opt, integer_breaks(0.0, S));
    const double tail_bound = tail_value * gamma_q(theta, lambda * S);
    const double lower = main.value - slack(main);
    const double upper = main.value + slack(main) + tail_bound;
    return Bracketed{main.value + 0.5 * tail_bound, lower, upper};
}

Bracketed laplace_deficit(const TabulatedFunction& tab, double theta, double lambda) {
    if (!(theta > -1.0)) throw domain_error("laplace_deficit: theta must exceed -1");
    if (!(lambda > 0.0)) throw domain_error("laplace_deficit: lambda must be positive");
    if (tab.grid_start() > 1.0 || tab.grid_end() <= 1.0) throw domain_error("laplace_deficit: table must cover [1, S]");
    const double S = tab.grid_end();
    const double log_norm = theta * std::log(lambda);
    auto f = [&](double s) { return std::exp(log_norm + (theta - 1.0) * std::log(s) - lambda * s) * (tab(s) - 1.0); };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    opt.max_intervals = 20000;
    auto main = integrate<double>(f, 1.0, S, EndpointWeights{}, opt, integer_breaks(1.0, S));
    // lambda^theta int_S^inf s^{theta-1} e^{-lambda s} ds = Gamma(theta, lambda S)
    double tail_mass;
    if (theta > 1.0) {
        tail_mass = std::exp(std::lgamma(theta)) * gamma_q(theta, lambda * S);
    } else {
        tail_mass = upper_incomplete_gamma(theta, lambda * S);
    }
    const double rho_end = tab(S);
    const double lower = main.value - slack(main) - tail_mass;
    const double upper = main.value + slack(main) + (rho_end - 1.0) * tail_mass;
    return Bracketed{main.value + 0.5 * (rho_end - 2.0) * tail_mass, lower, upper};
}

} // namespace pdpp
