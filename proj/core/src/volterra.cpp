#include "pdpp/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdpp/errors.hpp"
#include "pdpp/quadrature.hpp"

namespace pdpp {
namespace {

long cells_per_unit(double h) {
    if (!(h > 0.0 && h <= 1.0)) throw domain_error("march grid: step must lie in (0, 1]");
    const double inv = 1.0 / h;
    const long n1 = std::lround(inv);
    if (std::abs(static_cast<double>(n1) - inv) > 1e-9 * inv) throw domain_error("march grid: 1/h must be an integer");
    return n1;
}

long node_count(double s_max, double h) {
    if (!(s_max >= 1.0)) throw domain_error("march grid: s_max must be at least 1");
    return static_cast<long>(std::ceil(s_max / h - 1e-9));
}

// int_0^1 e^{lu} du and int_0^1 u e^{lu} du
void exp_moments(double l, double& m0, double& m1) {
    if (std::abs(l) < 1e-4) {
        m0 = 1.0 + l / 2.0 + l * l / 6.0 + l * l * l / 24.0;
        m1 = 0.5 + l / 3.0 + l * l / 8.0 + l * l * l / 30.0;
        return;
    }
    const double e = std::exp(l);
    m0 = std::expm1(l) / l;
    m1 = (e * (l - 1.0) + 1.0) / (l * l);
}

// product-integration march on the grid with N1 cells per unit length, N cells in total:
// rho piecewise linear against the kernel (t/s)^{theta-1}
std::vector<double> renewal_product(double theta, long n1, long n) {
    const double h = 1.0 / static_cast<double>(n1);
    std::vector<double> rho(static_cast<std::size_t>(n + 1), 1.0);
    std::vector<double> log_t(static_cast<std::size_t>(n + 1), 0.0);
    for (long j = 1; j <= n; ++j) log_t[j] = std::log(static_cast<double>(j) * h);
    // cell j = [t_j, t_{j+1}]: the exact kernel mass K(t_j) t_j expm1(theta dlog) / theta, split between
    // rho_j and rho_{j+1} by the log-linear fit of the kernel
    std::vector<double> w_left(static_cast<std::size_t>(n), 0.0), w_right(static_cast<std::size_t>(n), 0.0);
    for (long j = n1; j < n; ++j) {
        const double dlog = log_t[j + 1] - log_t[j];
        double m0 = 0.0, m1 = 0.0;
        exp_moments((theta - 1.0) * dlog, m0, m1);
        const double mass = static_cast<double>(j) * h * std::expm1(theta * dlog) / theta;
        w_left[j] = mass * (1.0 - m1 / m0);
        w_right[j] = mass * m1 / m0;
    }
    for (long i = n1 + 1; i <= n; ++i) {
        const double s = static_cast<double>(i) * h;
        const double log_s = log_t[i];
        double head = 0.0;
        long j0 = i - n1;
        if (j0 < n1) {
            head = std::exp(-theta * log_s) - std::exp(theta * (std::log(s - 1.0) - log_s));
            j0 = n1;
        }
        double acc = 0.0;
        for (long j = j0; j < i - 1; ++j) {
            const double k = std::exp((theta - 1.0) * (log_t[j] - log_s));
            acc += k * (w_left[j] * rho[j] + w_right[j] * rho[j + 1]);
        }
        const double k_last = std::exp((theta - 1.0) * (log_t[i - 1] - log_s));
        acc += k_last * w_left[i - 1] * rho[i - 1];
        const double c = theta / s;
        rho[i] = (head + c * acc) / (1.0 - c * k_last * w_right[i - 1]);
    }
    return rho;
}

} // namespace

TabulatedFunction volterra_march(double alpha, double theta, MarchGrid grid, const std::vector<double>& known) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("volterra_march: requires 0 < alpha < 1");
    if (!(theta > -alpha)) throw domain_error("volterra_march: requires theta > -alpha");
    const long n1 = cells_per_unit(grid.h);
    const long n = node_count(grid.s_max, grid.h);
    const double h = 1.0 / static_cast<double>(n1);
    const double one_minus_a = 1.0 - alpha;

    std::vector<double> rho(static_cast<std::size_t>(n + 1), 1.0);
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);

    // exactly integrated kernel, K[j] = (1/h) int over the cell at lag j
    std::vector<double> K(static_cast<std::size_t>(n1 + 1), 0.0);
    for (long j = 1; j <= n1; ++j) {
        K[j] = (std::pow(j * h, one_minus_a) - std::pow((j - 1) * h, one_minus_a)) / (one_minus_a * h);
    }
    std::vector<double> log_mid(static_cast<std::size_t>(n), 0.0);
    for (long k = 0; k < n; ++k) log_mid[k] = std::log((static_cast<double>(k) + 0.5) * h);
    std::vector<double> down(static_cast<std::size_t>(n), 1.0);
    for (long k = 1; k < n; ++k) down[k] = std::exp(theta * (log_mid[k - 1] - log_mid[k]));

    // profile exponent for the cell at index k, or NaN for a plain cell
    std::vector<double> shape(static_cast<std::size_t>(n), std::nan(""));
    for (long J = 1; J * n1 < n; ++J) {
        const double e = theta + J * alpha - 1.0;
        if (!(e < 0.0)) continue;
        for (long i = 0; i < (n1 + 3) / 4 && J * n1 + i < n; ++i) shape[J * n1 + i] = e;
    }
    auto cell_anchor = [&](long k) { return std::floor(static_cast<double>(k) / static_cast<double>(n1)); };

    const GaussRule& legendre = gauss_jacobi_rule(8, 0.0, 0.0);
    QuadOptions qopt;
    qopt.rel_tol = 1e-11;
    qopt.abs_tol = 1e-300;

    auto weight = [&](long step, long k, double log_s) -> double {
        const long lag = step - k;
        if (std::isnan(shape[k])) return K[lag] * (theta == 0.0 ? 1.0 : std::exp(theta * (log_mid[k] - log_s)));
        const double e = shape[k];
        const double J = cell_anchor(k);
        const double lo = static_cast<double>(k) * h, hi = lo + h, s = static_cast<double>(step) * h;
        const bool left_sing = (k % n1) == 0;
        const bool right_sing = lag == 1;
        auto f = [&](double t) {
            double y = std::exp(theta * (std::log(t) - log_s));
            if (!left_sing) y *= std::pow(t - J, e);
            if (!right_sing) y *= std::pow(s - t, -alpha);
            return y;
        };
        double num = 0.0;
        if (left_sing || right_sing) {
            num = integrate<double>(f, lo, hi, EndpointWeights{left_sing ? e : 0.0, right_sing ? -alpha : 0.0}, qopt)
                      .value;
        } else {
            for (std::size_t q = 0; q < legendre.nodes.size(); ++q) num += legendre.weights[q] * f(lo + h * legendre.nodes[q]);
            num *= h;
        }
        const double den = (std::pow(hi - J, e + 1.0) - std::pow(lo - J, e + 1.0)) / (e + 1.0);
        return num / den;
    };

    const long first = std::max(n1 + 1, std::min(static_cast<long>(known.size()), n + 1));
    for (long i = 1; i < first && i < static_cast<long>(known.size()); ++i) {
        rho[i] = known[i];
        d[i - 1] = rho[i] - rho[i - 1];
    }
    for (long i = first; i <= n; ++i) {
        const double s = static_cast<double>(i) * h;
        const double log_s = std::log(s);
        const double delayed = std::exp(theta * std::log1p(-1.0 / s)) * rho[i - n1];
        double acc = 0.0;
        // exp(theta (log_mid[k] - log_s)) by ratios, from the newest cell backwards
        double f = theta == 0.0 || i < 2 ? 1.0 : std::exp(theta * (log_mid[i - 2] - log_s));
        for (long k = i - 2; k >= std::max(i - n1, n1); --k) {
            if (d[k] != 0.0) acc += d[k] * (std::isnan(shape[k]) ? K[i - k] * f : weight(i, k, log_s));
            if (theta != 0.0) f *= down[k];
        }
        const double w_new = weight(i, i - 1, log_s);
        if (!(w_new > 0.0) || !std::isfinite(w_new))
            throw numerical_error("volterra_march: singular step at s=" + std::to_string(s));
        d[i - 1] = -(delayed + acc) / w_new;
        rho[i] = rho[i - 1] + d[i - 1];
    }
    return TabulatedFunction(0.0, h, std::move(rho), Interp::cubic_monotone);
}

TabulatedFunction renewal_march(double theta, MarchGrid grid) {
    if (!(theta > 0.0)) throw domain_error("renewal_march: requires theta > 0");
    const long n1 = cells_per_unit(grid.h);
    const long n = node_count(grid.s_max, grid.h);
    const std::vector<double> coarse = renewal_product(theta, n1, n);
    const std::vector<double> fine = renewal_product(theta, 2 * n1, 2 * n);
    std::vector<double> rho(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) rho[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
    return TabulatedFunction(0.0, 1.0 / static_cast<double>(n1), std::move(rho), Interp::cubic_monotone);
}

} // namespace pdpp
