#include "pdpp/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace pdpp {
namespace {

// Three-term recurrence of the monic Jacobi polynomials for (1-x)^a (1+x)^b on [-1, 1].
void jacobi_recurrence(int n, double a, double b, std::vector<double>& diag, std::vector<double>& offsq) {
    diag.assign(n, 0.0);
    offsq.assign(n, 0.0);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 0) {
            diag[k] = (b - a) / (ab + 2.0);
        } else {
            diag[k] = (b * b - a * a) / (s * (s + 2.0));
        }
        if (k == 0) continue;
        if (k == 1) {
            offsq[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            offsq[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
    }
}

GaussRule build_rule(int n, double L, double R) {
    const double a = R;  // exponent of (1 - x)
    const double b = L;  // exponent of (1 + x)
    std::vector<double> diag, offsq;
    jacobi_recurrence(n + 1, a, b, diag, offsq);

    Eigen::VectorXd d(n), e(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) d(k) = diag[k];
    for (int k = 1; k < n; ++k) e(k - 1) = std::sqrt(offsq[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e.head(std::max(0, n - 1)), Eigen::EigenvaluesOnly);
    Eigen::VectorXd x = solver.eigenvalues();

    const double log_mu0 = (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                           std::lgamma(a + b + 2.0);
    const double p0 = std::exp(-0.5 * log_mu0);

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = x(i);
        double sum_sq = 0.0;
        for (int iter = 0; iter < 4; ++iter) {
            // orthonormal recurrence with derivative for Newton polishing
            double pm1 = 0.0, p = p0, dpm1 = 0.0, dp = 0.0;
            sum_sq = p * p;
            for (int k = 0; k < n; ++k) {
                const double sb_next = std::sqrt(offsq[k + 1]);
                const double sb = k > 0 ? std::sqrt(offsq[k]) : 0.0;
                const double pn = ((xi - diag[k]) * p - sb * pm1) / sb_next;
                const double dpn = (p + (xi - diag[k]) * dp - sb * dpm1) / sb_next;
                pm1 = p;
                p = pn;
                dpm1 = dp;
                dp = dpn;
                if (k + 1 < n) sum_sq += p * p;
            }
            const double step = p / dp;
            if (std::isfinite(step) && std::abs(step) < 1e-3) xi -= step;
            if (std::abs(step) < 1e-16) break;
        }
        // Christoffel weights from the polished node
        double pm1 = 0.0, p = p0;
        sum_sq = p * p;
        for (int k = 0; k + 1 < n; ++k) {
            const double sb_next = std::sqrt(offsq[k + 1]);
            const double sb = k > 0 ? std::sqrt(offsq[k]) : 0.0;
            const double pn = ((xi - diag[k]) * p - sb * pm1) / sb_next;
            pm1 = p;
            p = pn;
            sum_sq += p * p;
        }
        rule.nodes[i] = 0.5 * (1.0 + xi);
        rule.weights[i] = std::pow(0.5, L + R + 1.0) / sum_sq;
    }
    return rule;
}

struct RuleCache {
    std::shared_mutex mutex;
    std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> rules;
};

RuleCache& cache() {
    static RuleCache c;
    return c;
}

} // namespace

const GaussRule& gauss_jacobi_rule(int n, double left_exponent, double right_exponent) {
    if (n < 1) throw domain_error("gauss_jacobi_rule: n must be positive");
    if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
        throw domain_error("gauss_jacobi_rule: exponents must exceed -1");
    if (left_exponent == 0.0 && right_exponent == 0.0) {
        static const GaussRule lo = build_rule(detail::kLowOrder, 0.0, 0.0);
        static const GaussRule hi = build_rule(detail::kHighOrder, 0.0, 0.0);
        if (n == detail::kLowOrder) return lo;
        if (n == detail::kHighOrder) return hi;
    }
    auto key = std::make_tuple(n, left_exponent, right_exponent);
    RuleCache& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.rules.find(key);
        if (it != c.rules.end()) return *it->second;
    }
    auto rule = std::make_unique<GaussRule>(build_rule(n, left_exponent, right_exponent));
    std::unique_lock lock(c.mutex);
    auto [it, inserted] = c.rules.emplace(key, std::move(rule));
    return *it->second;
}

double quad(const std::function<double(double)>& f, double a, double b, EndpointWeights weights, double rel_tol) {
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    return integrate<double>(f, a, b, weights, opt).value;
}

} // namespace pdpp
