#include "pdpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdpp/errors.hpp"
#include "pdpp/special.hpp"

namespace pdpp {

double MCEstimate::z_score(double reference) const {
    const double gap = mean - reference;
    if (std_error > 0.0) return gap / std_error;
    if (gap == 0.0) return 0.0;
    return gap > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

bool MCEstimate::within(double reference, double n_se) const { return std::abs(z_score(reference)) < n_se; }

void RunningStats::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

void RunningStats::merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double n = static_cast<double>(n_ + o.n_);
    const double d = o.mean_ - mean_;
    mean_ += d * static_cast<double>(o.n_) / n;
    m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
    n_ += o.n_;
}

double RunningStats::variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

MCEstimate RunningStats::estimate() const {
    if (n_ < 2) throw domain_error("MCEstimate needs at least two replicates");
    return {mean_, std::sqrt(variance() / static_cast<double>(n_)), n_};
}

MCEstimate estimate_mean(const std::vector<double>& xs) {
    RunningStats rs;
    for (double x : xs) rs.add(x);
    return rs.estimate();
}

double sample_variance(const std::vector<double>& xs) {
    RunningStats rs;
    for (double x : xs) rs.add(x);
    return rs.variance();
}

double sample_covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw domain_error("sample_covariance: need equal sizes >= 2");
    double mx = 0.0, my = 0.0, c = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double dx = xs[i] - mx;
        mx += dx / n;
        my += (ys[i] - my) / n;
        c += dx * (ys[i] - my);
    }
    return c / static_cast<double>(xs.size() - 1);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw domain_error("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw domain_error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_pvalue(double d, double n_eff) {
    if (d <= 0.0) return 1.0;
    const double sn = std::sqrt(n_eff);
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double ks_two_sample_pvalue(double d, long n1, long n2) {
    const double n = static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(n1 + n2);
    return kolmogorov_pvalue(d, n);
}

double chi_square_statistic(const std::vector<double>& observed, const std::vector<double>& expected) {
    if (observed.size() != expected.size()) throw domain_error("chi_square_statistic: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw domain_error("chi_square_statistic: expected counts must be positive");
        const double d = observed[i] - expected[i];
        s += d * d / expected[i];
    }
    return s;
}

double chi_square_pvalue(double stat, double dof) { return gamma_q(0.5 * dof, 0.5 * stat); }

} // namespace pdpp
