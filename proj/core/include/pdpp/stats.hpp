#pragma once

#include <functional>
#include <vector>

namespace pdpp {

/// Monte Carlo estimate of a mean.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;

    /// (mean - reference) / std_error; infinite when the standard error vanishes and the gap does not.
    double z_score(double reference) const;
    bool within(double reference, double n_se) const;
};

/// Welford accumulator.
class RunningStats {
public:
    void add(double x);
    void merge(const RunningStats& other);
    long count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const;
    MCEstimate estimate() const;

private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

MCEstimate estimate_mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double sample_covariance(const std::vector<double>& xs, const std::vector<double>& ys);

double normal_cdf(double x);

/// sup |F_n - F| for the sample against a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Asymptotic Kolmogorov p-value for statistic d at effective size n_eff, with the Stephens correction.
double kolmogorov_pvalue(double d, double n_eff);
double ks_two_sample_pvalue(double d, long n1, long n2);

double chi_square_statistic(const std::vector<double>& observed, const std::vector<double>& expected);
/// P(chi2_dof > stat).
double chi_square_pvalue(double stat, double dof);

} // namespace pdpp
