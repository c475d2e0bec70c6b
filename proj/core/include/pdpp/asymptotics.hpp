#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pdpp/params.hpp"
#include "pdpp/report.hpp"
#include "pdpp/stats.hpp"

namespace pdpp {

/// beta_{alpha,theta} = log theta - (alpha + 1) log log theta - log Gamma(1 - alpha); theta > 1.
double beta_scale(const PDParams& p);

/// Limit CDF of the m-th largest Gumbel point: exp(-e^{-x}) sum_{k<m} e^{-kx}/k!, evaluated as Q(m, e^{-x}).
double gumbel_reference(int m, double x);

/// P(Z_1* <= x1, Z_2* <= x2) from the joint density exp(-z1 - z2 - e^{-z2}) on z1 > z2,
/// inner integral in closed form and the outer one by quadrature.
double gumbel_joint_cdf(double x1, double x2);

/// |rho_m(theta / (x + beta)) - gumbel_reference(m, x)|.
double gumbel_rho_gap(const PDParams& p, int m, double x);

struct LimitExperiment {
    enum class Rescale { gumbel, clt };

    PDParams params;
    Rescale rescale = Rescale::gumbel;
    /// gumbel: number of ranked points
    int m = 1;
    /// clt: power p, and p2 > alpha for the covariance pair (NaN to skip)
    double p = 2.0;
    double p2 = std::numeric_limits<double>::quiet_NaN();
    long replicates = 100'000;
    std::uint64_t seed = 1;
    int workers = 0;
    /// clt: tolerance on the standard deviation of the W_p tail error
    double w_tail_sd = 1e-2;
};

struct GumbelResult {
    /// KS distance of Z_i against gumbel_reference(i, .), i = 1..m
    std::vector<double> ks;
    /// sup distance of the empirical joint CDF of (Z_1, Z_2) on a grid (m >= 2, else NaN)
    double joint_distance = std::numeric_limits<double>::quiet_NaN();
    long uncertified = 0;
    double mean_sticks = 0.0;
    /// rescaled draws, replicate-major (m per replicate)
    std::vector<double> z;
};

GumbelResult gumbel_experiment(const LimitExperiment& exp);

/// sigma^2_{alpha,p} = Gamma(1-alpha)Gamma(2p-alpha)/Gamma(p-alpha)^2 + alpha - p^2.
double sigma2(const PDParams& p, double power);
double sigma2(double alpha, double power);

/// |sigma^2 - [(1-alpha)Var(Gamma(1-alpha)Y^{p-1}/Gamma(p-alpha)) + alpha(p-1)^2/(1-alpha)]| with the
/// variance of Y (density z^{1-alpha}e^{-z}/Gamma(2-alpha)) computed by quadrature.
double sigma2_identity_gap(const PDParams& p, double power);

/// Limit covariance C(p, q) = Gamma(1-alpha)Gamma(p+q-alpha)/(Gamma(p-alpha)Gamma(q-alpha)) + alpha - pq.
double limit_covariance(double alpha, double p, double q);

/// Limit of theta^{p+q-1} Cov(H_p, H_q):
/// Gamma(p+q-alpha)/Gamma(1-alpha) + Gamma(p-alpha)Gamma(q-alpha)(alpha - pq)/Gamma(1-alpha)^2.
double limit_scaled_covariance(double alpha, double p, double q);

/// theta^{2p-1} Var(H_p) from the exact finite-theta covariance.
double scaled_finite_variance(const PDParams& p, double power);

struct CltResult {
    MCEstimate mean;
    double variance = 0.0;
    double variance_se = 0.0;
    double sigma2 = 0.0;
    double ks = 0.0;
    /// for p2: sample covariance of (W_p, W_p2), its SE and C(p, p2)
    double covariance = std::numeric_limits<double>::quiet_NaN();
    double covariance_se = std::numeric_limits<double>::quiet_NaN();
    double covariance_reference = std::numeric_limits<double>::quiet_NaN();
    /// theta^{p-1} H_p with its SE, and the exact finite-theta mean theta^{p-1} h_p
    MCEstimate scaled_h;
    double scaled_h_reference = 0.0;
    long uncertified = 0;
    double mean_sticks = 0.0;
    std::vector<double> w;
};

CltResult clt_experiment(const LimitExperiment& exp);

/// One bin (n = 1) or cell (n = 2) of the correlation estimator.
struct CorrelationCell {
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
    /// mean count per unit volume, with its standard error
    double estimate = 0.0;
    double se = 0.0;
    /// int_cell q_n / volume
    double reference = 0.0;
};

struct CorrelationResult {
    int n = 1;
    int bins = 0;
    double v_min = 0.0;
    /// row-major over (bin1, bin2) for n = 2
    std::vector<CorrelationCell> cells;
    long uncertified = 0;
    double mean_sticks = 0.0;

    const CorrelationCell& cell(int i, int j = 0) const { return cells[static_cast<std::size_t>(i * (n == 2 ? bins : 1) + j)]; }
};

inline constexpr long kCorrelationStickCap = 100'000'000;

/// Factorial-moment estimator of the n-th correlation measure on a uniform grid over [v_min, 1].
/// Each replicate draws sticks until the residual is below v_min (at most kCorrelationStickCap).
CorrelationResult empirical_correlation(const PDParams& p, int n, int bins, double v_min, long replicates,
                                        std::uint64_t seed, int workers = 0);

/// int over [lo, hi] of q_1.
double q1_integral(const PDParams& p, double lo, double hi);
/// int over [lo1, hi1] x [lo2, hi2] of q_2.
double q2_integral(const PDParams& p, double lo1, double hi1, double lo2, double hi2);

/// Reports with the default thresholds of the verification suites.
ExperimentReport gumbel_report(const LimitExperiment& exp, const GumbelResult& r, double ks_threshold,
                               double joint_threshold = 0.03);
ExperimentReport clt_report(const LimitExperiment& exp, const CltResult& r);

} // namespace pdpp
