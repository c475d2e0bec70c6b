#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pdpp/nu.hpp"
#include "pdpp/params.hpp"
#include "pdpp/report.hpp"
#include "pdpp/sampler.hpp"
#include "pdpp/stats.hpp"

namespace pdpp {

/// Characteristic function of nu.
std::complex<double> cf_nu(const NuSpec& nu, double t);

/// Monte Carlo settings shared by the transform checks.
struct TransformOptions {
    long replicates = 100'000;
    std::uint64_t seed = 1;
    /// stop each draw of M once the unallocated mass is below eps
    double eps = 1e-4;
    TailPolicy tail = TailPolicy::conditional_mean;
    int workers = 0;
};

/// Both sides of a transform identity on a grid of evaluation points.
struct TransformCheckReport {
    std::string identity;
    std::vector<double> grid;
    std::vector<MCEstimate> lhs;
    std::vector<double> rhs;
    double max_gap_in_se = 0.0;

    ExperimentReport to_report(const PDParams& p, const TransformOptions& opt, double n_se = 3.5) const;
};

/// Right side of the identity at real z above the support of nu:
/// (int nu(dx)(z-x)^alpha)^{-theta/alpha}, exp(-theta int nu(dx) log(z-x)) for alpha = 0,
/// and (1/alpha) log int nu(dx)(z-x)^alpha for theta = 0.
double mk_rhs(const PDParams& p, const NuSpec& nu, double z);

/// E(z-M)^{-theta} (E log(z-M) when theta = 0) by Monte Carlo against mk_rhs.
TransformCheckReport mk_identity_check(const PDParams& p, const NuSpec& nu, const std::vector<double>& z_grid,
                                       const TransformOptions& opt = {});

/// Certified majorant B with |psi_nu(x) - 1| <= min(2, B |x|^gamma), gamma in (alpha, 1].
struct CfIncrementBound {
    double coefficient = 0.0;
    double gamma = 1.0;
    double operator()(double x) const;
};

CfIncrementBound cf_increment_bound(const NuSpec& nu, double alpha);

struct CfSeriesResult {
    std::complex<double> value;
    /// bound on the omitted terms n > n_max
    double remainder_bound = 0.0;
    /// quadrature error estimate of the computed terms
    double quadrature_error = 0.0;
    std::vector<std::complex<double>> terms;
};

/// Partial sum through n_max <= 3 of the series for the characteristic function of M.
CfSeriesResult cf_series(const PDParams& p, const NuSpec& nu, double t, int n_max = 3);

/// Empirical characteristic function of M at t, with the standard error of |difference|.
struct EmpiricalCf {
    std::complex<double> value;
    double se_re = 0.0;
    double se_im = 0.0;
};

std::vector<EmpiricalCf> empirical_cf(const PDParams& p, const NuSpec& nu, const std::vector<double>& t_grid,
                                      const TransformOptions& opt);

/// Two-sample KS between direct draws of M_{alpha,theta} nu and nested draws of
/// M_{beta,theta}(M_{alpha,-beta} nu); requires 0 < beta < alpha < 1, theta > -beta.
struct ComposeOptions {
    TransformOptions direct;
    /// truncation level of the direct draws, and the absolute error target of each nested term
    double abs_eps = 2e-4;
    double p_threshold = 1e-3;
};

ExperimentReport compose_check(double alpha, double beta, double theta, const NuSpec& nu,
                               const ComposeOptions& opt = {});

/// Gap between the empirical CF of M and psi_nu on t_grid; with expect_fixed the gap must stay under n_se SE,
/// otherwise it must exceed n_se SE somewhere on the grid.
ExperimentReport fixed_point_check(const PDParams& p, const NuSpec& nu, const std::vector<double>& t_grid,
                                   const TransformOptions& opt, bool expect_fixed = true, double n_se = 3.5);

/// Both sides of the membership identity for -alpha < theta <= 0 and nu on [0, inf):
/// (E(1+M/lambda)^{-theta} - 1)/theta, or -E log(1+M/lambda) at theta = 0.
TransformCheckReport p_theta_membership_check(const PDParams& p, const NuSpec& nu,
                                              const std::vector<double>& lambdas, const TransformOptions& opt = {});

/// Closed-form right side of the membership identity.
double membership_rhs(const PDParams& p, const NuSpec& nu, double lambda);

/// |quadrature - closed form| for the three kernel identities at real u > -1:
///   int s^{theta-1} e^{-s} e^{-us} ds = Gamma(theta)(1+u)^{-theta},
///   C_alpha int s^{-alpha-1} e^{-s}(e^{-us} - 1) ds = 1 - (1+u)^alpha,
///   int s^{-1} e^{-s}(e^{-us} - 1) ds = -log(1+u).
double kernel_gap_gamma(double theta, double u);
double kernel_gap_stable(double alpha, double u);
double kernel_gap_log(double u);

} // namespace pdpp
