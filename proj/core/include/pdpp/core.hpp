#pragma once

#include <complex>
#include <vector>

#include "pdpp/errors.hpp"
#include "pdpp/params.hpp"
#include "pdpp/special.hpp"

namespace pdpp {

/// log c_{n,alpha,theta}; c_0 = 1 and c_n = theta^n when alpha = 0.
double log_c(int n, const PDParams& p);

/// Checks c_{m+n,alpha,theta} = c_{m,alpha,theta} c_{n,alpha,theta+alpha m} in log space to 1e-10.
bool c_recurrence_check(int m, int n, const PDParams& p);

/// C_alpha = alpha / Gamma(1 - alpha).
double C_alpha(double alpha);

/// Generating function R_{alpha,theta}(u) on the principal branch.
std::complex<double> R(const PDParams& p, std::complex<double> u);

/// R_{m,alpha,theta}(u) as the path integral along the segment [0, u].
std::complex<double> R_m(int m, const PDParams& p, std::complex<double> u);

/// Taylor coefficients r_n = Gamma(theta + alpha n) c_n / n! of R.
struct RCoefficients {
    PDParams params;
    std::vector<double> coeffs;
};

RCoefficients R_coefficients(const PDParams& p, int n_max);

} // namespace pdpp
