#pragma once

namespace pdpp {

double log_gamma(double x);

/// Upper incomplete gamma function Gamma(s, x) for -1 < s <= 1 and x > 0.
double upper_incomplete_gamma(double s, double x);

/// Gamma(s, x) for any real s and x > 0 (recurrence below -1, Boost above 1).
double upper_incomplete_gamma_any(double s, double x);

/// T_alpha(x) = int_x^inf e^{-z} z^{-(alpha+1)} dz; T_0 is the exponential integral E_1.
double tail_integral_T(double alpha, double x);

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

/// log Gamma(x + d) - log Gamma(x), accurate when x is large compared with d.
double log_gamma_ratio(double x, double d);

} // namespace pdpp
