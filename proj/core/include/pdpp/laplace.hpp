#pragma once

#include "pdpp/tabulated.hpp"

namespace pdpp {

/// A value with a guaranteed enclosure [lower, upper].
struct Bracketed {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// lambda^theta / Gamma(theta) int_0^inf s^{theta-1} e^{-lambda s} tab(s) ds for theta > 0.
/// The table covers [0, S]; beyond S the integrand is bracketed by 0 <= tab(s) <= tail_value.
Bracketed laplace_weighted(const TabulatedFunction& tab, double theta, double lambda, double tail_value);

/// lambda^theta int_1^inf s^{theta-1} e^{-lambda s} (tab(s) - 1) ds for theta > -1, with the tail beyond the
/// table end bracketed by -1 <= tab(s) - 1 <= tab(S) - 1.
Bracketed laplace_deficit(const TabulatedFunction& tab, double theta, double lambda);

} // namespace pdpp
