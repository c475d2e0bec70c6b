#pragma once

#include <vector>

#include "pdpp/tabulated.hpp"

namespace pdpp {

/// Uniform march grid on [0, s_max]; 1/h must be an integer.
struct MarchGrid {
    double s_max = 4.0;
    double h = 1.0 / 512.0;
};

/// Product-integration march for
///   (s-1)^theta rho(s-1) + int_{s-1}^s (s-t)^{-alpha} t^theta d rho(t) = 0,  s > 1,  rho = 1 on [0, 1].
/// The equation is solved in the form divided by s^theta. On a unit interval [J, J+1) where the density of
/// d rho behaves like (t-J)^{theta+J alpha-1} with a negative exponent, cells carry that profile instead of a constant.
/// Values in `known` (nodes 0, 1, ... of the grid) are taken as given and the march starts after them.
TabulatedFunction volterra_march(double alpha, double theta, MarchGrid grid, const std::vector<double>& known = {});

/// Product-integration march for s^theta rho(s) = theta int_{s-1}^s t^{theta-1} rho(t) dt (s > 1), rho = 1 on [0, 1],
/// with rho piecewise linear, exact kernel mass per cell, and one Richardson extrapolation step from the
/// h and h/2 solutions.
TabulatedFunction renewal_march(double theta, MarchGrid grid);

} // namespace pdpp
