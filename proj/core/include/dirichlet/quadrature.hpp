#pragma once

#include <functional>

namespace dirichlet {

/// Adaptive Gauss-Legendre integration by panel bisection: a panel is
/// accepted when its 10-point rule and the sum over its two halves agree to
/// within tol (absolute, scaled by the panel's share of [a, b]).
double integrateGaussLegendre(const std::function<double(double)>& f, double a, double b,
                              double tol = 1e-10);

}  // namespace dirichlet
