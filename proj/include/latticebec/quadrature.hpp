#pragma once

#include <functional>
#include <vector>

namespace latbec {

// Adaptive Gauss-Kronrod (G7/K15) integration with recursive bisection.
// abs_tol is an absolute tolerance on the whole interval; panels are split
// until the local K15-G7 discrepancy prorated by panel width is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

// Trapezoid rule on a uniform periodic grid (first point included, period
// endpoint excluded): h * sum(values).  Accumulates in long double to keep
// the summation error well under the 1e-8 slacks used by the energy
// comparisons.
double periodic_trapezoid(const std::vector<double>& values, double h);

// Plain trapezoid on a uniform grid including both endpoints.
double trapezoid(const std::vector<double>& values, double h);

} // namespace latbec
