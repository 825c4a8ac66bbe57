#pragma once

#include <functional>
#include <vector>

namespace kummer {

// Fixed-order Gauss-Legendre rule on [a, b]; n in {16, 32, 64, 128}.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n = 64);

// Adaptive bisected Gauss rule to the requested relative/absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, double abs_tol = 1e-15);

// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kummer
