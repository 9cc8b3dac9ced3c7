// Small numerical kernels shared by the domain and speed routines.

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace orbspeed {

// Adaptive Simpson quadrature with the classical embedded error estimate
// |S2 - S1| / 15.  Relative tolerance on the whole integral; throws if the
// evaluation budget is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-8, long max_evals = 10000000L);

// Root of f on the bracket [lo, hi] (f(lo), f(hi) of opposite signs) by
// Newton steps from df, falling back to bisection whenever the step leaves
// the bracket.  Converges to rel_tol on x.
double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double rel_tol = 1e-12);

// Golden-section minimum of a unimodal f on [a, b]; returns (x, f(x)).
std::pair<double, double> golden_section_min(const std::function<double(double)>& f,
                                             double a, double b, double x_tol = 1e-10);

// Least squares y ~ slope*x + intercept; returns {slope, intercept}.
std::pair<double, double> fit_affine(const std::vector<double>& x,
                                     const std::vector<double>& y);

// Least squares y ~ c * x through the origin.
double fit_scale(const std::vector<double>& x, const std::vector<double>& y);

} // namespace orbspeed
