#pragma once

#include <functional>

namespace fbs {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7/K15) bisection to absolute tolerance. Nodes are
/// interior, so integrable endpoint singularities are never evaluated.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_intervals = 4000);

/// Integral of f over [a,b] where f behaves like C (x-a)^{alpha_a} near a and
/// C (b-x)^{alpha_b} near b, alphas > -1 (0 when regular). The interval is
/// split at its midpoint and each half is mapped by the power substitution
/// w = (edge distance)^{1+alpha}, which absorbs the leading algebraic factor
/// exactly before the adaptive rule runs.
QuadResult integrate_endpoint_power(const std::function<double(double)>& f, double a, double b,
                                    double alpha_a, double alpha_b, double abs_tol);

/// Integral of f over [a, +inf) via the inversion x = a - 1 + 1/w, w in (0,1].
/// f must decay strictly faster than x^{-2}.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol);

}  // namespace fbs
