#pragma once

#include <functional>
#include <vector>

namespace levymult {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Bisects the interval with the largest Kronrod error estimate until the
/// global estimate meets the tolerance. Throws QuadratureFailure when the
/// interval budget is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

/// Integration over [a, +inf) via the rational map r = a + t/(1-t).
/// The integrand must decay fast enough for the mapped integral to converge.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a,
                                       const QuadratureOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

}  // namespace levymult
