// Test-only oracles, kept independent of the library's integrators: the
// adaptive Simpson rule here shares no code with the Gauss-Kronrod path in
// core, so quadrature-backed results are cross-checked between two methods.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

namespace detail {

template <typename F>
double simpson_panel(F&& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double b, double eps, int depth,
                            double fa, double fm, double fb, double whole) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(f, a, m, fa, flm, fm);
  const double right = simpson_panel(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, 0.5 * eps, depth - 1, fa, flm, fm, left) +
         adaptive_simpson_rec(f, m, b, 0.5 * eps, depth - 1, fm, frm, fb, right);
}

}  // namespace detail

/// Adaptive Simpson integration with Richardson correction.
template <typename F>
double integrate(F&& f, double a, double b, double eps = 1e-12, int depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = detail::simpson_panel(f, a, b, fa, fm, fb);
  return detail::adaptive_simpson_rec(f, a, b, eps, depth, fa, fm, fb, whole);
}

/// Semi-infinite integral via r = a + t / (1 - t).
template <typename F>
double integrate_to_infinity(F&& f, double a, double eps = 1e-12) {
  return integrate(
      [&](double t) {
        const double om = 1.0 - t;
        return f(a + t / om) / (om * om);
      },
      0.0, 1.0 - 1e-12, eps);
}

inline double exponential_integral_e1(double x) {
  // E1(x) = -Ei(-x); GCC ships std::expint (Ei).
  return -std::expint(-x);
}

inline double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double poisson_pmf(double lambda, int k) {
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

}  // namespace oracles
