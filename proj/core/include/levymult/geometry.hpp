#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace levymult {

using cplx = std::complex<double>;
using Vec = std::vector<double>;

inline constexpr double pi = std::numbers::pi;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_squared(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_squared(a)); }

inline Vec add(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scaled(std::span<const double> a, double c) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vec negated(std::span<const double> a) { return scaled(a, -1.0); }

inline void add_in_place(Vec& a, std::span<const double> b, double c = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

// 1 - cos(x) without cancellation for small x.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

inline cplx cis(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace levymult
