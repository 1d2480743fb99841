#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "levymult/geometry.hpp"

namespace levymult {

/// Dense square complex matrix, row-major. Small d (the ambient dimension).
struct ComplexMatrix {
  int n = 0;
  std::vector<cplx> a;

  static ComplexMatrix zero(int n) { return {n, std::vector<cplx>(n * n, 0.0)}; }
  static ComplexMatrix identity(int n) {
    ComplexMatrix m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix from_parts(const std::vector<std::vector<double>>& re,
                                  const std::vector<std::vector<double>>& im) {
    const int n = int(re.size());
    ComplexMatrix m = zero(n);
    for (int i = 0; i < n; ++i) {
      if (int(re[i].size()) != n) throw std::invalid_argument("ragged matrix");
      for (int j = 0; j < n; ++j) {
        const double imag =
            im.empty() ? 0.0
                       : (int(im.size()) == n && int(im[i].size()) == n
                              ? im[i][j]
                              : throw std::invalid_argument("ragged matrix"));
        m.at(i, j) = {re[i][j], imag};
      }
    }
    return m;
  }

  cplx& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  const cplx& at(int i, int j) const { return a[std::size_t(i) * n + j]; }

  double max_asymmetry() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        s = std::max(s, std::abs(at(i, j) - at(j, i)));
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
  }

  /// Bilinear form (A xi, xi) without conjugation, xi real.
  cplx bilinear(std::span<const double> xi) const {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx row = 0.0;
      for (int j = 0; j < n; ++j) row += at(i, j) * xi[j];
      s += row * xi[i];
    }
    return s;
  }
};

/// Dense square real symmetric matrix, row-major.
struct RealMatrix {
  int n = 0;
  std::vector<double> a;

  static RealMatrix zero(int n) { return {n, std::vector<double>(n * n, 0.0)}; }
  static RealMatrix identity(int n) {
    RealMatrix m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  const double& at(int i, int j) const { return a[std::size_t(i) * n + j]; }

  double max_asymmetry() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        s = std::max(s, std::abs(at(i, j) - at(j, i)));
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }

  double bilinear(std::span<const double> xi) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += at(i, j) * xi[j];
      s += row * xi[i];
    }
    return s;
  }
};

}  // namespace levymult
