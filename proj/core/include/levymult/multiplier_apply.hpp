#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "levymult/geometry.hpp"
#include "levymult/symbol.hpp"

namespace levymult {

/// Complex values on a uniform periodic grid over the centered box
/// [-L/2, L/2)^d with n points per axis (n a power of two, n >= 4).
/// Lattice frequencies are 2 pi k / L for k in [-n/2, n/2).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int dim, std::size_t n, double box_length);

  static GridFunction sample(int dim, std::size_t n, double box_length,
                             const std::function<cplx(const Vec&)>& f);

  int dimension() const { return dim_; }
  std::size_t points_per_axis() const { return n_; }
  double box_length() const { return length_; }
  double spacing() const { return length_ / double(n_); }
  std::size_t size() const { return values_.size(); }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  /// Physical coordinate of the flat index (row-major).
  Vec point(std::size_t flat) const;
  /// Lattice frequency of the flat index (wrapped to [-n/2, n/2)).
  Vec frequency(std::size_t flat) const;

  // Flat binary format: uint64 d, uint64 n, float64 L, then n^d (re, im)
  // float64 pairs in row-major order. Little-endian.
  void write_binary(std::ostream& out) const;
  static GridFunction read_binary(std::istream& in);
  void write_binary_file(const std::string& path) const;
  static GridFunction read_binary_file(const std::string& path);

  // CSV with one row per grid point (d <= 2): index columns, re, im.
  void write_csv(std::ostream& out) const;
  static GridFunction read_csv(std::istream& in);

 private:
  int dim_ = 0;
  std::size_t n_ = 0;
  double length_ = 0.0;
  std::vector<cplx> values_;
};

/// In-place d-dimensional radix-2 FFT with kernel e^{sign * 2 pi i j k / n}
/// per axis. No normalization; callers divide by size() on the inverse.
void fft(std::vector<cplx>& values, int dim, std::size_t n, int sign);

/// Samples of the symbol on the frequency lattice of g's grid.
std::vector<cplx> multiplier_table(const Symbol& M, const GridFunction& g);

/// apply with a precomputed lattice table (the hot path for repeated grids).
GridFunction apply_table(const std::vector<cplx>& table, const GridFunction& g);

/// The Fourier multiplier: forward transform, pointwise multiply by M on the
/// lattice, inverse transform. The zero frequency uses M(0) as defined by the
/// symbol's zero-denominator convention.
GridFunction apply(const Symbol& M, const GridFunction& g);

/// Riemann-sum L^p norm (sum |g|^p h^d)^{1/p}; p = inf gives the max modulus.
double lp_norm(const GridFunction& g, double p);

/// Continuum-convention transform values ghat(xi_k) = h^d sum_x e^{i(xi_k,x)} g(x)
/// on the frequency lattice, flat row-major indexing matching frequency().
std::vector<cplx> dft_physical(const GridFunction& g);

// ---------------------------------------------------------------------------
// Empirical operator norm
// ---------------------------------------------------------------------------

struct NormReport {
  double p = 2.0;
  double input_norm = 0.0;   // of the best test function found
  double output_norm = 0.0;
  double ratio = 0.0;        // a lower bound on the operator norm
  double bound = 0.0;        // p* - 1 = max(p-1, 1/(p-1))
  bool discretization_suspect = false;  // ratio above bound beyond tolerance
};

struct OpNormOptions {
  std::size_t n = 0;        // 0: pick by dimension (256 for d <= 2)
  double box_length = 2.0 * pi;
  int trials = 16;          // random search family size
  int power_iterations = 80;   // duality-map refinement sweeps
  int descent_iterations = 200;  // coordinate-descent budget
  std::uint64_t seed = 1;
  int threads = 0;
};

inline double burkholder_bound(double p) {
  return std::max(p - 1.0, 1.0 / (p - 1.0));
}

/// Maximizes |apply(M,g)|_p / |g|_p over a search family (lattice waves,
/// random trigonometric polynomials, modulated bumps and lacunary products)
/// followed by duality-map power iterations and coordinate-descent refinement
/// of Fourier coefficients. The result is a lower bound on the discretized
/// operator norm; it is reported next to p* - 1 and never clamped.
NormReport estimate_operator_norm(const Symbol& M, double p,
                                  const OpNormOptions& opts = {});

}  // namespace levymult
