#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "levymult/geometry.hpp"
#include "levymult/levy_measure.hpp"
#include "levymult/matrix.hpp"
#include "levymult/quadrature.hpp"

namespace levymult {

enum class Provenance {
  general,
  quadratic_form,
  stable,
  marcinkiewicz,
  tempered,
  ratio,
  beurling_ahlfors,
  truncated,
};

std::string to_string(Provenance p);

/// Numerator and denominator of a ratio symbol as separately evaluable maps.
/// The denominator is non-negative and even; the numerator is dominated by
/// the denominator times the modulator sup-norm.
struct SymbolPieces {
  std::function<cplx(std::span<const double>)> numerator;
  std::function<double(std::span<const double>)> denominator;
};

/// An evaluable Fourier-multiplier symbol xi -> C with provenance metadata
/// and a declared sup-norm bound. Immutable and safe to evaluate from many
/// threads.
class Symbol {
 public:
  Symbol() = default;
  Symbol(std::function<cplx(std::span<const double>)> eval, int dim,
         Provenance provenance, double sup_bound,
         std::shared_ptr<const SymbolPieces> pieces = nullptr,
         double truncation_horizon = 0.0);

  cplx operator()(std::span<const double> xi) const { return eval_(xi); }

  int dimension() const { return dim_; }
  Provenance provenance() const { return provenance_; }
  double sup_bound() const { return sup_bound_; }
  /// Horizon u of a truncated symbol; 0 otherwise.
  double truncation_horizon() const { return truncation_horizon_; }
  const SymbolPieces* pieces() const { return pieces_.get(); }

 private:
  std::function<cplx(std::span<const double>)> eval_;
  int dim_ = 0;
  Provenance provenance_ = Provenance::general;
  double sup_bound_ = 1.0;
  std::shared_ptr<const SymbolPieces> pieces_;
  double truncation_horizon_ = 0.0;
};

/// The general ratio symbol
///   M(xi) = [ int (1-cos(xi,z)) phi dV + 1/2 sum (xi,theta)^2 varphi mu ]
///         / [ int (1-cos(xi,z))     dV + 1/2 sum (xi,theta)^2        mu ],
/// with M(xi) = 0 where the denominator vanishes. Jump integrals evaluate
/// per representation: direct sums (atomic), the closed-form
/// c_alpha |(xi,theta)|^alpha per spectral atom (stable), and adaptive radial
/// quadrature (polar products).
///
/// Zero convention: the denominator counts as zero when it is below 1e-14
/// times an a-priori bound on its magnitude at that xi; this makes the exact
/// zero set (and nothing else) land on the convention under floating point.
Symbol general_symbol(const LevyMeasure& V, const JumpModulator& phi,
                      const SphericalPair& pair,
                      const QuadratureOptions& quad = {});

/// general_symbol with mu = 0.
Symbol general_symbol(const LevyMeasure& V, const JumpModulator& phi,
                      const QuadratureOptions& quad = {});

/// general_symbol with V = 0 (pure second-order part).
Symbol pair_symbol(const SphericalPair& pair);

/// M(xi) = (A xi, xi) / (B xi, xi) with the bilinear (no conjugation)
/// pairing; 0 where the denominator vanishes. A must be symmetric and B real
/// symmetric nonnegative definite.
Symbol quadratic_form_symbol(const ComplexMatrix& A, const RealMatrix& B);

/// Symbol of the alpha-stable jump part with spectral measure sigma and
/// angular modulator: a ratio of |(xi,theta)|^alpha integrals. Positively
/// homogeneous of degree zero.
Symbol stable_symbol(double alpha, const SphericalPair& spectral);

/// The coordinate-direction special case |xi_j|^alpha / sum_k |xi_k|^alpha.
Symbol marcinkiewicz_symbol(double alpha, int j, int dim);

/// Ratio of ln(1 + (xi,theta)^{-2}) integrals over the spectral measure.
/// Atoms with (xi,theta) = 0 make both integrals diverge; the symbol value
/// is then the ratio of the modulated to plain masses of those atoms alone
/// (the limit of the ratio).
Symbol tempered_symbol(const SphericalPair& spectral);

/// M(xi) = int (1-cos(xi,z)) nu1 / int (1-cos(xi,z)) nu2 for nu1 <= nu2,
/// verified atom-wise or by radial-density comparison. Values lie in [0,1].
Symbol ratio_symbol(const LevyMeasure& nu1, const LevyMeasure& nu2,
                    const QuadratureOptions& quad = {});

/// Finite-horizon symbol
///   M_u(xi) = M(xi) * (1 - e^{2 u Re Psi(xi)}),
/// where M is the phi-modulated cosine ratio of the finite measure.
Symbol truncated_symbol(const LevyMeasure& V_finite, const JumpModulator& phi,
                        double u);

/// Normalizing constant of the stable radial integral,
///   c_alpha = int_0^inf (1 - cos s) s^{-1-alpha} ds,
/// computed by series below 1, adaptive quadrature on period blocks, and an
/// integration-by-parts tail.
double stable_cosine_constant(double alpha, const QuadratureOptions& quad = {});

struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<Vec> points;
  // deviation[i][j]: point i, epsilon j
  std::vector<std::vector<double>> deviation;
  std::vector<double> max_deviation;  // per epsilon
  double fitted_order = 0.0;          // log-log slope of max_deviation
};

struct SphereLimitOptions {
  int sample_points = 20;
  std::uint64_t seed = 20240601;
};

/// Checks the small-sphere limit: the cosine integral against
/// eps^{-2} delta_eps(dr) mu(dtheta) converges to the quadratic form
/// 1/2 sum (xi,theta)^2 varphi mu at rate eps^2.
ConvergenceReport sphere_limit_check(const SphericalPair& pair,
                                     const std::vector<double>& epsilons,
                                     const SphereLimitOptions& opts = {});

}  // namespace levymult
