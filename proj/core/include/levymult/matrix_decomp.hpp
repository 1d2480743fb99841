#pragma once

#include <cstdint>

#include "levymult/levy_measure.hpp"
#include "levymult/matrix.hpp"
#include "levymult/symbol.hpp"

namespace levymult {

enum class DecompositionBranch { normal, split };

/// Constructive representation of a complex symmetric quadratic form as a
/// spherical measure with a bounded modulator:
///   sum_k (xi, a_k)^2 mass_k           = |xi|^2        (resolution of identity)
///   sum_k lambda_k (xi, a_k)^2 mass_k  = (A xi, xi) / scale.
///
/// When Re A and Im A commute the atoms are a joint real eigenbasis and
/// scale = s (the normalization factor, 1 for operator norm bound <= 1).
/// Otherwise the real and imaginary parts are decomposed separately on
/// half masses and the representation picks up another factor 2.
struct Decomposition {
  SphericalPair pair;
  DecompositionBranch branch = DecompositionBranch::normal;
  double scale = 1.0;
  double commutator_norm = 0.0;  // relative Frobenius norm of [Re A, Im A]

  /// The symbol (A xi, xi) / |xi|^2 rebuilt from the pair (scale folded in).
  Symbol reconstructed_symbol() const;
};

struct DecomposeOptions {
  std::uint64_t seed = 0x5cfd5cfd;  // for the generic joint-diagonalization mix
  double commutator_tol = 1e-10;    // branch threshold, relative Frobenius
  int max_retries = 8;
};

/// Lemma-style constructive decomposition of a complex symmetric matrix with
/// |A xi| <= bound * |xi| on real vectors. The bound is verified by a
/// spectral estimate plus random sampling (NormBoundViolated on failure);
/// A is scaled by the bound internally when bound > 1.
Decomposition decompose(const ComplexMatrix& A, double operator_norm_bound,
                        const DecomposeOptions& opts = {});

/// The fixed four-atom circle pair whose quadratic-form symbol is
/// e^{-2 i arg xi} exactly: uniform masses on angles {0, pi/2, pi/4, -pi/4}
/// with modulator values {2, -2, -2i, 2i}. Flagged relaxed (sup = 2).
SphericalPair beurling_ahlfors_atoms();

/// Symbol of the planar singular integral with symbol e^{-2 i arg xi},
/// built from beurling_ahlfors_atoms().
Symbol beurling_ahlfors_symbol();

/// Fourier-coefficient obstruction report for planar pairs: any pair whose
/// quadratic-form symbol is e^{-2 i arg xi} must satisfy
///   (1/4) int e^{2is} phi(s) mu(ds) = (1/2) int mu(ds),
/// which forces sup |phi| >= 2.
struct CertificateReport {
  bool reproduces_target = false;  // symbol == e^{-2 i arg xi} on a 360 grid
  double max_symbol_deviation = 0.0;
  cplx forced_lhs;                 // (1/4) int e^{2is} phi mu
  double forced_rhs = 0.0;         // (1/2) int mu
  double coefficient_residual = 0.0;
  double max_modulator = 0.0;
  double implied_lower_bound = 0.0;  // |int e^{2is} phi mu| / int mu
};

CertificateReport c2_certificate(const SphericalPair& pair);

}  // namespace levymult
