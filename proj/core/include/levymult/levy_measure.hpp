#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "levymult/geometry.hpp"
#include "levymult/quadrature.hpp"

namespace levymult {

// ---------------------------------------------------------------------------
// Jump intensity measures
// ---------------------------------------------------------------------------

struct Atom {
  Vec z;
  double mass = 0.0;
};

struct SpectralAtom {
  Vec theta;  // unit vector
  double mass = 0.0;
};

/// Radial factor of a polar-product measure.
struct PointMassRadial {
  double r = 1.0;
  double mass = 1.0;
};
/// rho(dr) = e^{-r} dr / r (infinite total mass, integrable jump part).
struct ExpOverRRadial {};

using RadialMeasure = std::variant<PointMassRadial, ExpOverRRadial>;

struct AtomicMeasure {
  int dim = 0;
  std::vector<Atom> atoms;
};

struct PolarProductMeasure {
  int dim = 0;
  RadialMeasure radial;
  std::vector<SpectralAtom> spectral;
};

struct StablePolarMeasure {
  int dim = 0;
  double alpha = 1.0;  // in (0, 2)
  std::vector<SpectralAtom> spectral;
};

/// A jump-intensity measure in one of three representations: a finite list
/// of atoms, a polar product rho(dr) sigma(dtheta), or the alpha-stable
/// r^{-1-alpha} dr sigma(dtheta) form.
///
/// Construction validates: no atom at the origin, strictly positive masses,
/// unit-norm spectral directions (within 1e-12), alpha in (0, 2). The jump
/// integrability condition (finite integral of min(|z|^2, 1)) then holds for
/// every representable measure; validate() reports the moments.
class LevyMeasure {
 public:
  static LevyMeasure atomic(int dim, std::vector<Atom> atoms);
  static LevyMeasure polar_product(int dim, RadialMeasure radial,
                                   std::vector<SpectralAtom> spectral);
  static LevyMeasure stable_polar(int dim, double alpha,
                                  std::vector<SpectralAtom> spectral);

  int dimension() const { return dim_; }

  bool is_atomic() const { return std::holds_alternative<AtomicMeasure>(rep_); }
  bool is_polar_product() const {
    return std::holds_alternative<PolarProductMeasure>(rep_);
  }
  bool is_stable_polar() const {
    return std::holds_alternative<StablePolarMeasure>(rep_);
  }

  const AtomicMeasure& as_atomic() const;
  const PolarProductMeasure& as_polar_product() const;
  const StablePolarMeasure& as_stable_polar() const;

  /// Total mass; +inf for the stable and exp-over-r radial forms.
  double total_mass() const;

  /// The integral of min(|z|^2, 1), used as the natural magnitude scale of
  /// cosine integrals against this measure.
  double jump_scale() const;

 private:
  using Rep = std::variant<AtomicMeasure, PolarProductMeasure, StablePolarMeasure>;
  explicit LevyMeasure(Rep rep, int dim) : rep_(std::move(rep)), dim_(dim) {}
  Rep rep_;
  int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Jump modulators (the bounded weight applied to jumps)
// ---------------------------------------------------------------------------

/// Bounded complex weight on jumps: a constant, a table indexed by the atoms
/// of an atomic measure, or a table indexed by the spectral atoms of a polar
/// form (constant in the radial variable). Construction rejects sup-norm
/// above 1.
class JumpModulator {
 public:
  enum class Kind { constant, table_on_atoms, radial_angular };

  static JumpModulator constant(cplx value);
  static JumpModulator table_on_atoms(std::vector<cplx> values);
  static JumpModulator radial_angular(std::vector<cplx> values);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }

  /// Value on the idx-th atom (atomic) or spectral atom (polar forms).
  cplx at(std::size_t idx) const;

  std::size_t table_size() const { return values_.size(); }
  double sup_norm() const;

 private:
  JumpModulator(Kind kind, std::vector<cplx> values);
  Kind kind_;
  std::vector<cplx> values_;  // single entry when constant
};

// ---------------------------------------------------------------------------
// Spherical measure / modulator pairs (second-order part)
// ---------------------------------------------------------------------------

/// Finite measure on the unit sphere with a per-atom complex modulator.
/// Modulator values are bounded by 1, or by 2 when the pair is flagged
/// relaxed (matrix decompositions of non-normal forms need the slack).
/// An empty pair represents the zero measure.
struct SphericalPair {
  int dim = 0;
  std::vector<SpectralAtom> atoms;
  std::vector<cplx> modulator;
  bool relaxed = false;

  static SphericalPair make(int dim, std::vector<SpectralAtom> atoms,
                            std::vector<cplx> modulator, bool relaxed = false);
  static SphericalPair zero(int dim) { return SphericalPair{dim, {}, {}, false}; }

  bool empty() const { return atoms.empty(); }
  double total_mass() const;
  double modulator_sup() const;
};

/// Midpoint discretization of the Lebesgue measure on the unit circle:
/// n atoms at angles (j + 1/2) * 2 pi / n, each of mass 2 pi / n.
/// The modulator is sampled from phi(angle).
SphericalPair lebesgue_circle(int n, const std::function<cplx(double)>& phi,
                              bool relaxed = false);

/// Unit masses on the coordinate directions of R^d.
SphericalPair coordinate_directions(int dim, std::vector<cplx> modulator,
                                    bool relaxed = false);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct ValidationReport {
  double small_jump_moment = 0.0;  // integral of |z|^2 over |z| <= 1
  double tail_mass = 0.0;          // mass of {|z| > 1}
  bool integrable = false;
  std::string detail;
};

/// Checks the jump integrability condition and reports the small-jump second
/// moment and the tail mass. The |z| <= 1 boundary counts as a small jump.
ValidationReport validate(const LevyMeasure& measure,
                          const QuadratureOptions& quad = {});

struct SymmetrizeResult {
  LevyMeasure symmetric;           // the even part, atoms paired with reflections
  JumpModulator modulator_star;    // table on the symmetric atoms
  std::vector<double> k;           // antisymmetric density dV~/dV. per atom
};

/// Splits an atomic measure into its even part and rewrites the modulator so
/// that cosine integrals are preserved:
///   integral of [1-cos(xi,z)] phi dV == integral of [1-cos(xi,z)] phi* dV.
/// for every xi, with |phi*| <= 1 whenever |phi| <= 1. Non-atomic inputs are
/// rejected (UnsupportedRepresentation).
SymmetrizeResult symmetrize(const LevyMeasure& measure,
                            const JumpModulator& phi);

/// Characteristic exponent of a finite jump measure,
///   Psi(xi) = integral of [e^{i(xi,z)} - 1] nu(dz).
class LevyExponent {
 public:
  LevyExponent(std::vector<Atom> atoms, int dim);

  cplx operator()(std::span<const double> xi) const;
  double real_part(std::span<const double> xi) const;  // <= 0 everywhere

  double total_mass() const { return mass_; }
  int dimension() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
  double mass_ = 0.0;
  int dim_ = 0;
};

/// Builds the exponent of a finite measure; throws InfiniteMass for the
/// stable and exp-over-r forms (truncate first).
LevyExponent levy_exponent(const LevyMeasure& measure);

/// Finite measures convert to a plain atom list; polar point-mass products
/// expand into radius * direction atoms. Throws InfiniteMass otherwise.
AtomicMeasure to_atomic(const LevyMeasure& measure);

/// Sub-probability atomic distribution (truncated convolution exponential).
struct AtomicDistribution {
  int dim = 0;
  std::vector<Atom> atoms;
  double total_mass = 0.0;
  int order = 0;  // highest convolution power retained
};

struct SemigroupOptions {
  double merge_tol = 1e-12;     // Euclidean atom-merge distance
  std::size_t atom_cap = 4u << 20;
};

/// Distribution of the compound Poisson process at time t,
///   p_t = e^{-t|nu|} * sum_n (t^n / n!) nu^{*n},
/// truncated so the discarded Poisson tail mass is below truncation_tol.
/// Convolution powers are computed by atom-set convolution with merging;
/// exceeding the atom cap raises AtomExplosion.
AtomicDistribution semigroup_measure(const LevyMeasure& measure, double t,
                                     double truncation_tol,
                                     const SemigroupOptions& opts = {});

struct TruncateOptions {
  double tail_rel = 1e-12;      // discarded radial tail, relative to total
  int cells_per_octave = 8;     // geometric grid resolution
  std::size_t max_cells = 100000;
  QuadratureOptions quad;
};

/// Restriction of the measure to {|z| > epsilon}, returned in atomic form.
/// Polar radial parts are discretized on a geometric grid; each cell carries
/// its quadrature mass placed at the cell's mass centroid.
LevyMeasure truncate(const LevyMeasure& measure, double epsilon,
                     const TruncateOptions& opts = {});

}  // namespace levymult
