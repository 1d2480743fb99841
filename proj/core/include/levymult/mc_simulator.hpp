#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levymult/geometry.hpp"
#include "levymult/levy_measure.hpp"
#include "levymult/multiplier_apply.hpp"
#include "levymult/symbol.hpp"

namespace levymult {

/// Scalar field R^d -> C used as initial/terminal data of the semigroup.
using Field = std::function<cplx(const Vec&)>;

/// Wraps a grid function as a field by multilinear interpolation, zero
/// outside the box (grid data are expected to be supported in the interior).
Field field_from_grid(const GridFunction& g);

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// One simulated compound-Poisson trajectory on [0, u]: signal times S_i with
/// the jump Z_i (an atom of nu) taken at each, plus the drift vector. The
/// path X_t is piecewise constant plus t b.
struct PathBundle {
  double horizon = 0.0;
  Vec drift;
  std::vector<double> signal_times;     // strictly increasing, in (0, u]
  std::vector<std::size_t> jump_atoms;  // index into the atom list of nu
  std::vector<Vec> jumps;

  /// X_t^b = sum of jumps up to and including t, plus t b when with_drift.
  Vec position(double t, bool with_drift = true) const;
};

/// Draws a path: exponential inter-arrival times with rate |nu| and jumps
/// i.i.d. from nu / |nu|. Reproducible from (seed, path_index).
PathBundle sample_path(const LevyMeasure& nu, const Vec& b, double u,
                       std::uint64_t seed, std::uint64_t path_index = 0);

// ---------------------------------------------------------------------------
// Semigroup of the compound Poisson process
// ---------------------------------------------------------------------------

/// Cached convolution powers of the normalized jump distribution, giving
///   P_t^b f(y) = sum_n w_n(t) sum_j m_{n,j} f(y + z_{n,j} + t b),
/// where w_n(t) are Poisson(|nu| t) weights truncated at tail mass below
/// tail_tol for every t <= horizon.
class Semigroup {
 public:
  Semigroup(const LevyMeasure& nu, double horizon, double tail_tol = 1e-10,
            const SemigroupOptions& opts = {});

  double rate() const { return rate_; }
  int dimension() const { return dim_; }
  double horizon() const { return horizon_; }
  double tail_tol() const { return tail_tol_; }
  int max_order() const { return int(levels_.size()) - 1; }
  const std::vector<Atom>& level(int n) const { return levels_[n]; }
  const std::vector<Atom>& atoms() const { return nu_atoms_; }

  /// Poisson weights w_n(t), n = 0..max_order. Throws SemigroupTruncation if
  /// the discarded tail at t exceeds the tolerance (t beyond the horizon).
  void poisson_weights(double t, std::vector<double>& w) const;

  /// Direct evaluation of P_t^b f(y).
  cplx evaluate(double t, const Vec& b, const Field& f, const Vec& y) const;

  /// Level sums A_n = sum_j m_{n,j} f(base + z_{n,j}) for a fixed base point;
  /// every P_t^b evaluation along a constant stretch of the path reduces to
  /// reweighting these.
  void level_sums(const Field& f, const Vec& base, std::vector<cplx>& out) const;

 private:
  std::vector<std::vector<Atom>> levels_;
  std::vector<Atom> nu_atoms_;
  double rate_ = 0.0;
  double horizon_ = 0.0;
  double tail_tol_ = 0.0;
  int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Martingales along a path
// ---------------------------------------------------------------------------

/// The parabolic martingale F_t = P_{u-t}^b f(x + X_t^b) and its jump
/// transform G sampled at t = 0, the signal times, and t = u.
/// Quadratic variations count the initial value |F_0|^2 for F and the
/// squared jump increments for both.
struct MartingalePair {
  std::vector<double> times;  // 0, S_1..S_k, u
  std::vector<cplx> F;        // post-jump values at times
  std::vector<cplx> G;
  std::vector<double> qv_F;   // cumulative [F,F] at times
  std::vector<double> qv_G;
  std::vector<double> qv_F_increments;  // one per signal
  std::vector<double> qv_G_increments;
  cplx F0, Fu, Gu;
  bool has_F = false, has_G = false;
};

struct MartingaleOptions {
  int gl_nodes = 64;  // Gauss-Legendre nodes per inter-signal interval
};

/// Builds F (from f) and G (from g, modulated by phi on the jump atoms) on
/// one path. phi is a constant or a table over the atoms of nu.
MartingalePair build_martingales(const PathBundle& path, const Semigroup& sg,
                                 const Field& f, const Field& g,
                                 const JumpModulator& phi, const Vec& x,
                                 const MartingaleOptions& opts = {});

/// F only.
MartingalePair parabolic_martingale(const PathBundle& path, const Semigroup& sg,
                                    const Field& f, const Vec& x,
                                    const MartingaleOptions& opts = {});

/// G only.
MartingalePair transform_martingale(const PathBundle& path, const Semigroup& sg,
                                    const Field& g, const JumpModulator& phi,
                                    const Vec& x,
                                    const MartingaleOptions& opts = {});

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct SubordinationReport {
  std::size_t paths = 0;
  std::size_t events = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // most negative (incr F - incr G), 0 if none
};

/// Pathwise audit: every quadratic-variation increment of G is bounded by
/// the matching increment of F (slack 1e-12 relative). Exact arithmetic
/// property of the construction when |phi| <= 1, not statistical.
SubordinationReport check_subordination(const MartingalePair& pair);

/// Statistical report in the common { estimate, bound, sigma } shape.
struct StatReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double bound_std_error = 0.0;
  double sigma_margin = 0.0;  // (bound - estimate) / combined sigma
  bool pass = false;
  bool bug = false;  // violated beyond 5 sigma
  std::size_t paths = 0;
};

struct McOptions {
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
  MartingaleOptions martingale;
  double semigroup_tol = 1e-10;
};

/// Monte-Carlo check of the moment inequality
///   E |G_u|^p <= (p*-1)^p E |F_u|^p  (f = g, F_u = f(x + X_u^b) exactly).
/// PASS when the inequality holds or fails within 4 sigma; BUG beyond 5.
StatReport check_wang_inequality(const LevyMeasure& nu, const Vec& b,
                                 const JumpModulator& phi, const Field& f,
                                 double p, double u, const Vec& x,
                                 const McOptions& opts);

struct PairingOptions {
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
  int x_samples_per_path = 4;  // grid points subsampled per path
  std::size_t grid_n = 256;
  double box_length = 32.0;
  MartingaleOptions martingale;
  double semigroup_tol = 1e-10;
};

struct PairingReport {
  cplx mc_value;
  double mc_std_error = 0.0;        // combined over real and imaginary parts
  cplx fourier_value;
  double fourier_refine_delta = 0.0;  // |value(n) - value(n/2)| quadrature proxy
  double combined_sigma = 0.0;
  double deviation_sigmas = 0.0;    // |mc - fourier| / combined sigma
  bool pass = false;
  std::size_t paths = 0;
};

/// Estimates the pairing Lambda(g, f) = int E[ G_u(x; u, g, phi) F_u(x; u, f) ] dx
/// two ways: Monte Carlo over paths with x subsampled from the grid, and the
/// deterministic frequency-side integral
///   (2 pi)^{-d} int ghat(xi) fhat(-xi) M_u(xi) dxi
/// with M_u the truncated symbol of (nu, phi, u). The drift b enters the MC
/// side only; the frequency side is computed from (nu, phi, u) alone.
PairingReport pairing_identity(const LevyMeasure& nu, const Vec& b,
                               const JumpModulator& phi, const Field& f,
                               const Field& g, double u,
                               const PairingOptions& opts);

struct EcfReport {
  std::vector<Vec> xis;
  std::vector<cplx> empirical;
  std::vector<cplx> exact;
  std::vector<double> std_error;      // per xi, combined re/im
  double max_sigma_deviation = 0.0;
  bool pass = false;  // all points within 4 sigma
  std::size_t paths = 0;
};

/// Empirical characteristic function E e^{i(xi, X_u^b)} against
/// e^{i u (xi,b) + u Psi(xi)} with CLT error bars.
EcfReport empirical_char_function(const LevyMeasure& nu, const Vec& b, double u,
                                  const std::vector<Vec>& xis,
                                  const McOptions& opts);

}  // namespace levymult
