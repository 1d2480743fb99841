#include "levymult/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "levymult/errors.hpp"
#include "levymult/rng.hpp"

namespace levymult {

namespace {

constexpr double kZeroFraction = 1e-14;

// Quantized key for matching atoms between two measures.
std::vector<std::int64_t> quantize(std::span<const double> z, double tol) {
  std::vector<std::int64_t> q(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) q[i] = std::llround(z[i] / tol);
  return q;
}

// ---------------------------------------------------------------------------
// Cosine integrals of a Levy measure, with an a-priori magnitude bound used
// by the zero-denominator convention.
// ---------------------------------------------------------------------------

struct CosineIntegral {
  // Atomic data (atomic representation)
  std::vector<Atom> atoms;
  std::vector<cplx> atom_phi;

  // Polar data (stable / polar product)
  std::vector<SpectralAtom> spectral;
  std::vector<cplx> spectral_phi;
  bool stable = false;
  double alpha = 0.0;
  double c_alpha = 0.0;
  bool exp_over_r = false;
  PointMassRadial point_mass;
  bool has_point_mass = false;
  QuadratureOptions quad;

  bool empty() const { return atoms.empty() && spectral.empty(); }

  // integral of (1 - cos(xi,z)) dV and its phi-weighted version
  double plain(std::span<const double> xi) const;
  cplx modulated(std::span<const double> xi) const;
  // upper bound on plain(xi), used as the magnitude scale at xi
  double magnitude_bound(std::span<const double> xi) const;

  double radial_factor(double t) const;  // int (1-cos(r t)) rho(dr)
};

double CosineIntegral::radial_factor(double t) const {
  if (has_point_mass)
    return point_mass.mass * one_minus_cos(point_mass.r * t);
  if (stable) return c_alpha * std::pow(std::abs(t), alpha);
  // exp-over-r by radial quadrature; the e^{-r} tail beyond 40 is negligible
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  return integrate(
             [at](double r) { return one_minus_cos(r * at) * std::exp(-r) / r; },
             0.0, 40.0, quad)
      .value;
}

double CosineIntegral::plain(std::span<const double> xi) const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.mass * one_minus_cos(dot(xi, a.z));
  for (const auto& s : spectral) sum += s.mass * radial_factor(dot(xi, s.theta));
  return sum;
}

cplx CosineIntegral::modulated(std::span<const double> xi) const {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j)
    sum += atom_phi[j] * atoms[j].mass * one_minus_cos(dot(xi, atoms[j].z));
  for (std::size_t k = 0; k < spectral.size(); ++k)
    sum += spectral_phi[k] * spectral[k].mass *
           radial_factor(dot(xi, spectral[k].theta));
  return sum;
}

double CosineIntegral::magnitude_bound(std::span<const double> xi) const {
  const double xi2 = norm_squared(xi);
  double bound = 0.0;
  for (const auto& a : atoms)
    bound += a.mass * std::min(0.5 * xi2 * norm_squared(a.z), 2.0);
  if (!spectral.empty()) {
    double sigma = 0.0;
    for (const auto& s : spectral) sigma += s.mass;
    if (stable)
      bound += c_alpha * sigma * std::pow(std::sqrt(xi2), alpha);
    else if (has_point_mass)
      bound += point_mass.mass * sigma *
               std::min(0.5 * xi2 * point_mass.r * point_mass.r, 2.0);
    else
      // int (1-cos(rt)) e^{-r} dr/r = ln(1+t^2)/2 <= ln(1+|xi|^2)/2
      bound += sigma * 0.5 * std::log1p(xi2);
  }
  return bound;
}

CosineIntegral make_cosine_integral(const LevyMeasure& V,
                                    const JumpModulator& phi,
                                    const QuadratureOptions& quad) {
  CosineIntegral ci;
  ci.quad = quad;
  if (V.is_atomic()) {
    const auto& am = V.as_atomic();
    if (phi.kind() == JumpModulator::Kind::radial_angular)
      throw UnsupportedRepresentation(
          "radial-angular modulators pair with polar measures");
    if (!phi.is_constant() && phi.table_size() < am.atoms.size())
      throw std::invalid_argument("modulator table shorter than the atom list");
    ci.atoms = am.atoms;
    ci.atom_phi.resize(am.atoms.size());
    for (std::size_t j = 0; j < am.atoms.size(); ++j) ci.atom_phi[j] = phi.at(j);
    return ci;
  }

  const std::vector<SpectralAtom>* spectral = nullptr;
  if (V.is_stable_polar()) {
    const auto& sp = V.as_stable_polar();
    ci.stable = true;
    ci.alpha = sp.alpha;
    ci.c_alpha = stable_cosine_constant(sp.alpha, quad);
    spectral = &sp.spectral;
  } else {
    const auto& pp = V.as_polar_product();
    if (const auto* pm = std::get_if<PointMassRadial>(&pp.radial)) {
      ci.has_point_mass = true;
      ci.point_mass = *pm;
    } else {
      ci.exp_over_r = true;
    }
    spectral = &pp.spectral;
  }
  if (phi.kind() == JumpModulator::Kind::table_on_atoms)
    throw UnsupportedRepresentation(
        "per-atom modulator tables pair with atomic measures");
  if (!phi.is_constant() && phi.table_size() < spectral->size())
    throw std::invalid_argument("modulator table shorter than the spectral list");
  ci.spectral = *spectral;
  ci.spectral_phi.resize(spectral->size());
  for (std::size_t k = 0; k < spectral->size(); ++k)
    ci.spectral_phi[k] = phi.at(k);
  return ci;
}

// Second-order (spherical pair) terms.
struct PairForm {
  std::vector<SpectralAtom> atoms;
  std::vector<cplx> phi;

  double plain(std::span<const double> xi) const {
    double s = 0.0;
    for (const auto& a : atoms) {
      const double t = dot(xi, a.theta);
      s += 0.5 * t * t * a.mass;
    }
    return s;
  }
  cplx modulated(std::span<const double> xi) const {
    cplx s = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double t = dot(xi, atoms[k].theta);
      s += 0.5 * t * t * atoms[k].mass * phi[k];
    }
    return s;
  }
  double magnitude_bound(std::span<const double> xi) const {
    double sigma = 0.0;
    for (const auto& a : atoms) sigma += a.mass;
    return 0.5 * norm_squared(xi) * sigma;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Symbol
// ---------------------------------------------------------------------------

Symbol::Symbol(std::function<cplx(std::span<const double>)> eval, int dim,
               Provenance provenance, double sup_bound,
               std::shared_ptr<const SymbolPieces> pieces,
               double truncation_horizon)
    : eval_(std::move(eval)),
      dim_(dim),
      provenance_(provenance),
      sup_bound_(sup_bound),
      pieces_(std::move(pieces)),
      truncation_horizon_(truncation_horizon) {}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::general: return "general";
    case Provenance::quadratic_form: return "quadratic_form";
    case Provenance::stable: return "stable";
    case Provenance::marcinkiewicz: return "marcinkiewicz";
    case Provenance::tempered: return "tempered";
    case Provenance::ratio: return "ratio";
    case Provenance::beurling_ahlfors: return "beurling_ahlfors";
    case Provenance::truncated: return "truncated";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// general_symbol
// ---------------------------------------------------------------------------

Symbol general_symbol(const LevyMeasure& V, const JumpModulator& phi,
                      const SphericalPair& pair,
                      const QuadratureOptions& quad) {
  if (!pair.empty() && pair.dim != V.dimension())
    throw DimensionMismatch("measure and spherical pair dimensions differ");
  validate(V, quad);

  auto state = std::make_shared<std::pair<CosineIntegral, PairForm>>();
  state->first = make_cosine_integral(V, phi, quad);
  state->second = PairForm{pair.atoms, pair.modulator};

  const double bound = std::max({1.0, phi.sup_norm(), pair.modulator_sup()});
  const int dim = V.dimension();

  auto numerator = [state](std::span<const double> xi) -> cplx {
    return state->first.modulated(xi) + state->second.modulated(xi);
  };
  auto denominator = [state](std::span<const double> xi) -> double {
    return state->first.plain(xi) + state->second.plain(xi);
  };
  auto pieces = std::make_shared<SymbolPieces>(SymbolPieces{numerator, denominator});

  auto eval = [state](std::span<const double> xi) -> cplx {
    const double den = state->first.plain(xi) + state->second.plain(xi);
    const double scale = state->first.magnitude_bound(xi) +
                         state->second.magnitude_bound(xi);
    if (den <= kZeroFraction * scale) return 0.0;
    return (state->first.modulated(xi) + state->second.modulated(xi)) / den;
  };
  return Symbol(std::move(eval), dim, Provenance::general, bound,
                std::move(pieces));
}

Symbol general_symbol(const LevyMeasure& V, const JumpModulator& phi,
                      const QuadratureOptions& quad) {
  return general_symbol(V, phi, SphericalPair::zero(V.dimension()), quad);
}

Symbol pair_symbol(const SphericalPair& pair) {
  if (pair.empty()) throw EmptySpectral("pair symbol needs a nonzero measure");
  return general_symbol(LevyMeasure::atomic(pair.dim, {}),
                        JumpModulator::constant(1.0), pair);
}

// ---------------------------------------------------------------------------
// quadratic_form_symbol
// ---------------------------------------------------------------------------

Symbol quadratic_form_symbol(const ComplexMatrix& A, const RealMatrix& B) {
  if (A.n != B.n) throw DimensionMismatch("A and B sizes differ");
  const int d = A.n;
  const double a_scale = std::max(1.0, A.frobenius_norm());
  const double b_scale = std::max(1.0, B.frobenius_norm());
  if (A.max_asymmetry() > 1e-12 * a_scale)
    throw AsymmetricInput("A is not symmetric");
  if (B.max_asymmetry() > 1e-12 * b_scale)
    throw AsymmetricInput("B is not symmetric");

  {
    Eigen::MatrixXd eb(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) eb(i, j) = B.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(eb);
    if (solver.eigenvalues().minCoeff() < -1e-12 * b_scale)
      throw std::invalid_argument("B must be nonnegative definite");
  }

  auto state = std::make_shared<std::pair<ComplexMatrix, RealMatrix>>(A, B);
  const double b_frob = B.frobenius_norm();

  // Declared bound by dense direction sampling; the quadratic-form family is
  // not constrained to the unit ball a priori.
  double bound = 0.0;
  {
    CounterRng rng(0x5eedbeef, 7);
    Vec xi(d);
    for (int trial = 0; trial < 4096; ++trial) {
      for (int i = 0; i < d; ++i) xi[i] = rng.standard_normal();
      const double den = B.bilinear(xi);
      if (den > 1e-12 * b_frob * norm_squared(xi))
        bound = std::max(bound, std::abs(A.bilinear(xi)) / den);
    }
    bound *= 1.0 + 1e-6;
  }

  auto eval = [state, b_frob](std::span<const double> xi) -> cplx {
    const double den = state->second.bilinear(xi);
    if (den <= kZeroFraction * b_frob * norm_squared(xi) || den <= 0.0)
      return 0.0;
    return state->first.bilinear(xi) / den;
  };
  return Symbol(std::move(eval), d, Provenance::quadratic_form, bound);
}

// ---------------------------------------------------------------------------
// stable_symbol / marcinkiewicz_symbol
// ---------------------------------------------------------------------------

Symbol stable_symbol(double alpha, const SphericalPair& spectral) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("stable index must lie in (0, 2)");
  if (spectral.empty())
    throw EmptySpectral("stable symbol needs a nonzero spectral measure");
  if (spectral.modulator_sup() > 1.0 + 1e-12)
    throw std::invalid_argument("stable symbol requires |phi| <= 1");

  auto state = std::make_shared<SphericalPair>(spectral);
  double sigma = spectral.total_mass();

  auto eval = [state, alpha, sigma](std::span<const double> xi) -> cplx {
    double den = 0.0;
    cplx num = 0.0;
    for (std::size_t k = 0; k < state->atoms.size(); ++k) {
      const double term =
          state->atoms[k].mass *
          std::pow(std::abs(dot(xi, state->atoms[k].theta)), alpha);
      den += term;
      num += state->modulator[k] * term;
    }
    const double scale = sigma * std::pow(norm(xi), alpha);
    if (den <= kZeroFraction * scale) return 0.0;
    return num / den;
  };
  return Symbol(std::move(eval), spectral.dim, Provenance::stable, 1.0);
}

Symbol marcinkiewicz_symbol(double alpha, int j, int dim) {
  if (j < 0 || j >= dim) throw std::invalid_argument("axis index out of range");
  std::vector<cplx> mod(dim, 0.0);
  mod[j] = 1.0;
  SphericalPair sigma = coordinate_directions(dim, std::move(mod));
  Symbol base = stable_symbol(alpha, sigma);
  return Symbol([base](std::span<const double> xi) { return base(xi); }, dim,
                Provenance::marcinkiewicz, 1.0);
}

// ---------------------------------------------------------------------------
// tempered_symbol
// ---------------------------------------------------------------------------

Symbol tempered_symbol(const SphericalPair& spectral) {
  if (spectral.empty())
    throw EmptySpectral("tempered symbol needs a nonzero spectral measure");
  if (spectral.modulator_sup() > 1.0 + 1e-12)
    throw std::invalid_argument("tempered symbol requires |phi| <= 1");

  auto state = std::make_shared<SphericalPair>(spectral);

  auto eval = [state](std::span<const double> xi) -> cplx {
    // Atoms with (xi,theta) ~ 0 contribute +inf to both integrals; the ratio
    // limit is driven by those atoms alone.
    double dominant_mass = 0.0;
    cplx dominant_num = 0.0;
    double den = 0.0;
    cplx num = 0.0;
    for (std::size_t k = 0; k < state->atoms.size(); ++k) {
      const double t = dot(xi, state->atoms[k].theta);
      if (std::abs(t) < 1e-150) {
        dominant_mass += state->atoms[k].mass;
        dominant_num += state->modulator[k] * state->atoms[k].mass;
        continue;
      }
      const double term =
          state->atoms[k].mass * std::log1p(1.0 / (t * t));
      den += term;
      num += state->modulator[k] * term;
    }
    if (dominant_mass > 0.0) return dominant_num / dominant_mass;
    if (den <= 0.0) return 0.0;
    return num / den;
  };
  return Symbol(std::move(eval), spectral.dim, Provenance::tempered, 1.0);
}

// ---------------------------------------------------------------------------
// ratio_symbol
// ---------------------------------------------------------------------------

namespace {

void check_domination(const LevyMeasure& nu1, const LevyMeasure& nu2) {
  const double slack = 1e-12;
  if (nu1.is_atomic() && nu2.is_atomic()) {
    std::map<std::vector<std::int64_t>, double> table;
    for (const auto& a : nu2.as_atomic().atoms)
      table[quantize(a.z, 1e-12)] += a.mass;
    for (const auto& a : nu1.as_atomic().atoms) {
      const auto it = table.find(quantize(a.z, 1e-12));
      if (it == table.end() || a.mass > it->second * (1.0 + slack))
        throw DominationViolated("nu1 exceeds nu2 at atom");
    }
    return;
  }
  auto spectral_dominated = [&](const std::vector<SpectralAtom>& s1,
                                const std::vector<SpectralAtom>& s2) {
    std::map<std::vector<std::int64_t>, double> table;
    for (const auto& a : s2) table[quantize(a.theta, 1e-12)] += a.mass;
    for (const auto& a : s1) {
      const auto it = table.find(quantize(a.theta, 1e-12));
      if (it == table.end() || a.mass > it->second * (1.0 + slack))
        throw DominationViolated("spectral measure of nu1 exceeds nu2");
    }
  };
  if (nu1.is_stable_polar() && nu2.is_stable_polar()) {
    const auto& s1 = nu1.as_stable_polar();
    const auto& s2 = nu2.as_stable_polar();
    if (std::abs(s1.alpha - s2.alpha) > 1e-12)
      throw DominationViolated(
          "stable radial densities with different indices are not comparable");
    spectral_dominated(s1.spectral, s2.spectral);
    return;
  }
  if (nu1.is_polar_product() && nu2.is_polar_product()) {
    const auto& p1 = nu1.as_polar_product();
    const auto& p2 = nu2.as_polar_product();
    const auto* m1 = std::get_if<PointMassRadial>(&p1.radial);
    const auto* m2 = std::get_if<PointMassRadial>(&p2.radial);
    if ((m1 == nullptr) != (m2 == nullptr))
      throw DominationViolated("radial parts have different kinds");
    std::vector<SpectralAtom> s1 = p1.spectral;
    std::vector<SpectralAtom> s2 = p2.spectral;
    if (m1 != nullptr) {
      if (std::abs(m1->r - m2->r) > 1e-12)
        throw DominationViolated("point-mass radii differ");
      for (auto& a : s1) a.mass *= m1->mass;
      for (auto& a : s2) a.mass *= m2->mass;
    }
    spectral_dominated(s1, s2);
    return;
  }
  throw UnsupportedRepresentation(
      "domination check requires matching measure representations");
}

}  // namespace

Symbol ratio_symbol(const LevyMeasure& nu1, const LevyMeasure& nu2,
                    const QuadratureOptions& quad) {
  if (nu1.dimension() != nu2.dimension())
    throw DimensionMismatch("measure dimensions differ");
  check_domination(nu1, nu2);

  auto one = JumpModulator::constant(1.0);
  auto state = std::make_shared<std::pair<CosineIntegral, CosineIntegral>>(
      make_cosine_integral(nu1, one, quad), make_cosine_integral(nu2, one, quad));

  auto numerator = [state](std::span<const double> xi) -> cplx {
    return state->first.plain(xi);
  };
  auto denominator = [state](std::span<const double> xi) -> double {
    return state->second.plain(xi);
  };
  auto pieces = std::make_shared<SymbolPieces>(SymbolPieces{numerator, denominator});

  auto eval = [state](std::span<const double> xi) -> cplx {
    const double den = state->second.plain(xi);
    if (den <= kZeroFraction * state->second.magnitude_bound(xi)) return 0.0;
    return state->first.plain(xi) / den;
  };
  return Symbol(std::move(eval), nu1.dimension(), Provenance::ratio, 1.0,
                std::move(pieces));
}

// ---------------------------------------------------------------------------
// truncated_symbol
// ---------------------------------------------------------------------------

Symbol truncated_symbol(const LevyMeasure& V_finite, const JumpModulator& phi,
                        double u) {
  if (!(u > 0.0)) throw std::invalid_argument("horizon u must be positive");
  AtomicMeasure am = to_atomic(V_finite);

  struct State {
    std::vector<Atom> atoms;
    std::vector<cplx> phi;
  };
  auto state = std::make_shared<State>();
  state->atoms = std::move(am.atoms);
  if (!phi.is_constant() && phi.table_size() < state->atoms.size())
    throw std::invalid_argument("modulator table shorter than the atom list");
  state->phi.resize(state->atoms.size());
  for (std::size_t j = 0; j < state->atoms.size(); ++j) state->phi[j] = phi.at(j);

  auto compute = [state, u](std::span<const double> xi, cplx& num, double& den,
                            double& scale) {
    num = 0.0;
    den = 0.0;
    scale = 0.0;
    const double xi2 = norm_squared(xi);
    for (std::size_t j = 0; j < state->atoms.size(); ++j) {
      const double c = one_minus_cos(dot(xi, state->atoms[j].z));
      den += state->atoms[j].mass * c;
      num += state->phi[j] * state->atoms[j].mass * c;
      scale += state->atoms[j].mass *
               std::min(0.5 * xi2 * norm_squared(state->atoms[j].z), 2.0);
    }
  };

  auto numerator = [compute, u](std::span<const double> xi) -> cplx {
    cplx num;
    double den, scale;
    compute(xi, num, den, scale);
    return num * (-std::expm1(-2.0 * u * den));
  };
  auto denominator = [compute](std::span<const double> xi) -> double {
    cplx num;
    double den, scale;
    compute(xi, num, den, scale);
    return den;
  };
  auto pieces = std::make_shared<SymbolPieces>(SymbolPieces{numerator, denominator});

  // Re Psi(xi) = -den, so the horizon factor is 1 - e^{-2 u den}.
  auto eval = [compute, u](std::span<const double> xi) -> cplx {
    cplx num;
    double den, scale;
    compute(xi, num, den, scale);
    if (den <= kZeroFraction * scale) return 0.0;
    return (num / den) * (-std::expm1(-2.0 * u * den));
  };
  return Symbol(std::move(eval), V_finite.dimension(), Provenance::truncated,
                std::max(1.0, phi.sup_norm()), std::move(pieces), u);
}

// ---------------------------------------------------------------------------
// stable_cosine_constant
// ---------------------------------------------------------------------------

namespace {

// Tails int_X^inf cos(s) s^{-beta} ds and the sine analogue by repeated
// integration by parts; the dropped remainder is O(X^{-beta-depth}).
double cosine_tail(double X, double beta, int depth);
double sine_tail(double X, double beta, int depth) {
  if (depth <= 0) return 0.0;
  return std::cos(X) * std::pow(X, -beta) - beta * cosine_tail(X, beta + 1.0, depth - 1);
}
double cosine_tail(double X, double beta, int depth) {
  if (depth <= 0) return 0.0;
  return -std::sin(X) * std::pow(X, -beta) + beta * sine_tail(X, beta + 1.0, depth - 1);
}

}  // namespace

double stable_cosine_constant(double alpha, const QuadratureOptions& quad) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("stable index must lie in (0, 2)");

  // [0, 1]: alternating series from the cosine expansion,
  //   sum_k (-1)^{k+1} / ((2k)! (2k - alpha)).
  double head = 0.0;
  double factorial = 2.0;  // (2k)!
  double sign = 1.0;
  for (int k = 1; k <= 16; ++k) {
    const double term = sign / (factorial * (2.0 * k - alpha));
    head += term;
    if (std::abs(term) < 1e-18) break;
    sign = -sign;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }

  // [1, 2 pi K] in period blocks, then the closed-form power tail minus the
  // oscillatory remainder by parts.
  const int K = 32;
  const double X = 2.0 * pi * K;
  double middle = 0.0;
  double lo = 1.0;
  for (int k = 1; k <= K; ++k) {
    const double hi = 2.0 * pi * k;
    middle += integrate(
                  [alpha](double s) {
                    return one_minus_cos(s) * std::pow(s, -1.0 - alpha);
                  },
                  lo, hi, quad)
                  .value;
    lo = hi;
  }
  const double tail =
      std::pow(X, -alpha) / alpha - cosine_tail(X, 1.0 + alpha, 8);
  return head + middle + tail;
}

// ---------------------------------------------------------------------------
// sphere_limit_check
// ---------------------------------------------------------------------------

ConvergenceReport sphere_limit_check(const SphericalPair& pair,
                                     const std::vector<double>& epsilons,
                                     const SphereLimitOptions& opts) {
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1]))
      throw std::invalid_argument("epsilons must be strictly decreasing");

  ConvergenceReport report;
  report.epsilons = epsilons;

  const int d = pair.dim;
  CounterRng rng(opts.seed, 11);
  Vec e1(d, 0.0);
  if (d > 0) e1[0] = 1.0;
  report.points.push_back(e1);
  for (int i = 1; i < opts.sample_points; ++i) {
    Vec xi(d);
    for (int k = 0; k < d; ++k) xi[k] = 4.0 * rng.uniform() - 2.0;
    report.points.push_back(std::move(xi));
  }

  report.deviation.assign(report.points.size(),
                          std::vector<double>(epsilons.size(), 0.0));
  report.max_deviation.assign(epsilons.size(), 0.0);

  for (std::size_t pi_ = 0; pi_ < report.points.size(); ++pi_) {
    const Vec& xi = report.points[pi_];
    cplx target = 0.0;
    for (std::size_t k = 0; k < pair.atoms.size(); ++k) {
      const double t = dot(xi, pair.atoms[k].theta);
      target += 0.5 * t * t * pair.atoms[k].mass * pair.modulator[k];
    }
    for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
      const double eps = epsilons[ei];
      cplx value = 0.0;
      for (std::size_t k = 0; k < pair.atoms.size(); ++k) {
        const double t = dot(xi, pair.atoms[k].theta);
        value += one_minus_cos(eps * t) / (eps * eps) * pair.atoms[k].mass *
                 pair.modulator[k];
      }
      const double dev = std::abs(value - target);
      report.deviation[pi_][ei] = dev;
      report.max_deviation[ei] = std::max(report.max_deviation[ei], dev);
    }
  }

  // Least-squares slope of log(max deviation) against log(epsilon).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    if (report.max_deviation[ei] <= 0.0) continue;
    const double x = std::log(epsilons[ei]);
    const double y = std::log(report.max_deviation[ei]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  report.fitted_order =
      (n >= 2) ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 2.0;
  return report;
}

}  // namespace levymult
