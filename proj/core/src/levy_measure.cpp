#include "levymult/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "levymult/errors.hpp"

namespace levymult {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kModulatorSlack = 1e-12;

void check_spectral(int dim, const std::vector<SpectralAtom>& spectral) {
  for (const auto& a : spectral) {
    if (int(a.theta.size()) != dim)
      throw DimensionMismatch("spectral atom dimension mismatch");
    if (!(a.mass > 0.0))
      throw std::invalid_argument("spectral masses must be strictly positive");
    if (std::abs(norm(a.theta) - 1.0) > kUnitNormTol)
      throw std::invalid_argument("spectral directions must have unit norm");
  }
}

// Quantized coordinate key for atom merging.
struct AtomKey {
  std::vector<std::int64_t> q;
  bool operator<(const AtomKey& o) const { return q < o.q; }
};

AtomKey make_key(std::span<const double> z, double tol) {
  AtomKey key;
  key.q.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    key.q[i] = std::llround(z[i] / tol);
  return key;
}

}  // namespace

// ---------------------------------------------------------------------------
// LevyMeasure
// ---------------------------------------------------------------------------

LevyMeasure LevyMeasure::atomic(int dim, std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (int(a.z.size()) != dim)
      throw DimensionMismatch("atom dimension mismatch");
    if (!(a.mass > 0.0))
      throw std::invalid_argument("atom masses must be strictly positive");
    if (norm(a.z) == 0.0) throw OriginAtom("atom at the origin is not allowed");
  }
  return LevyMeasure(AtomicMeasure{dim, std::move(atoms)}, dim);
}

LevyMeasure LevyMeasure::polar_product(int dim, RadialMeasure radial,
                                       std::vector<SpectralAtom> spectral) {
  check_spectral(dim, spectral);
  if (const auto* pm = std::get_if<PointMassRadial>(&radial)) {
    if (!(pm->r > 0.0) || !(pm->mass > 0.0))
      throw std::invalid_argument("point-mass radial needs r > 0 and mass > 0");
  }
  return LevyMeasure(PolarProductMeasure{dim, radial, std::move(spectral)}, dim);
}

LevyMeasure LevyMeasure::stable_polar(int dim, double alpha,
                                      std::vector<SpectralAtom> spectral) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("stable index must lie in (0, 2)");
  check_spectral(dim, spectral);
  return LevyMeasure(StablePolarMeasure{dim, alpha, std::move(spectral)}, dim);
}

const AtomicMeasure& LevyMeasure::as_atomic() const {
  if (!is_atomic())
    throw UnsupportedRepresentation("expected an atomic measure");
  return std::get<AtomicMeasure>(rep_);
}

const PolarProductMeasure& LevyMeasure::as_polar_product() const {
  if (!is_polar_product())
    throw UnsupportedRepresentation("expected a polar-product measure");
  return std::get<PolarProductMeasure>(rep_);
}

const StablePolarMeasure& LevyMeasure::as_stable_polar() const {
  if (!is_stable_polar())
    throw UnsupportedRepresentation("expected a stable-polar measure");
  return std::get<StablePolarMeasure>(rep_);
}

double LevyMeasure::total_mass() const {
  if (is_atomic()) {
    double m = 0.0;
    for (const auto& a : as_atomic().atoms) m += a.mass;
    return m;
  }
  if (is_stable_polar()) return std::numeric_limits<double>::infinity();
  const auto& pp = as_polar_product();
  double sigma = 0.0;
  for (const auto& a : pp.spectral) sigma += a.mass;
  if (std::holds_alternative<ExpOverRRadial>(pp.radial))
    return std::numeric_limits<double>::infinity();
  return std::get<PointMassRadial>(pp.radial).mass * sigma;
}

double LevyMeasure::jump_scale() const {
  const ValidationReport report = validate(*this);
  return report.small_jump_moment + report.tail_mass;
}

// ---------------------------------------------------------------------------
// JumpModulator
// ---------------------------------------------------------------------------

JumpModulator::JumpModulator(Kind kind, std::vector<cplx> values)
    : kind_(kind), values_(std::move(values)) {
  for (const auto& v : values_)
    if (std::abs(v) > 1.0 + kModulatorSlack)
      throw std::invalid_argument("jump modulator values must satisfy |phi| <= 1");
}

JumpModulator JumpModulator::constant(cplx value) {
  return JumpModulator(Kind::constant, {value});
}

JumpModulator JumpModulator::table_on_atoms(std::vector<cplx> values) {
  return JumpModulator(Kind::table_on_atoms, std::move(values));
}

JumpModulator JumpModulator::radial_angular(std::vector<cplx> values) {
  return JumpModulator(Kind::radial_angular, std::move(values));
}

cplx JumpModulator::at(std::size_t idx) const {
  if (kind_ == Kind::constant) return values_[0];
  if (idx >= values_.size())
    throw std::out_of_range("modulator table shorter than the atom list");
  return values_[idx];
}

double JumpModulator::sup_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s = std::max(s, std::abs(v));
  return s;
}

// ---------------------------------------------------------------------------
// SphericalPair
// ---------------------------------------------------------------------------

SphericalPair SphericalPair::make(int dim, std::vector<SpectralAtom> atoms,
                                  std::vector<cplx> modulator, bool relaxed) {
  check_spectral(dim, atoms);
  if (atoms.size() != modulator.size())
    throw std::invalid_argument("pair modulator must match the atom list");
  const double cap = relaxed ? 2.0 : 1.0;
  for (const auto& v : modulator)
    if (std::abs(v) > cap + kModulatorSlack)
      throw std::invalid_argument(
          "spherical modulator exceeds its bound (flag the pair relaxed for "
          "values up to 2)");
  return SphericalPair{dim, std::move(atoms), std::move(modulator), relaxed};
}

double SphericalPair::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.mass;
  return m;
}

double SphericalPair::modulator_sup() const {
  double s = 0.0;
  for (const auto& v : modulator) s = std::max(s, std::abs(v));
  return s;
}

SphericalPair lebesgue_circle(int n, const std::function<cplx(double)>& phi,
                              bool relaxed) {
  if (n <= 0) throw std::invalid_argument("circle discretization needs n > 0");
  std::vector<SpectralAtom> atoms;
  std::vector<cplx> mod;
  atoms.reserve(n);
  mod.reserve(n);
  const double w = 2.0 * pi / n;
  for (int j = 0; j < n; ++j) {
    const double angle = (j + 0.5) * w;
    atoms.push_back({{std::cos(angle), std::sin(angle)}, w});
    mod.push_back(phi(angle));
  }
  return SphericalPair::make(2, std::move(atoms), std::move(mod), relaxed);
}

SphericalPair coordinate_directions(int dim, std::vector<cplx> modulator,
                                    bool relaxed) {
  std::vector<SpectralAtom> atoms;
  for (int k = 0; k < dim; ++k) {
    Vec e(dim, 0.0);
    e[k] = 1.0;
    atoms.push_back({std::move(e), 1.0});
  }
  return SphericalPair::make(dim, std::move(atoms), std::move(modulator),
                             relaxed);
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

ValidationReport validate(const LevyMeasure& measure,
                          const QuadratureOptions& quad) {
  ValidationReport report;
  report.integrable = true;

  if (measure.is_atomic()) {
    for (const auto& a : measure.as_atomic().atoms) {
      const double r2 = norm_squared(a.z);
      if (r2 <= 1.0)
        report.small_jump_moment += r2 * a.mass;
      else
        report.tail_mass += a.mass;
    }
    report.detail = "atomic: finite by construction";
    return report;
  }

  double sigma = 0.0;
  if (measure.is_stable_polar()) {
    const auto& sp = measure.as_stable_polar();
    for (const auto& a : sp.spectral) sigma += a.mass;
    // integral of r^2 * r^{-1-alpha} on (0,1] and of r^{-1-alpha} on (1,inf)
    report.small_jump_moment = sigma / (2.0 - sp.alpha);
    report.tail_mass = sigma / sp.alpha;
    report.detail = "stable: closed-form radial moments";
    return report;
  }

  const auto& pp = measure.as_polar_product();
  for (const auto& a : pp.spectral) sigma += a.mass;
  if (const auto* pm = std::get_if<PointMassRadial>(&pp.radial)) {
    if (pm->r <= 1.0)
      report.small_jump_moment = pm->r * pm->r * pm->mass * sigma;
    else
      report.tail_mass = pm->mass * sigma;
    report.detail = "polar point mass";
    return report;
  }

  // rho(dr) = e^{-r} dr / r
  try {
    const double small =
        integrate([](double r) { return r * std::exp(-r); }, 0.0, 1.0, quad)
            .value;
    const double tail =
        integrate_to_infinity([](double r) { return std::exp(-r) / r; }, 1.0,
                              quad)
            .value;
    report.small_jump_moment = small * sigma;
    report.tail_mass = tail * sigma;
    report.detail = "exp-over-r: radial quadrature";
  } catch (const QuadratureFailure& e) {
    report.integrable = false;
    report.detail = e.what();
    throw NonIntegrable(std::string("radial integrability check failed: ") +
                        e.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// symmetrize
// ---------------------------------------------------------------------------

SymmetrizeResult symmetrize(const LevyMeasure& measure,
                            const JumpModulator& phi) {
  if (!measure.is_atomic())
    throw UnsupportedRepresentation(
        "symmetrize is defined for atomic measures only");
  const auto& am = measure.as_atomic();
  if (!phi.is_constant() && phi.table_size() < am.atoms.size())
    throw std::invalid_argument("modulator table shorter than the atom list");

  // Index atoms by quantized position so z and -z pair up exactly.
  const double tol = 1e-12;
  std::map<AtomKey, std::size_t> index;
  for (std::size_t i = 0; i < am.atoms.size(); ++i) {
    auto [it, inserted] = index.insert({make_key(am.atoms[i].z, tol), i});
    if (!inserted)
      throw std::invalid_argument("atomic measure has duplicate atoms");
  }

  std::vector<Atom> sym_atoms;
  std::vector<cplx> star;
  std::vector<double> kvals;
  std::vector<bool> used(am.atoms.size(), false);

  auto emit = [&](const Vec& z, double mass, cplx value, double k) {
    sym_atoms.push_back({z, mass});
    star.push_back(value);
    kvals.push_back(k);
  };

  for (std::size_t i = 0; i < am.atoms.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Atom& a = am.atoms[i];
    const Vec neg = negated(a.z);
    const auto it = index.find(make_key(neg, tol));

    double mass_plus = a.mass;
    double mass_minus = 0.0;
    cplx phi_plus = phi.at(i);
    cplx phi_minus = 0.0;
    if (it != index.end() && !used[it->second]) {
      used[it->second] = true;
      mass_minus = am.atoms[it->second].mass;
      phi_minus = phi.at(it->second);
    }

    const double even_mass = 0.5 * (mass_plus + mass_minus);
    const double odd_mass = 0.5 * (mass_plus - mass_minus);
    const double k = odd_mass / even_mass;  // even_mass > 0 always
    // phi* = (phi(z) V({z}) + phi(-z) V({-z})) / (V({z}) + V({-z})),
    // the convex combination equal to the even part plus k times the odd
    // part. It is symmetric in z, so both emitted atoms share the value.
    const cplx value =
        (phi_plus * mass_plus + phi_minus * mass_minus) / (mass_plus + mass_minus);
    emit(a.z, even_mass, value, k);
    emit(neg, even_mass, value, -k);
  }

  SymmetrizeResult result{
      LevyMeasure::atomic(am.dim, std::move(sym_atoms)),
      JumpModulator::table_on_atoms(std::move(star)),
      std::move(kvals)};
  return result;
}

// ---------------------------------------------------------------------------
// levy_exponent / to_atomic
// ---------------------------------------------------------------------------

AtomicMeasure to_atomic(const LevyMeasure& measure) {
  if (measure.is_atomic()) return measure.as_atomic();
  if (measure.is_stable_polar())
    throw InfiniteMass("stable measures have infinite total mass; truncate first");
  const auto& pp = measure.as_polar_product();
  if (std::holds_alternative<ExpOverRRadial>(pp.radial))
    throw InfiniteMass(
        "exp-over-r radial part has infinite total mass; truncate first");
  const auto& pm = std::get<PointMassRadial>(pp.radial);
  AtomicMeasure out;
  out.dim = pp.dim;
  for (const auto& s : pp.spectral)
    out.atoms.push_back({scaled(s.theta, pm.r), pm.mass * s.mass});
  return out;
}

LevyExponent::LevyExponent(std::vector<Atom> atoms, int dim)
    : atoms_(std::move(atoms)), dim_(dim) {
  for (const auto& a : atoms_) mass_ += a.mass;
}

cplx LevyExponent::operator()(std::span<const double> xi) const {
  cplx sum = 0.0;
  for (const auto& a : atoms_) {
    const double t = dot(xi, a.z);
    sum += a.mass * cplx{-one_minus_cos(t), std::sin(t)};
  }
  return sum;
}

double LevyExponent::real_part(std::span<const double> xi) const {
  double sum = 0.0;
  for (const auto& a : atoms_) sum -= a.mass * one_minus_cos(dot(xi, a.z));
  return sum;
}

LevyExponent levy_exponent(const LevyMeasure& measure) {
  AtomicMeasure am = to_atomic(measure);
  return LevyExponent(std::move(am.atoms), am.dim);
}

// ---------------------------------------------------------------------------
// semigroup_measure
// ---------------------------------------------------------------------------

namespace {

std::vector<Atom> convolve(const std::vector<Atom>& a,
                           const std::vector<Atom>& b, double merge_tol,
                           std::size_t atom_cap) {
  std::map<AtomKey, std::size_t> index;
  std::vector<Atom> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Vec z = add(x.z, y.z);
      const AtomKey key = make_key(z, merge_tol);
      auto [it, inserted] = index.insert({key, out.size()});
      if (inserted) {
        out.push_back({std::move(z), x.mass * y.mass});
        if (out.size() > atom_cap)
          throw AtomExplosion("convolution power exceeded the atom cap");
      } else {
        out[it->second].mass += x.mass * y.mass;
      }
    }
  }
  return out;
}

}  // namespace

AtomicDistribution semigroup_measure(const LevyMeasure& measure, double t,
                                     double truncation_tol,
                                     const SemigroupOptions& opts) {
  if (!measure.is_atomic())
    throw UnsupportedRepresentation(
        "semigroup_measure needs an atomic (finite) measure");
  if (t < 0.0) throw std::invalid_argument("time must be non-negative");
  if (!(truncation_tol > 0.0))
    throw std::invalid_argument("truncation tolerance must be positive");

  const auto& am = measure.as_atomic();
  double rate = 0.0;
  for (const auto& a : am.atoms) rate += a.mass;

  AtomicDistribution dist;
  dist.dim = am.dim;

  const double lambda = rate * t;
  // Poisson weights until the tail drops below the tolerance.
  std::vector<double> weights;
  double w = std::exp(-lambda);
  double cum = w;
  weights.push_back(w);
  while (1.0 - cum >= truncation_tol) {
    w *= lambda / double(weights.size());
    weights.push_back(w);
    cum += w;
    if (weights.size() > 100000)
      throw AtomExplosion("Poisson truncation level is unreasonably deep");
  }

  // Normalized jump distribution, convolved up to the truncation level.
  std::vector<Atom> power = {{Vec(am.dim, 0.0), 1.0}};  // delta at 0
  std::map<AtomKey, std::size_t> index;
  std::vector<Atom> accum;
  auto fold = [&](const std::vector<Atom>& atoms, double weight) {
    for (const auto& a : atoms) {
      const AtomKey key = make_key(a.z, opts.merge_tol);
      auto [it, inserted] = index.insert({key, accum.size()});
      if (inserted)
        accum.push_back({a.z, weight * a.mass});
      else
        accum[it->second].mass += weight * a.mass;
      if (accum.size() > opts.atom_cap)
        throw AtomExplosion("semigroup measure exceeded the atom cap");
    }
  };

  std::vector<Atom> normalized;
  normalized.reserve(am.atoms.size());
  for (const auto& a : am.atoms) normalized.push_back({a.z, a.mass / rate});

  fold(power, weights[0]);
  for (std::size_t n = 1; n < weights.size(); ++n) {
    power = convolve(power, normalized, opts.merge_tol, opts.atom_cap);
    fold(power, weights[n]);
  }

  dist.atoms = std::move(accum);
  dist.order = int(weights.size()) - 1;
  for (const auto& a : dist.atoms) dist.total_mass += a.mass;
  return dist;
}

// ---------------------------------------------------------------------------
// truncate
// ---------------------------------------------------------------------------

namespace {

// Discretizes a radial density on (epsilon, infinity) onto a geometric grid.
// Each cell contributes its quadrature mass at the cell mass centroid.
void discretize_radial(const std::function<double(double)>& density,
                       double epsilon, double total_from_epsilon,
                       const TruncateOptions& opts,
                       std::vector<std::pair<double, double>>& out) {
  const double ratio = std::pow(2.0, 1.0 / opts.cells_per_octave);
  const double tail_cut = opts.tail_rel * total_from_epsilon;

  double lo = epsilon;
  double discarded_bound = total_from_epsilon;
  std::size_t cells = 0;
  while (true) {
    const double hi = lo * ratio;
    const auto mass = integrate(density, lo, hi, opts.quad);
    if (mass.value > 0.0) {
      const auto moment = integrate([&](double r) { return r * density(r); },
                                    lo, hi, opts.quad);
      out.emplace_back(moment.value / mass.value, mass.value);
    }
    discarded_bound -= mass.value;
    lo = hi;
    if (discarded_bound <= tail_cut) break;
    if (++cells > opts.max_cells)
      throw AtomExplosion("radial discretization exceeded the cell cap");
  }
}

}  // namespace

LevyMeasure truncate(const LevyMeasure& measure, double epsilon,
                     const TruncateOptions& opts) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("truncation radius must be positive");

  std::vector<Atom> atoms;
  const int dim = measure.dimension();

  if (measure.is_atomic()) {
    for (const auto& a : measure.as_atomic().atoms)
      if (norm(a.z) > epsilon) atoms.push_back(a);
    return LevyMeasure::atomic(dim, std::move(atoms));
  }

  std::vector<std::pair<double, double>> radial;  // (radius, mass)
  const std::vector<SpectralAtom>* spectral = nullptr;

  if (measure.is_stable_polar()) {
    const auto& sp = measure.as_stable_polar();
    spectral = &sp.spectral;
    const double alpha = sp.alpha;
    const double total = std::pow(epsilon, -alpha) / alpha;
    discretize_radial(
        [alpha](double r) { return std::pow(r, -1.0 - alpha); }, epsilon,
        total, opts, radial);
  } else {
    const auto& pp = measure.as_polar_product();
    spectral = &pp.spectral;
    if (const auto* pm = std::get_if<PointMassRadial>(&pp.radial)) {
      if (pm->r > epsilon) radial.emplace_back(pm->r, pm->mass);
    } else {
      const double total =
          integrate_to_infinity([](double r) { return std::exp(-r) / r; },
                                epsilon, opts.quad)
              .value;
      discretize_radial([](double r) { return std::exp(-r) / r; }, epsilon,
                        total, opts, radial);
    }
  }

  for (const auto& [r, mass] : radial)
    for (const auto& s : *spectral)
      atoms.push_back({scaled(s.theta, r), mass * s.mass});
  return LevyMeasure::atomic(dim, std::move(atoms));
}

}  // namespace levymult
