#include "levymult/mc_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include "levymult/errors.hpp"
#include "levymult/quadrature.hpp"
#include "levymult/rng.hpp"
#include "levymult/threading.hpp"

namespace levymult {

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

Field field_from_grid(const GridFunction& g) {
  auto grid = std::make_shared<GridFunction>(g);
  return [grid](const Vec& x) -> cplx {
    const int d = grid->dimension();
    const std::size_t n = grid->points_per_axis();
    const double h = grid->spacing();
    const double lo = -0.5 * grid->box_length();
    // Multilinear interpolation; zero outside the sampled box.
    std::vector<std::size_t> base(d);
    std::vector<double> frac(d);
    for (int k = 0; k < d; ++k) {
      const double s = (x[k] - lo) / h;
      if (s < 0.0 || s >= double(n - 1)) return 0.0;
      const double fl = std::floor(s);
      base[k] = std::size_t(fl);
      frac[k] = s - fl;
    }
    cplx acc = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t(1) << d); ++corner) {
      double w = 1.0;
      std::size_t flat = 0;
      for (int k = 0; k < d; ++k) {
        const bool hi = (corner >> k) & 1u;
        w *= hi ? frac[k] : 1.0 - frac[k];
        flat = flat * n + base[k] + (hi ? 1 : 0);
      }
      acc += w * grid->values()[flat];
    }
    return acc;
  };
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

Vec PathBundle::position(double t, bool with_drift) const {
  Vec x(drift.size(), 0.0);
  for (std::size_t i = 0; i < signal_times.size() && signal_times[i] <= t; ++i)
    add_in_place(x, jumps[i]);
  if (with_drift) add_in_place(x, drift, t);
  return x;
}

PathBundle sample_path(const LevyMeasure& nu, const Vec& b, double u,
                       std::uint64_t seed, std::uint64_t path_index) {
  const AtomicMeasure am = to_atomic(nu);
  if (int(b.size()) != am.dim)
    throw DimensionMismatch("drift dimension does not match the measure");
  double rate = 0.0;
  std::vector<double> cumulative;
  cumulative.reserve(am.atoms.size());
  for (const auto& a : am.atoms) {
    rate += a.mass;
    cumulative.push_back(rate);
  }
  if (!(rate > 0.0)) throw ZeroMass("jump measure has zero total mass");

  PathBundle path;
  path.horizon = u;
  path.drift = b;

  CounterRng times(seed, path_index, 0);
  CounterRng picks(seed, path_index, 1);
  double t = 0.0;
  for (;;) {
    t += times.exponential(rate);
    if (t > u) break;
    const std::size_t a = picks.categorical(cumulative);
    path.signal_times.push_back(t);
    path.jump_atoms.push_back(a);
    path.jumps.push_back(am.atoms[a].z);
  }
  return path;
}

// ---------------------------------------------------------------------------
// Semigroup
// ---------------------------------------------------------------------------

Semigroup::Semigroup(const LevyMeasure& nu, double horizon, double tail_tol,
                     const SemigroupOptions& opts)
    : horizon_(horizon), tail_tol_(tail_tol) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(tail_tol > 0.0) || tail_tol >= 1.0)
    throw std::invalid_argument("tail tolerance must lie in (0, 1)");
  AtomicMeasure am = to_atomic(nu);
  dim_ = am.dim;
  nu_atoms_ = std::move(am.atoms);
  for (const auto& a : nu_atoms_) rate_ += a.mass;
  if (!(rate_ > 0.0)) throw ZeroMass("jump measure has zero total mass");

  // Truncation order: Poisson(rate * horizon) tail below tail_tol.
  const double lambda = rate_ * horizon_;
  int order = 0;
  {
    double w = std::exp(-lambda), cum = w;
    while (1.0 - cum >= tail_tol) {
      ++order;
      w *= lambda / double(order);
      cum += w;
      if (order > 100000)
        throw AtomExplosion("semigroup truncation level is unreasonably deep");
    }
  }

  std::vector<Atom> normalized = nu_atoms_;
  for (auto& a : normalized) a.mass /= rate_;

  levels_.reserve(order + 1);
  levels_.push_back({{Vec(dim_, 0.0), 1.0}});
  std::size_t total_atoms = 1;
  for (int n = 1; n <= order; ++n) {
    std::map<std::vector<std::int64_t>, std::size_t> index;
    std::vector<Atom> next;
    for (const auto& prev : levels_.back()) {
      for (const auto& jump : normalized) {
        Vec z = add(prev.z, jump.z);
        std::vector<std::int64_t> key(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
          key[i] = std::llround(z[i] / opts.merge_tol);
        auto [it, inserted] = index.insert({std::move(key), next.size()});
        if (inserted)
          next.push_back({std::move(z), prev.mass * jump.mass});
        else
          next[it->second].mass += prev.mass * jump.mass;
      }
    }
    total_atoms += next.size();
    if (total_atoms > opts.atom_cap)
      throw AtomExplosion("semigroup convolution powers exceeded the atom cap");
    levels_.push_back(std::move(next));
  }
}

void Semigroup::poisson_weights(double t, std::vector<double>& w) const {
  if (t < 0.0 || t > horizon_ * (1.0 + 1e-12))
    throw SemigroupTruncation(
        "time outside the horizon the semigroup was truncated for");
  const double lambda = rate_ * t;
  w.resize(levels_.size());
  w[0] = std::exp(-lambda);
  for (std::size_t n = 1; n < w.size(); ++n)
    w[n] = w[n - 1] * lambda / double(n);
}

void Semigroup::level_sums(const Field& f, const Vec& base,
                           std::vector<cplx>& out) const {
  out.resize(levels_.size());
  Vec arg(dim_);
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    cplx s = 0.0;
    for (const auto& a : levels_[n]) {
      for (int k = 0; k < dim_; ++k) arg[k] = base[k] + a.z[k];
      s += a.mass * f(arg);
    }
    out[n] = s;
  }
}

cplx Semigroup::evaluate(double t, const Vec& b, const Field& f,
                         const Vec& y) const {
  std::vector<double> w;
  poisson_weights(t, w);
  Vec base = y;
  add_in_place(base, b, t);
  std::vector<cplx> sums;
  level_sums(f, base, sums);
  cplx acc = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) acc += w[n] * sums[n];
  return acc;
}

// ---------------------------------------------------------------------------
// Martingales
// ---------------------------------------------------------------------------

namespace {

cplx weighted(const std::vector<double>& w, const std::vector<cplx>& sums) {
  cplx acc = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) acc += w[n] * sums[n];
  return acc;
}

}  // namespace

MartingalePair build_martingales(const PathBundle& path, const Semigroup& sg,
                                 const Field& f, const Field& g,
                                 const JumpModulator& phi, const Vec& x,
                                 const MartingaleOptions& opts) {
  const bool want_F = bool(f);
  const bool want_G = bool(g);
  const int d = sg.dimension();
  const double u = path.horizon;
  const std::size_t k = path.signal_times.size();

  if (want_G && !phi.is_constant() && phi.table_size() < sg.atoms().size())
    throw std::invalid_argument("modulator table shorter than the atom list");

  // Base points x + X_{t_i} + u b per constant stretch of the path. The
  // drift collapses: P^b_{u-v} h(x + X_v + v b) carries the argument shift
  // v b + (u - v) b = u b for every v in the stretch, so only the Poisson
  // weights depend on v.
  std::vector<Vec> bases(k + 1);
  {
    Vec pos = x;
    add_in_place(pos, path.drift, u);
    bases[0] = pos;
    for (std::size_t i = 0; i < k; ++i) {
      add_in_place(pos, path.jumps[i]);
      bases[i + 1] = pos;
    }
  }

  const bool same_field = want_F && want_G;  // f and g sums both needed
  std::vector<std::vector<cplx>> Af(want_F ? k + 1 : 0);
  std::vector<std::vector<cplx>> Ag(want_G ? k + 1 : 0);
  for (std::size_t i = 0; i <= k; ++i) {
    if (want_F) sg.level_sums(f, bases[i], Af[i]);
    if (want_G) sg.level_sums(g, bases[i], Ag[i]);
  }
  (void)same_field;

  MartingalePair out;
  out.has_F = want_F;
  out.has_G = want_G;
  out.times.resize(k + 2);
  out.times[0] = 0.0;
  for (std::size_t i = 0; i < k; ++i) out.times[i + 1] = path.signal_times[i];
  out.times[k + 1] = u;

  std::vector<double> w;
  std::vector<cplx> F(k + 2), G(k + 2, cplx{0.0, 0.0});
  std::vector<double> qvF(k + 2, 0.0), qvG(k + 2, 0.0);
  out.qv_F_increments.assign(want_F ? k : 0, 0.0);
  out.qv_G_increments.assign(want_G ? k : 0, 0.0);

  // Values at t = 0.
  sg.poisson_weights(u, w);
  if (want_F) {
    F[0] = weighted(w, Af[0]);
    qvF[0] = std::norm(F[0]);
  }

  // Compensator of G: integral over each stretch of
  //   sum_a nu_a phi_a [P g(base_i + z_a) - P g(base_i)],
  // reduced to Gauss-Legendre in v applied to the Poisson-weight factor.
  std::vector<double> comp_per_interval;
  std::vector<std::vector<cplx>> H;
  std::vector<cplx> comp_cumulative(k + 2, cplx{0.0, 0.0});
  GaussLegendreRule gl;
  std::vector<std::vector<cplx>> shifted;
  if (want_G) {
    gl = gauss_legendre(opts.gl_nodes);
    H.assign(k + 1, {});
    Vec shifted_base(d);
    std::vector<cplx> shift_sums;
    for (std::size_t i = 0; i <= k; ++i) {
      H[i].assign(sg.max_order() + 1, cplx{0.0, 0.0});
      for (std::size_t a = 0; a < sg.atoms().size(); ++a) {
        const cplx weight = sg.atoms()[a].mass * phi.at(a);
        if (weight == cplx{0.0, 0.0}) continue;
        for (int c = 0; c < d; ++c)
          shifted_base[c] = bases[i][c] + sg.atoms()[a].z[c];
        sg.level_sums(g, shifted_base, shift_sums);
        for (std::size_t n = 0; n < shift_sums.size(); ++n)
          H[i][n] += weight * (shift_sums[n] - Ag[i][n]);
      }
    }
    // integrate sum_n w_n(u - v) H_i[n] over each stretch
    cplx cum = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      const double lo = out.times[i];
      const double hi = out.times[i + 1];
      cplx integral = 0.0;
      if (hi > lo) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int q = 0; q < opts.gl_nodes; ++q) {
          const double v = mid + half * gl.nodes[q];
          sg.poisson_weights(u - v, w);
          integral += gl.weights[q] * half * weighted(w, H[i]);
        }
      }
      cum += integral;
      comp_cumulative[i + 1] = cum;
    }
  }

  // Jump increments and values at the signal times and at u.
  for (std::size_t i = 1; i <= k; ++i) {
    sg.poisson_weights(u - path.signal_times[i - 1], w);
    if (want_F) {
      const cplx pre = weighted(w, Af[i - 1]);
      const cplx post = weighted(w, Af[i]);
      const cplx dF = post - pre;
      F[i] = post;
      qvF[i] = qvF[i - 1] + std::norm(dF);
      out.qv_F_increments[i - 1] = std::norm(dF);
    }
    if (want_G) {
      const cplx pre = weighted(w, Ag[i - 1]);
      const cplx post = weighted(w, Ag[i]);
      const cplx dG = (post - pre) * phi.at(path.jump_atoms[i - 1]);
      G[i] = G[i - 1] + comp_cumulative[i - 1] - comp_cumulative[i] + dG;
      qvG[i] = qvG[i - 1] + std::norm(dG);
      out.qv_G_increments[i - 1] = std::norm(dG);
    }
  }

  // t = u: no jump, the F value is exact (P_0 f = f), G accrues the last
  // compensator stretch.
  if (want_F) {
    F[k + 1] = Af[k][0];  // level 0 is the delta at the origin
    qvF[k + 1] = qvF[k];
  }
  if (want_G) {
    G[k + 1] = G[k] + comp_cumulative[k] - comp_cumulative[k + 1];
    qvG[k + 1] = qvG[k];
  }

  out.F = std::move(F);
  out.G = std::move(G);
  out.qv_F = std::move(qvF);
  out.qv_G = std::move(qvG);
  if (want_F) {
    out.F0 = out.F[0];
    out.Fu = out.F[k + 1];
  }
  if (want_G) out.Gu = out.G[k + 1];
  return out;
}

MartingalePair parabolic_martingale(const PathBundle& path, const Semigroup& sg,
                                    const Field& f, const Vec& x,
                                    const MartingaleOptions& opts) {
  return build_martingales(path, sg, f, Field{}, JumpModulator::constant(0.0),
                           x, opts);
}

MartingalePair transform_martingale(const PathBundle& path, const Semigroup& sg,
                                    const Field& g, const JumpModulator& phi,
                                    const Vec& x,
                                    const MartingaleOptions& opts) {
  return build_martingales(path, sg, Field{}, g, phi, x, opts);
}

// ---------------------------------------------------------------------------
// Subordination
// ---------------------------------------------------------------------------

SubordinationReport check_subordination(const MartingalePair& pair) {
  SubordinationReport report;
  report.paths = 1;
  if (!pair.has_F || !pair.has_G)
    throw std::invalid_argument("subordination audit needs both F and G");
  report.events = pair.qv_F_increments.size();
  for (std::size_t i = 0; i < pair.qv_F_increments.size(); ++i) {
    const double slack = pair.qv_G_increments[i] - pair.qv_F_increments[i];
    const double tol = 1e-12 * std::max(1.0, pair.qv_F_increments[i]);
    if (slack > tol) {
      ++report.violations;
      report.worst_slack = std::max(report.worst_slack, slack);
    }
  }
  // The t = 0 increment of [F,F] is |F_0|^2 >= 0 while G starts at zero.
  return report;
}

// ---------------------------------------------------------------------------
// Wang inequality
// ---------------------------------------------------------------------------

StatReport check_wang_inequality(const LevyMeasure& nu, const Vec& b,
                                 const JumpModulator& phi, const Field& f,
                                 double p, double u, const Vec& x,
                                 const McOptions& opts) {
  if (!(p > 1.0)) throw std::invalid_argument("p must lie in (1, inf)");
  const Semigroup sg(nu, u, opts.semigroup_tol);

  const std::size_t block = 2048;
  const std::size_t n_blocks = (opts.paths + block - 1) / block;
  std::vector<double> lhs_sum(n_blocks, 0.0), lhs_sq(n_blocks, 0.0);
  std::vector<double> rhs_sum(n_blocks, 0.0), rhs_sq(n_blocks, 0.0);

  parallel_blocks(opts.paths, block, opts.threads,
                  [&](std::size_t bi, std::size_t begin, std::size_t end) {
                    double ls = 0.0, ls2 = 0.0, rs = 0.0, rs2 = 0.0;
                    for (std::size_t i = begin; i < end; ++i) {
                      const PathBundle path = sample_path(nu, b, u, opts.seed, i);
                      const MartingalePair pair = build_martingales(
                          path, sg, f, f, phi, x, opts.martingale);
                      const double lhs = std::pow(std::abs(pair.Gu), p);
                      const double rhs = std::pow(std::abs(pair.Fu), p);
                      ls += lhs;
                      ls2 += lhs * lhs;
                      rs += rhs;
                      rs2 += rhs * rhs;
                    }
                    lhs_sum[bi] = ls;
                    lhs_sq[bi] = ls2;
                    rhs_sum[bi] = rs;
                    rhs_sq[bi] = rs2;
                  });

  const double n = double(opts.paths);
  const double lhs_mean = pairwise_sum(lhs_sum) / n;
  const double rhs_mean = pairwise_sum(rhs_sum) / n;
  const double lhs_var =
      std::max(0.0, pairwise_sum(lhs_sq) / n - lhs_mean * lhs_mean);
  const double rhs_var =
      std::max(0.0, pairwise_sum(rhs_sq) / n - rhs_mean * rhs_mean);

  const double c = std::pow(burkholder_bound(p), p);
  StatReport report;
  report.paths = opts.paths;
  report.estimate = lhs_mean;
  report.std_error = std::sqrt(lhs_var / n);
  report.bound = c * rhs_mean;
  report.bound_std_error = c * std::sqrt(rhs_var / n);
  const double sigma = std::hypot(report.std_error, report.bound_std_error);
  report.sigma_margin =
      sigma > 0.0 ? (report.bound - report.estimate) / sigma
                  : (report.bound >= report.estimate ? 1e300 : -1e300);
  report.pass = report.estimate <= report.bound || report.sigma_margin >= -4.0;
  report.bug = report.sigma_margin < -5.0;
  return report;
}

// ---------------------------------------------------------------------------
// Pairing identity
// ---------------------------------------------------------------------------

namespace {

cplx fourier_side_value(const LevyMeasure& nu, const JumpModulator& phi,
                        double u, const Field& f, const Field& g, int dim,
                        std::size_t n, double length) {
  const Symbol mu = truncated_symbol(nu, phi, u);
  GridFunction gf = GridFunction::sample(dim, n, length,
                                         [&](const Vec& x) { return f(x); });
  GridFunction gg = GridFunction::sample(dim, n, length,
                                         [&](const Vec& x) { return g(x); });
  const std::vector<cplx> fhat = dft_physical(gf);
  const std::vector<cplx> ghat = dft_physical(gg);

  // (2 pi)^{-d} sum ghat(xi) fhat(-xi) M_u(xi) dxi with dxi = (2 pi / L)^d.
  cplx acc = 0.0;
  for (std::size_t i = 0; i < ghat.size(); ++i) {
    // index of -xi: negate each axis index mod n
    std::size_t rem = i, neg = 0;
    std::size_t stride = 1;
    for (int axis = 0; axis < dim; ++axis) stride *= n;
    stride /= n;
    for (int axis = 0; axis < dim; ++axis) {
      const std::size_t j = (rem / stride) % n;
      const std::size_t jn = (n - j) % n;
      neg += jn * stride;
      rem %= stride;
      stride /= n;
    }
    acc += ghat[i] * fhat[neg] * mu(gf.frequency(i));
  }
  return acc * std::pow(length, -double(dim));
}

}  // namespace

PairingReport pairing_identity(const LevyMeasure& nu, const Vec& b,
                               const JumpModulator& phi, const Field& f,
                               const Field& g, double u,
                               const PairingOptions& opts) {
  const AtomicMeasure am = to_atomic(nu);
  const int dim = am.dim;
  const Semigroup sg(nu, u, opts.semigroup_tol);

  PairingReport report;
  report.paths = opts.paths;

  // Frequency side (drift-free by construction), with a half-resolution
  // re-computation as the discretization error proxy.
  report.fourier_value = fourier_side_value(nu, phi, u, f, g, dim, opts.grid_n,
                                            opts.box_length);
  const cplx coarse = fourier_side_value(nu, phi, u, f, g, dim,
                                         opts.grid_n / 2, opts.box_length);
  report.fourier_refine_delta = std::abs(report.fourier_value - coarse);

  // Monte Carlo side: paths plus grid points subsampled uniformly; the cell
  // average times the box volume estimates the Riemann-sum x-integral.
  const GridFunction proto(dim, opts.grid_n, opts.box_length);
  const double volume = std::pow(opts.box_length, dim);
  const std::size_t cells = proto.size();

  const std::size_t block = 1024;
  const std::size_t n_blocks = (opts.paths + block - 1) / block;
  std::vector<double> re_sum(n_blocks, 0.0), re_sq(n_blocks, 0.0);
  std::vector<double> im_sum(n_blocks, 0.0), im_sq(n_blocks, 0.0);

  parallel_blocks(
      opts.paths, block, opts.threads,
      [&](std::size_t bi, std::size_t begin, std::size_t end) {
        double rs = 0.0, rs2 = 0.0, is = 0.0, is2 = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          const PathBundle path = sample_path(nu, b, u, opts.seed, i);
          CounterRng xrng(opts.seed, i, 2);
          cplx sample = 0.0;
          for (int s = 0; s < opts.x_samples_per_path; ++s) {
            const std::size_t cell =
                std::size_t(xrng.uniform() * double(cells)) % cells;
            const Vec x = proto.point(cell);
            const MartingalePair pair =
                build_martingales(path, sg, f, g, phi, x, opts.martingale);
            sample += pair.Gu * pair.Fu;
          }
          sample *= volume / double(opts.x_samples_per_path);
          rs += sample.real();
          rs2 += sample.real() * sample.real();
          is += sample.imag();
          is2 += sample.imag() * sample.imag();
        }
        re_sum[bi] = rs;
        re_sq[bi] = rs2;
        im_sum[bi] = is;
        im_sq[bi] = is2;
      });

  const double n = double(opts.paths);
  const double re_mean = pairwise_sum(re_sum) / n;
  const double im_mean = pairwise_sum(im_sum) / n;
  const double re_var =
      std::max(0.0, pairwise_sum(re_sq) / n - re_mean * re_mean);
  const double im_var =
      std::max(0.0, pairwise_sum(im_sq) / n - im_mean * im_mean);

  report.mc_value = {re_mean, im_mean};
  report.mc_std_error = std::sqrt((re_var + im_var) / n);
  report.combined_sigma =
      std::hypot(report.mc_std_error, report.fourier_refine_delta);
  const double deviation = std::abs(report.mc_value - report.fourier_value);
  report.deviation_sigmas =
      report.combined_sigma > 0.0 ? deviation / report.combined_sigma : 0.0;
  report.pass = report.deviation_sigmas <= 4.0;
  return report;
}

// ---------------------------------------------------------------------------
// Empirical characteristic function
// ---------------------------------------------------------------------------

EcfReport empirical_char_function(const LevyMeasure& nu, const Vec& b, double u,
                                  const std::vector<Vec>& xis,
                                  const McOptions& opts) {
  const LevyExponent psi = levy_exponent(nu);
  const std::size_t m = xis.size();

  const std::size_t block = 4096;
  const std::size_t n_blocks = (opts.paths + block - 1) / block;
  std::vector<std::vector<double>> re(n_blocks), im(n_blocks), sq(n_blocks);

  parallel_blocks(opts.paths, block, opts.threads,
                  [&](std::size_t bi, std::size_t begin, std::size_t end) {
                    re[bi].assign(m, 0.0);
                    im[bi].assign(m, 0.0);
                    sq[bi].assign(2 * m, 0.0);
                    for (std::size_t i = begin; i < end; ++i) {
                      const PathBundle path = sample_path(nu, b, u, opts.seed, i);
                      const Vec xu = path.position(u);
                      for (std::size_t j = 0; j < m; ++j) {
                        const cplx e = cis(dot(xis[j], xu));
                        re[bi][j] += e.real();
                        im[bi][j] += e.imag();
                        sq[bi][2 * j] += e.real() * e.real();
                        sq[bi][2 * j + 1] += e.imag() * e.imag();
                      }
                    }
                  });

  EcfReport report;
  report.paths = opts.paths;
  report.xis = xis;
  report.pass = true;
  const double n = double(opts.paths);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> col_re(n_blocks), col_im(n_blocks), col_r2(n_blocks),
        col_i2(n_blocks);
    for (std::size_t bi = 0; bi < n_blocks; ++bi) {
      col_re[bi] = re[bi][j];
      col_im[bi] = im[bi][j];
      col_r2[bi] = sq[bi][2 * j];
      col_i2[bi] = sq[bi][2 * j + 1];
    }
    const double mr = pairwise_sum(col_re) / n;
    const double mi = pairwise_sum(col_im) / n;
    const double vr = std::max(0.0, pairwise_sum(col_r2) / n - mr * mr);
    const double vi = std::max(0.0, pairwise_sum(col_i2) / n - mi * mi);
    const double se = std::sqrt((vr + vi) / n);
    const cplx empirical{mr, mi};
    const cplx exact =
        std::exp(cplx{0.0, u * dot(xis[j], b)} + u * psi(xis[j]));
    report.empirical.push_back(empirical);
    report.exact.push_back(exact);
    report.std_error.push_back(se);
    const double dev = std::abs(empirical - exact);
    const double sigmas = se > 0.0 ? dev / se : (dev > 0.0 ? 1e300 : 0.0);
    report.max_sigma_deviation = std::max(report.max_sigma_deviation, sigmas);
    if (sigmas > 4.0) report.pass = false;
  }
  return report;
}

}  // namespace levymult
