#include <algorithm>
#include <cmath>
#include <limits>

#include "levymult/errors.hpp"
#include "levymult/multiplier_apply.hpp"
#include "levymult/rng.hpp"

namespace levymult {

namespace {

struct Workspace {
  const std::vector<cplx>* table = nullptr;
  int dim = 0;
  std::size_t n = 0;
  double length = 0.0;
  double p = 2.0;

  GridFunction blank() const { return GridFunction(dim, n, length); }

  double ratio(const GridFunction& g, GridFunction* out = nullptr) const {
    const double in_norm = lp_norm(g, p);
    if (!(in_norm > 0.0)) return 0.0;
    GridFunction tg = apply_table(*table, g);
    const double out_norm = lp_norm(tg, p);
    if (out) *out = std::move(tg);
    return out_norm / in_norm;
  }
};

// Duality map J_p(h) = |h|^{p-2} h, the L^q-normalized extremal pairing.
void duality_map(std::vector<cplx>& values, double p) {
  for (auto& v : values) {
    const double a = std::abs(v);
    v = (a > 0.0) ? v * std::pow(a, p - 2.0) : cplx{0.0, 0.0};
  }
}

// One duality-map power sweep: g <- J_q(T* J_p(T g)), which cannot decrease
// the Rayleigh ratio |T g|_p / |g|_p.
void power_sweep(const Workspace& ws, GridFunction& g,
                 const std::vector<cplx>& adjoint_table) {
  GridFunction h = apply_table(*ws.table, g);
  duality_map(h.values(), ws.p);
  GridFunction v = apply_table(adjoint_table, h);
  const double q = ws.p / (ws.p - 1.0);
  duality_map(v.values(), q);
  double peak = 0.0;
  for (const auto& c : v.values()) peak = std::max(peak, std::abs(c));
  if (peak > 0.0)
    for (auto& c : v.values()) c /= peak;
  g = std::move(v);
}

// Ratio after adding c * wave_k, using that lattice waves diagonalize the
// multiplier: T(g + c w_k) = Tg + c M_k w_k. O(n^d) per evaluation.
double perturbed_ratio(const Workspace& ws, const GridFunction& g,
                       const GridFunction& tg, const std::vector<cplx>& wave,
                       cplx mk, cplx c) {
  const double p = ws.p;
  const double cell = std::pow(ws.length / double(ws.n), ws.dim);
  double num = 0.0, den = 0.0;
  const auto& gv = g.values();
  const auto& tv = tg.values();
  const cplx cm = c * mk;
  for (std::size_t i = 0; i < gv.size(); ++i) {
    den += std::pow(std::abs(gv[i] + c * wave[i]), p);
    num += std::pow(std::abs(tv[i] + cm * wave[i]), p);
  }
  if (den <= 0.0) return 0.0;
  return std::pow(num * cell, 1.0 / p) / std::pow(den * cell, 1.0 / p);
}

}  // namespace

NormReport estimate_operator_norm(const Symbol& M, double p,
                                  const OpNormOptions& opts) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("p must lie in (1, inf)");

  const int dim = M.dimension();
  std::size_t n = opts.n;
  if (n == 0) n = (dim <= 2) ? 256 : 16;

  Workspace ws;
  GridFunction proto(dim, n, opts.box_length);
  std::vector<cplx> table = multiplier_table(M, proto);
  std::vector<cplx> adjoint(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) adjoint[i] = std::conj(table[i]);
  ws.table = &table;
  ws.dim = dim;
  ws.n = n;
  ws.length = opts.box_length;
  ws.p = p;

  const std::size_t total = proto.size();

  GridFunction best = proto;
  double best_ratio = 0.0;
  auto consider = [&](const GridFunction& g) {
    const double r = ws.ratio(g);
    if (r > best_ratio) {
      best_ratio = r;
      best = g;
    }
  };

  // --- single lattice wave at the largest sampled |M| (exact extremizer at
  // p = 2, the floor sup |M| for other p)
  {
    std::size_t arg = 0;
    double top = -1.0;
    for (std::size_t i = 0; i < total; ++i)
      if (std::abs(table[i]) > top) {
        top = std::abs(table[i]);
        arg = i;
      }
    GridFunction g = proto;
    const Vec xi = proto.frequency(arg);
    for (std::size_t i = 0; i < total; ++i)
      g.values()[i] = cis(dot(xi, proto.point(i)));
    consider(g);
  }

  // --- random sparse trigonometric polynomials
  for (int trial = 0; trial < opts.trials; ++trial) {
    CounterRng rng(opts.seed, 101, std::uint64_t(trial));
    GridFunction g = proto;
    std::vector<cplx> hat(total, cplx{0.0, 0.0});
    const int terms = 2 + int(rng.uniform() * 10.0);
    for (int t = 0; t < terms; ++t) {
      std::size_t idx = 0;
      for (int axis = 0; axis < dim; ++axis) {
        // frequencies in the central half of the lattice
        const long half = long(n) / 4;
        const long f = long(rng.uniform() * double(2 * half)) - half;
        idx = idx * n + std::size_t((f + long(n)) % long(n));
      }
      hat[idx] += cplx{rng.standard_normal(), rng.standard_normal()};
    }
    g.values() = std::move(hat);
    fft(g.values(), dim, n, -1);
    consider(g);
  }

  // --- lacunary products mimicking a dyadic martingale along alternating
  // frequency directions (effective for degree-zero homogeneous symbols)
  if (dim == 2) {
    for (int variant = 0; variant < 4; ++variant) {
      CounterRng rng(opts.seed, 202, std::uint64_t(variant));
      GridFunction g = proto;
      const double gamma = 0.5 + 0.4 * rng.uniform();
      const int scales = 5;
      for (std::size_t i = 0; i < total; ++i) {
        const Vec x = proto.point(i);
        double value = 1.0;
        long freq = 1;
        for (int s = 0; s < scales; ++s) {
          const bool horizontal = ((s + variant) % 2 == 0);
          const double phase =
              double(freq) * (horizontal ? x[0] : (variant < 2 ? x[1] : x[0] + x[1]));
          value *= 1.0 + gamma * std::cos(phase);
          freq *= 3;
        }
        g.values()[i] = value;
      }
      consider(g);
    }
  }

  // --- modulated Gaussian bumps
  for (int trial = 0; trial < std::max(2, opts.trials / 4); ++trial) {
    CounterRng rng(opts.seed, 303, std::uint64_t(trial));
    GridFunction g = proto;
    Vec center(dim), m(dim);
    for (int k = 0; k < dim; ++k) {
      center[k] = 0.25 * opts.box_length * (rng.uniform() - 0.5);
      m[k] = std::floor(rng.uniform() * double(n) / 4.0) - double(n) / 8.0;
    }
    const double width = opts.box_length * (0.02 + 0.1 * rng.uniform());
    for (std::size_t i = 0; i < total; ++i) {
      const Vec x = proto.point(i);
      const Vec d = sub(x, center);
      g.values()[i] =
          std::exp(-norm_squared(d) / (2.0 * width * width)) * cis(dot(m, x));
    }
    consider(g);
  }

  // --- duality-map power iterations on the current best
  {
    GridFunction g = best;
    double prev = best_ratio;
    int stall = 0;
    for (int it = 0; it < opts.power_iterations; ++it) {
      power_sweep(ws, g, adjoint);
      const double r = ws.ratio(g);
      if (r > best_ratio) {
        best_ratio = r;
        best = g;
      }
      if (r <= prev * (1.0 + 1e-9)) {
        if (++stall >= 5) break;
      } else {
        stall = 0;
      }
      prev = r;
    }
  }

  // --- coordinate descent over Fourier coefficients of the best function
  if (opts.descent_iterations > 0) {
    GridFunction g = best;
    GridFunction tg = apply_table(table, g);
    double current = best_ratio;
    CounterRng rng(opts.seed, 404);
    std::vector<cplx> wave(total);
    for (int it = 0; it < opts.descent_iterations; ++it) {
      const std::size_t k = std::size_t(rng.uniform() * double(total)) % total;
      const cplx mk = table[k];
      const Vec xi = proto.frequency(k);
      for (std::size_t i = 0; i < total; ++i)
        wave[i] = cis(dot(xi, proto.point(i)));

      const double scale = lp_norm(g, std::numeric_limits<double>::infinity());
      cplx best_c = 0.0;
      double best_here = current;
      for (const double mag : {0.02, 0.1, 0.4}) {
        for (const double phase : {0.0, 0.5 * pi, pi, 1.5 * pi}) {
          const cplx c = scale * mag * cis(phase);
          const double r = perturbed_ratio(ws, g, tg, wave, mk, c);
          if (r > best_here) {
            best_here = r;
            best_c = c;
          }
        }
      }
      if (best_here > current) {
        for (std::size_t i = 0; i < total; ++i) {
          g.values()[i] += best_c * wave[i];
          tg.values()[i] += best_c * mk * wave[i];
        }
        current = best_here;
      }
    }
    if (current > best_ratio) {
      best_ratio = current;
      best = g;
    }
  }

  NormReport report;
  report.p = p;
  report.bound = burkholder_bound(p);
  report.input_norm = lp_norm(best, p);
  GridFunction out = apply_table(table, best);
  report.output_norm = lp_norm(out, p);
  report.ratio =
      report.input_norm > 0.0 ? report.output_norm / report.input_norm : 0.0;
  report.discretization_suspect =
      report.ratio > report.bound * (1.0 + 1e-6) + 1e-12;
  return report;
}

}  // namespace levymult
