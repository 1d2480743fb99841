#include "levymult/matrix_decomp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "levymult/errors.hpp"
#include "levymult/rng.hpp"

namespace levymult {

namespace {

Eigen::MatrixXd real_part(const ComplexMatrix& A) {
  Eigen::MatrixXd m(A.n, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) m(i, j) = A.at(i, j).real();
  return m;
}

Eigen::MatrixXd imag_part(const ComplexMatrix& A) {
  Eigen::MatrixXd m(A.n, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) m(i, j) = A.at(i, j).imag();
  return m;
}

double max_offdiag(const Eigen::MatrixXd& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

// Eigen-pairs of a real symmetric matrix as spherical atoms with unit mass.
void append_eigenpairs(const Eigen::MatrixXd& m, double mass, cplx unit,
                       std::vector<SpectralAtom>& atoms,
                       std::vector<cplx>& modulator) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const int d = int(m.rows());
  for (int k = 0; k < d; ++k) {
    Vec a(d);
    for (int i = 0; i < d; ++i) a[i] = solver.eigenvectors()(i, k);
    atoms.push_back({std::move(a), mass});
    modulator.push_back(unit * solver.eigenvalues()(k));
  }
}

}  // namespace

Decomposition decompose(const ComplexMatrix& A, double operator_norm_bound,
                        const DecomposeOptions& opts) {
  const int d = A.n;
  if (d <= 0) throw std::invalid_argument("empty matrix");
  if (!(operator_norm_bound > 0.0))
    throw std::invalid_argument("operator norm bound must be positive");
  const double a_scale = std::max(1.0, A.frobenius_norm());
  if (A.max_asymmetry() > 1e-12 * a_scale)
    throw NotSymmetric("decompose requires a symmetric matrix");

  Eigen::MatrixXd R = real_part(A);
  Eigen::MatrixXd I = imag_part(A);

  // |A xi|^2 = xi^T (R^T R + I^T I) xi on real vectors; check the top
  // eigenvalue and a random sample against the declared bound.
  {
    Eigen::MatrixXd K = R.transpose() * R + I.transpose() * I;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K);
    const double top = std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
    if (top > operator_norm_bound * (1.0 + 1e-9))
      throw NormBoundViolated("spectral estimate exceeds the declared bound");
    CounterRng rng(opts.seed, 3);
    Eigen::VectorXd xi(d);
    for (int trial = 0; trial < 100; ++trial) {
      for (int i = 0; i < d; ++i) xi(i) = rng.standard_normal();
      const double lhs = std::sqrt((R * xi).squaredNorm() + (I * xi).squaredNorm());
      if (lhs > operator_norm_bound * xi.norm() * (1.0 + 1e-9))
        throw NormBoundViolated("sampled direction exceeds the declared bound");
    }
  }

  const double normalization = std::max(1.0, operator_norm_bound);
  R /= normalization;
  I /= normalization;

  const double fro = std::max(1e-300, std::sqrt(R.squaredNorm() + I.squaredNorm()));
  const Eigen::MatrixXd commutator = R * I - I * R;
  const double comm_rel = commutator.norm() / fro;

  Decomposition out;
  out.commutator_norm = comm_rel;

  std::vector<SpectralAtom> atoms;
  std::vector<cplx> modulator;

  if (comm_rel < opts.commutator_tol) {
    // Commuting parts: diagonalize a generic real combination R + c I to get
    // the joint basis, then read both spectra in that basis. A fresh c is
    // drawn if degeneracy leaves residual off-diagonal mass.
    CounterRng rng(opts.seed, 5);
    bool done = false;
    for (int attempt = 0; attempt < opts.max_retries && !done; ++attempt) {
      const double c = 0.3 + 1.4 * rng.uniform();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R + c * I);
      const Eigen::MatrixXd Q = solver.eigenvectors();
      const Eigen::MatrixXd dR = Q.transpose() * R * Q;
      const Eigen::MatrixXd dI = Q.transpose() * I * Q;
      if (max_offdiag(dR) > 1e-10 * fro || max_offdiag(dI) > 1e-10 * fro)
        continue;
      for (int k = 0; k < d; ++k) {
        Vec a(d);
        for (int i = 0; i < d; ++i) a[i] = Q(i, k);
        atoms.push_back({std::move(a), 1.0});
        cplx lambda{dR(k, k), dI(k, k)};
        // The bound check allows 1e-9 slack; clip rounding overshoot so the
        // pair invariant holds.
        if (std::abs(lambda) > 1.0)
          lambda *= std::min(1.0, 1.0 / std::abs(lambda));
        modulator.push_back(lambda);
      }
      done = true;
    }
    if (!done)
      throw Error("joint diagonalization failed to converge; commuting test "
                  "may be borderline");
    out.branch = DecompositionBranch::normal;
    out.scale = normalization;
  } else {
    // Non-commuting parts: decompose each separately on half masses. The
    // denominator stays |xi|^2 and the factor 2 lands in the scale.
    append_eigenpairs(R, 0.5, 1.0, atoms, modulator);
    append_eigenpairs(I, 0.5, cplx{0.0, 1.0}, atoms, modulator);
    for (auto& v : modulator)
      if (std::abs(v) > 1.0) v *= std::min(1.0, 1.0 / std::abs(v));
    out.branch = DecompositionBranch::split;
    out.scale = 2.0 * normalization;
  }

  out.pair = SphericalPair::make(d, std::move(atoms), std::move(modulator));
  return out;
}

Symbol Decomposition::reconstructed_symbol() const {
  Symbol base = pair_symbol(pair);
  const double scale_copy = scale;
  return Symbol(
      [base, scale_copy](std::span<const double> xi) {
        return scale_copy * base(xi);
      },
      pair.dim, Provenance::quadratic_form, scale_copy * base.sup_bound());
}

SphericalPair beurling_ahlfors_atoms() {
  const double s = std::sqrt(0.5);
  std::vector<SpectralAtom> atoms = {
      {{1.0, 0.0}, 1.0},
      {{0.0, 1.0}, 1.0},
      {{s, s}, 1.0},
      {{s, -s}, 1.0},
  };
  std::vector<cplx> modulator = {
      {2.0, 0.0}, {-2.0, 0.0}, {0.0, -2.0}, {0.0, 2.0}};
  return SphericalPair::make(2, std::move(atoms), std::move(modulator),
                             /*relaxed=*/true);
}

Symbol beurling_ahlfors_symbol() {
  Symbol base = pair_symbol(beurling_ahlfors_atoms());
  return Symbol([base](std::span<const double> xi) { return base(xi); }, 2,
                Provenance::beurling_ahlfors, 1.0);
}

CertificateReport c2_certificate(const SphericalPair& pair) {
  if (pair.dim != 2)
    throw NotPlanar("the certificate is defined for circle pairs");
  if (pair.empty()) throw EmptySpectral("certificate needs a nonzero pair");

  CertificateReport report;

  double m0 = 0.0;
  cplx j2 = 0.0;
  for (std::size_t k = 0; k < pair.atoms.size(); ++k) {
    const double s = std::atan2(pair.atoms[k].theta[1], pair.atoms[k].theta[0]);
    m0 += pair.atoms[k].mass;
    j2 += cis(2.0 * s) * pair.modulator[k] * pair.atoms[k].mass;
    report.max_modulator =
        std::max(report.max_modulator, std::abs(pair.modulator[k]));
  }

  report.forced_lhs = 0.25 * j2;
  report.forced_rhs = 0.5 * m0;
  report.coefficient_residual = std::abs(report.forced_lhs - report.forced_rhs);
  report.implied_lower_bound = std::abs(j2) / m0;

  Symbol symbol = pair_symbol(pair);
  double worst = 0.0;
  for (int deg = 0; deg < 360; ++deg) {
    const double t = deg * pi / 180.0;
    const Vec xi = {std::cos(t), std::sin(t)};
    worst = std::max(worst, std::abs(symbol(xi) - cis(-2.0 * t)));
  }
  report.max_symbol_deviation = worst;
  report.reproduces_target = worst < 1e-8;
  return report;
}

}  // namespace levymult
