#include "qbme/nambu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qbme/errors.hpp"

namespace qbme {

void QuadraticSystem::validate() const {
  const auto n = static_cast<Eigen::Index>(omega.size());
  if (n < 1) throw InvalidModel("quadratic system needs at least one mode");
  if (chi.size() != omega.size()) throw DimensionError("chi length differs from omega length");
  if (lambda.rows() != n || lambda.cols() != n || g.rows() != n || g.cols() != n)
    throw DimensionError("coupling matrices must be N x N");
  for (double w : omega)
    if (!std::isfinite(w)) throw InvalidModel("non-finite mode frequency");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda(i, i) != cplx{} || g(i, i) != cplx{})
      throw InvalidModel("coupling matrices must have zero diagonal (use chi for squeezing)");
    for (Eigen::Index j = 0; j < i; ++j)
      if (lambda(i, j) != cplx{} || g(i, j) != cplx{})
        throw InvalidModel("coupling matrices must be strictly upper triangular");
  }
}

QuadraticSystem QuadraticSystem::uncoupled(std::vector<double> omega) {
  const auto n = static_cast<Eigen::Index>(omega.size());
  QuadraticSystem sys;
  sys.chi.assign(omega.size(), cplx{});
  sys.omega = std::move(omega);
  sys.lambda = CMatrix::Zero(n, n);
  sys.g = CMatrix::Zero(n, n);
  return sys;
}

QuadraticSystem& QuadraticSystem::couple(std::size_t i, std::size_t j, cplx lambda_ij, cplx g_ij) {
  if (i == j) throw InvalidModel("self-coupling: use omega/chi");
  if (i >= n_modes() || j >= n_modes()) throw DimensionError("coupling index out of range");
  // lambda_ij a_i a_j^+ + h.c. is the same operator as conj(lambda_ij) a_j a_i^+ + h.c.
  if (i > j) {
    std::swap(i, j);
    lambda_ij = std::conj(lambda_ij);
  }
  lambda(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = lambda_ij;
  g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g_ij;
  return *this;
}

NambuVector::NambuVector(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() % 2 != 0 || coeffs_.size() == 0)
    throw DimensionError("Nambu vector length must be 2N with N >= 1");
}

NambuVector NambuVector::annihilation(std::size_t n_modes, std::size_t k) {
  if (k >= n_modes) throw DimensionError("mode index out of range");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(2 * n_modes));
  c(static_cast<Eigen::Index>(k)) = 1.0;
  return NambuVector(std::move(c));
}

NambuVector NambuVector::creation(std::size_t n_modes, std::size_t k) {
  if (k >= n_modes) throw DimensionError("mode index out of range");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(2 * n_modes));
  c(static_cast<Eigen::Index>(n_modes + k)) = 1.0;
  return NambuVector(std::move(c));
}

NambuVector NambuVector::dagger() const {
  const auto n = static_cast<Eigen::Index>(n_modes());
  CVector c(2 * n);
  c.head(n) = coeffs_.tail(n).conjugate();
  c.tail(n) = coeffs_.head(n).conjugate();
  return NambuVector(std::move(c));
}

NambuVector operator+(const NambuVector& a, const NambuVector& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) throw DimensionError("Nambu vector size mismatch");
  return NambuVector(a.coeffs_ + b.coeffs_);
}

NambuVector operator*(cplx s, const NambuVector& v) { return NambuVector(s * v.coeffs_); }

NambuVector BogoliubovTransform::dressed_mode(std::size_t k) const {
  if (k >= n_modes()) throw DimensionError("dressed mode index out of range");
  return NambuVector(t.row(static_cast<Eigen::Index>(k)).transpose());
}

CMatrix symplectic_metric(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  CMatrix s = CMatrix::Identity(2 * n, 2 * n);
  s.bottomRightCorner(n, n) *= -1.0;
  return s;
}

CMatrix nambu_swap(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  CMatrix s = CMatrix::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n).setIdentity();
  return s;
}

HBMatrix build_hb_matrix(const QuadraticSystem& sys) {
  sys.validate();
  const auto n = static_cast<Eigen::Index>(sys.n_modes());
  CMatrix a = CMatrix::Zero(n, n);
  CMatrix b = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = sys.omega[static_cast<std::size_t>(i)];
    b(i, i) = sys.chi[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = sys.lambda(i, j);
      a(j, i) = std::conj(sys.lambda(i, j));
      b(i, j) = sys.g(i, j);
      b(j, i) = sys.g(i, j);
    }
  }
  HBMatrix hb;
  hb.m.resize(2 * n, 2 * n);
  hb.m << a, -b, b.conjugate(), -a.conjugate();
  return hb;
}

namespace {

// Reduced row-echelon form of the rows of `basis` (each row one vector).
// Pivots are chosen column by column with partial pivoting.
CMatrix row_echelon(CMatrix basis) {
  const Eigen::Index rows = basis.rows();
  const Eigen::Index cols = basis.cols();
  const double tol = 1e-8 * basis.cwiseAbs().maxCoeff();
  Eigen::Index pr = 0;
  for (Eigen::Index c = 0; c < cols && pr < rows; ++c) {
    Eigen::Index best = pr;
    for (Eigen::Index r = pr + 1; r < rows; ++r)
      if (std::abs(basis(r, c)) > std::abs(basis(best, c))) best = r;
    if (std::abs(basis(best, c)) <= tol) continue;
    basis.row(pr).swap(basis.row(best));
    basis.row(pr) /= basis(pr, c);
    for (Eigen::Index r = 0; r < rows; ++r)
      if (r != pr) basis.row(r) -= basis(r, c) * basis.row(pr);
    ++pr;
  }
  return basis;
}

}  // namespace

BogoliubovTransform diagonalize(const QuadraticSystem& sys) {
  const HBMatrix hb = build_hb_matrix(sys);
  const auto n = static_cast<Eigen::Index>(sys.n_modes());
  const double scale = hb.m.norm();
  if (scale == 0.0) throw InstabilityError("zero Hamiltonian: all dressed frequencies vanish");

  Eigen::ComplexEigenSolver<CMatrix> es(hb.m);
  if (es.info() != Eigen::Success) throw InstabilityError("HB eigensolver failed");
  const CVector& evals = es.eigenvalues();
  const CMatrix& evecs = es.eigenvectors();

  std::vector<Eigen::Index> positive;
  for (Eigen::Index j = 0; j < 2 * n; ++j) {
    if (std::abs(evals(j).imag()) > kStabilityTolerance * scale)
      throw InstabilityError("HB spectrum has imaginary part " + std::to_string(evals(j).imag()) +
                             ": outside the stable normal phase");
    if (std::abs(evals(j)) <= kStabilityTolerance * scale)
      throw InstabilityError("zero-frequency dressed mode");
    if (evals(j).real() > 0.0) positive.push_back(j);
  }
  if (static_cast<Eigen::Index>(positive.size()) != n)
    throw InstabilityError("HB spectrum is not paired as (Omega, -Omega)");

  std::sort(positive.begin(), positive.end(),
            [&](Eigen::Index x, Eigen::Index y) { return evals(x).real() > evals(y).real(); });

  const double max_freq = evals(positive.front()).real();
  const CMatrix sigma = symplectic_metric(sys.n_modes());

  BogoliubovTransform bt;
  bt.t = CMatrix::Zero(2 * n, 2 * n);
  bt.dressed_freq.resize(n);

  Eigen::Index row = 0;
  std::size_t start = 0;
  while (start < positive.size()) {
    std::size_t stop = start + 1;
    while (stop < positive.size() &&
           std::abs(evals(positive[start]).real() - evals(positive[stop]).real()) <
               kStabilityTolerance * max_freq)
      ++stop;
    const auto dim = static_cast<Eigen::Index>(stop - start);

    CMatrix group(dim, 2 * n);
    for (Eigen::Index r = 0; r < dim; ++r)
      group.row(r) = evecs.col(positive[start + static_cast<std::size_t>(r)]).transpose();
    if (dim > 1) group = row_echelon(group);

    std::vector<CVector> done;
    for (Eigen::Index r = 0; r < dim; ++r) {
      CVector v = group.row(r).transpose();
      for (const CVector& u : done) v -= (u.adjoint() * sigma * v)(0, 0) * u;
      const double norm = (v.adjoint() * sigma * v)(0, 0).real();
      if (std::abs(norm) < kStabilityTolerance * v.squaredNorm())
        throw DegenerateNormError("eigenvector with vanishing symplectic norm");
      if (norm < 0.0)
        throw InstabilityError("positive-frequency mode with negative symplectic norm");
      v /= std::sqrt(norm);

      Eigen::Index lead = 0;
      const double mu_max = v.head(n).cwiseAbs().maxCoeff();
      while (std::abs(v(lead)) < (1.0 - 1e-9) * mu_max) ++lead;
      v *= std::conj(v(lead)) / std::abs(v(lead));
      v(lead) = std::abs(v(lead));
      done.push_back(v);

      bt.t.row(row).head(n) = v.head(n).transpose();
      bt.t.row(row).tail(n) = v.tail(n).transpose();
      bt.t.row(row + n).head(n) = v.tail(n).adjoint();
      bt.t.row(row + n).tail(n) = v.head(n).adjoint();
      bt.dressed_freq(row) = evals(positive[start + static_cast<std::size_t>(r)]).real();
      ++row;
    }
    start = stop;
  }

  bt.t_inv = sigma * bt.t.adjoint() * sigma;
  const CMatrix id = CMatrix::Identity(2 * n, 2 * n);
  const double err = (bt.t * bt.t_inv - id).norm() / id.norm();
  if (err > 1e-10 * std::max(1.0, bt.t.norm() * bt.t_inv.norm() / id.norm()))
    throw DegenerateNormError("canonical transform is not symplectic to tolerance");

  double shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) shift += bt.dressed_freq(k) - sys.omega[static_cast<std::size_t>(k)];
  bt.ground_shift = 0.5 * shift;
  return bt;
}

CVector phi_coefficients(const BogoliubovTransform& bt, std::size_t n) {
  const auto modes = static_cast<Eigen::Index>(bt.n_modes());
  if (n >= bt.n_modes()) throw DimensionError("bath mode index out of range");
  const auto r = static_cast<Eigen::Index>(n);
  CVector phi(modes);
  for (Eigen::Index k = 0; k < modes; ++k) phi(k) = bt.t_inv(r, k) + std::conj(bt.t_inv(r, k + modes));
  return phi;
}

NambuVector to_dressed(const BogoliubovTransform& bt, const NambuVector& v) {
  if (v.coeffs().size() != bt.t.rows()) throw DimensionError("Nambu vector size mismatch");
  return NambuVector(bt.t_inv.transpose() * v.coeffs());
}

NambuVector to_bare(const BogoliubovTransform& bt, const NambuVector& v) {
  if (v.coeffs().size() != bt.t.rows()) throw DimensionError("Nambu vector size mismatch");
  return NambuVector(bt.t.transpose() * v.coeffs());
}

std::vector<std::vector<std::size_t>> dressed_eigenspaces(const BogoliubovTransform& bt, double rel_tol) {
  std::vector<std::vector<std::size_t>> groups;
  const std::size_t n = bt.n_modes();
  if (n == 0) return groups;
  const double max_freq = bt.dressed_freq.cwiseAbs().maxCoeff();
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    if (!groups.empty()) {
      const auto first = static_cast<Eigen::Index>(groups.back().front());
      if (std::abs(bt.dressed_freq(first) - bt.dressed_freq(kk)) < rel_tol * max_freq) {
        groups.back().push_back(k);
        continue;
      }
    }
    groups.push_back({k});
  }
  return groups;
}

NormalOrderedForm normal_ordered_form(const QuadraticSystem& sys) {
  sys.validate();
  const auto n = static_cast<Eigen::Index>(sys.n_modes());
  NormalOrderedForm f;
  f.hop = CMatrix::Zero(n, n);
  f.pair = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f.hop(i, i) = sys.omega[static_cast<std::size_t>(i)];
    f.pair(i, i) = std::conj(sys.chi[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      f.hop(i, j) = std::conj(sys.lambda(i, j));
      f.hop(j, i) = sys.lambda(i, j);
      f.pair(i, j) = std::conj(sys.g(i, j));
      f.pair(j, i) = std::conj(sys.g(i, j));
    }
  }
  return f;
}

NormalOrderedForm reconstruct_form(const BogoliubovTransform& bt) {
  const auto n = static_cast<Eigen::Index>(bt.n_modes());
  NormalOrderedForm f;
  f.hop = CMatrix::Zero(n, n);
  f.pair = CMatrix::Zero(n, n);
  f.constant = bt.ground_shift;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = bt.dressed_freq(k);
    const CVector mu = bt.t.row(k).head(n).transpose();
    const CVector nu = bt.t.row(k).tail(n).transpose();
    f.hop += w * (mu.conjugate() * mu.transpose() + nu * nu.adjoint());
    f.pair += w * (mu.conjugate() * nu.transpose() + nu * mu.adjoint());
    f.constant += w * nu.squaredNorm();
  }
  return f;
}

}  // namespace qbme
