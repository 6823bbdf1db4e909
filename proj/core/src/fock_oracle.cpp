#include "qbme/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qbme/errors.hpp"
#include "qbme/moments.hpp"

namespace qbme {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

FockRep::FockRep(const LindbladModel& model, std::vector<std::size_t> cutoffs) : cutoffs_(std::move(cutoffs)) {
  model.validate();
  const std::size_t n = model.n_modes();
  if (cutoffs_.size() != n) throw DimensionError("need one cutoff per mode");
  for (std::size_t c : cutoffs_) {
    if (c < 1) throw InvalidModel("cutoff must be at least 1");
    if (dim_ > kMaxFockDim / (c + 1))
      throw InvalidModel("Fock dimension exceeds the guard rail of " + std::to_string(kMaxFockDim));
    dim_ *= c + 1;
  }

  // stride[k]: index step for one quantum in mode k.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) stride[k - 1] = stride[k] * (cutoffs_[k] + 1);

  top_layer_.assign(dim_, false);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t s = 0; s < dim_; ++s) {
      const std::size_t level = (s / stride[k]) % (cutoffs_[k] + 1);
      if (level == cutoffs_[k]) top_layer_[s] = true;
      if (level > 0)
        trip.emplace_back(static_cast<int>(s - stride[k]), static_cast<int>(s), std::sqrt(static_cast<double>(level)));
    }
    SparseC a(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    a.setFromTriplets(trip.begin(), trip.end());
    a_.push_back(std::move(a));
  }

  // H = sum hop_kl a_k^+ a_l + 1/2 sum (pair_kl a_k^+ a_l^+ + h.c.)
  const NormalOrderedForm f = normal_ordered_form(model.hamiltonian);
  h_ = SparseC(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const cplx hop = f.hop(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
      const cplx pair = f.pair(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
      if (hop != cplx{}) h_ += SparseC(hop * (SparseC(a_[k].adjoint()) * a_[l]));
      if (pair != cplx{}) {
        const SparseC cc = SparseC(a_[k].adjoint()) * SparseC(a_[l].adjoint());
        h_ += SparseC(0.5 * pair * cc) + SparseC(0.5 * std::conj(pair) * SparseC(cc.adjoint()));
      }
      max_frequency_ = std::max({max_frequency_, std::abs(hop), std::abs(pair)});
    }
  }

  // The dissipator only depends on the Kossakowski matrix sum rate l l^+ over all
  // jumps and cross blocks; its eigenvectors give at most 2N independent jumps.
  const CMatrix kos = kossakowski_matrix(model);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (kos + kos.adjoint()));
  const double kmax = es.eigenvalues().cwiseAbs().maxCoeff();
  k_ = SparseC(-kI * h_);
  for (Eigen::Index m = 0; m < es.eigenvalues().size(); ++m) {
    const double rate = es.eigenvalues()(m);
    if (rate <= 1e-14 * kmax) continue;
    SparseC l = linear_operator(NambuVector(es.eigenvectors().col(m)));
    k_ -= SparseC(rate * (SparseC(l.adjoint()) * l));
    jumps_.emplace_back(std::move(l), rate);
    max_rate_ = std::max(max_rate_, rate);
  }
  k_.makeCompressed();
}

SparseC FockRep::linear_operator(const NambuVector& v) const {
  const std::size_t n = n_modes();
  if (v.coeffs().size() != static_cast<Eigen::Index>(2 * n)) throw DimensionError("Nambu vector size mismatch");
  SparseC op(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < n; ++i) {
    const cplx u = v.coeffs()(static_cast<Eigen::Index>(i));
    const cplx w = v.coeffs()(static_cast<Eigen::Index>(i + n));
    if (u != cplx{}) op += SparseC(u * a_[i]);
    if (w != cplx{}) op += SparseC(w * SparseC(a_[i].adjoint()));
  }
  return op;
}

double FockRep::max_step() const {
  const double scale = std::max(max_rate_, max_frequency_);
  return scale > 0.0 ? 0.1 / scale : std::numeric_limits<double>::infinity();
}

CMatrix FockRep::apply(const CMatrix& rho) const {
  // rho is Hermitian, so rho L^+ = (L rho)^+ and every term is a sparse-dense product.
  const CMatrix x = k_ * rho;
  CMatrix out = x + x.adjoint();
  for (const auto& [l, rate] : jumps_) {
    const CMatrix lr = (l * rho).adjoint();
    out += (2.0 * rate) * (l * lr);
  }
  return out;
}

double FockRep::top_layer_population(const CMatrix& rho) const {
  double p = 0.0;
  for (std::size_t s = 0; s < dim_; ++s)
    if (top_layer_[s]) p += rho(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real();
  return p;
}

bool DensityMatrix::is_valid(double tol) const {
  if (rho.rows() != rho.cols()) return false;
  const double scale = std::max(1.0, rho.norm());
  if ((rho - rho.adjoint()).norm() > tol * scale) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return min_eigenvalue() >= -tol;
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (rho * rho).trace().real(); }

DensityMatrix coherent_product_state(const FockRep& rep, const std::vector<cplx>& alpha) {
  const std::size_t n = rep.n_modes();
  if (alpha.size() != n) throw DimensionError("need one amplitude per mode");
  CVector psi = CVector::Ones(1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t levels = rep.cutoffs()[k] + 1;
    CVector c(static_cast<Eigen::Index>(levels));
    cplx amp = 1.0;
    for (std::size_t m = 0; m < levels; ++m) {
      if (m > 0) amp *= alpha[k] / std::sqrt(static_cast<double>(m));
      c(static_cast<Eigen::Index>(m)) = amp;
    }
    c.normalize();
    CVector next(psi.size() * c.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(i * c.size(), c.size()) = psi(i) * c;
    psi = std::move(next);
  }
  return DensityMatrix{psi * psi.adjoint()};
}

DensityMatrix evolve(const FockRep& rep, const DensityMatrix& rho0, double t, double dt) {
  if (rho0.rho.rows() != static_cast<Eigen::Index>(rep.dim())) throw DimensionError("density matrix dimension");
  if (!(dt > 0.0)) throw StepTooLarge("step must be positive");
  if (dt > rep.max_step())
    throw StepTooLarge("dt = " + std::to_string(dt) + " exceeds 0.1/max(rate, frequency) = " +
                       std::to_string(rep.max_step()));
  if (t < 0.0) throw InvalidModel("evolution time must be non-negative");
  CMatrix rho = rho0.rho;
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-12));
  if (steps == 0) return DensityMatrix{rho};
  const double h = t / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const CMatrix k1 = rep.apply(rho);
    const CMatrix k2 = rep.apply(rho + 0.5 * h * k1);
    const CMatrix k3 = rep.apply(rho + 0.5 * h * k2);
    const CMatrix k4 = rep.apply(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double leak = rep.top_layer_population(rho);
    if (leak >= kLeakageThreshold)
      throw TruncationError("top Fock layer population " + std::to_string(leak) + " at t = " +
                            std::to_string(h * static_cast<double>(s + 1)) + "; raise the cutoff or shorten t");
  }
  return DensityMatrix{rho};
}

cplx expect_linear(const FockRep& rep, const DensityMatrix& rho, const NambuVector& v) {
  if (rho.rho.rows() != static_cast<Eigen::Index>(rep.dim())) throw DimensionError("density matrix dimension");
  const SparseC op = rep.linear_operator(v);
  return (op * rho.rho).trace();
}

CVector nambu_means(const FockRep& rep, const DensityMatrix& rho) {
  const std::size_t n = rep.n_modes();
  CVector x(static_cast<Eigen::Index>(2 * n));
  for (std::size_t k = 0; k < n; ++k) {
    const cplx m = (rep.annihilation(k) * rho.rho).trace();
    x(static_cast<Eigen::Index>(k)) = m;
    x(static_cast<Eigen::Index>(k + n)) = (SparseC(rep.annihilation(k).adjoint()) * rho.rho).trace();
  }
  return x;
}

OracleComparison compare_with_drift(const LindbladModel& model, const std::vector<std::size_t>& cutoffs,
                                    const std::vector<cplx>& alpha, double t, double dt, std::size_t n_samples) {
  if (n_samples < 1) throw InvalidModel("need at least one sample time");
  const FockRep rep(model, cutoffs);
  LindbladModel lab = model;
  lab.frame.reset();
  const CMatrix g = lab_drift(lab);

  DensityMatrix rho = coherent_product_state(rep, alpha);
  const CVector x0 = nambu_means(rep, rho);
  OracleComparison out;
  out.horizon = t;
  out.dt = dt;
  out.min_eigenvalue = rho.min_eigenvalue();
  const double dt_sample = t / static_cast<double>(n_samples);
  for (std::size_t s = 1; s <= n_samples; ++s) {
    rho = evolve(rep, rho, dt_sample, dt);
    const CVector oracle = nambu_means(rep, rho);
    const CVector exact = propagate(g, x0, dt_sample * static_cast<double>(s));
    out.max_deviation = std::max(out.max_deviation, (oracle - exact).cwiseAbs().maxCoeff());
    out.max_leakage = std::max(out.max_leakage, rep.top_layer_population(rho.rho));
    out.trace_drift = std::max(out.trace_drift, std::abs(rho.rho.trace() - 1.0));
  }
  out.min_eigenvalue = std::min(out.min_eigenvalue, rho.min_eigenvalue());
  return out;
}

std::size_t default_cutoff(std::size_t n_modes) { return n_modes <= 2 ? 6 : 4; }

}  // namespace qbme
