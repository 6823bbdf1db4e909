#include "qbme/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qbme/errors.hpp"

namespace qbme {

namespace {

struct Split {
  std::vector<Eigen::Index> fast;
  std::vector<Eigen::Index> slow;
};

Split split_indices(Eigen::Index dim, const std::vector<std::size_t>& fast) {
  std::vector<bool> is_fast(static_cast<std::size_t>(dim), false);
  for (std::size_t f : fast) {
    if (f >= static_cast<std::size_t>(dim)) throw DimensionError("fast index out of range");
    is_fast[f] = true;
  }
  Split s;
  for (Eigen::Index i = 0; i < dim; ++i) (is_fast[static_cast<std::size_t>(i)] ? s.fast : s.slow).push_back(i);
  return s;
}

CMatrix take(const CMatrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
  return out;
}

std::vector<std::size_t> nambu_fast(const DriftMatrix& d, const std::vector<std::size_t>& fast) {
  const std::size_t n = d.n_modes();
  std::vector<std::size_t> idx;
  for (std::size_t f : fast) {
    if (f >= n) throw DimensionError("fast mode index out of range");
    idx.push_back(f);
    idx.push_back(f + n);
  }
  return idx;
}

double condition_number(const CMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

CMatrix schur_complement(const CMatrix& m, const std::vector<std::size_t>& fast) {
  if (m.rows() != m.cols()) throw DimensionError("Schur complement needs a square matrix");
  const Split s = split_indices(m.rows(), fast);
  const CMatrix mss = take(m, s.slow, s.slow);
  if (s.fast.empty()) return mss;
  const CMatrix mff = take(m, s.fast, s.fast);
  const double cond = condition_number(mff);
  if (!(cond < kMaxFastCondition))
    throw SingularFastBlock("fast block condition number " + std::to_string(cond) + " >= 1e8");
  return mss - take(m, s.slow, s.fast) * mff.partialPivLu().solve(take(m, s.fast, s.slow));
}

DriftMatrix reduced_drift(const DriftMatrix& d, const std::vector<std::size_t>& fast, EliminationDiagnostics* diag) {
  const std::vector<std::size_t> idx = nambu_fast(d, fast);
  DriftMatrix out;
  out.basis = d.basis;
  out.m = schur_complement(d.m, idx);
  const Split s = split_indices(d.m.rows(), idx);
  const std::size_t n = d.n_modes();
  if (!d.frame.empty())
    for (std::size_t k = 0; k < n; ++k)
      if (std::find(fast.begin(), fast.end(), k) == fast.end()) out.frame.push_back(d.frame[k]);

  if (diag != nullptr) {
    const CMatrix mff = take(d.m, s.fast, s.fast);
    diag->condition_number = condition_number(mff);
    diag->fast_rate = 0.0;
    if (mff.size() > 0) {
      Eigen::ComplexEigenSolver<CMatrix> ef(mff, false);
      diag->fast_rate = ef.eigenvalues().real().cwiseAbs().minCoeff();
    }
    diag->slow_scale = 0.0;
    if (out.m.size() > 0) {
      Eigen::ComplexEigenSolver<CMatrix> es(out.m, false);
      diag->slow_scale = es.eigenvalues().cwiseAbs().maxCoeff();
    }
    diag->timescale_warning = mff.size() > 0 && diag->fast_rate < kTimescaleRatio * diag->slow_scale;
  }
  return out;
}

EffectiveHamiltonian eliminate(const DriftMatrix& d, const std::vector<std::size_t>& fast,
                               EliminationDiagnostics* diag) {
  const DriftMatrix r = reduced_drift(d, fast, diag);
  std::vector<std::size_t> slow_local;
  std::vector<std::size_t> slow_labels;
  for (std::size_t k = 0; k < d.n_modes(); ++k)
    if (std::find(fast.begin(), fast.end(), k) == fast.end()) {
      slow_local.push_back(slow_labels.size());
      slow_labels.push_back(k);
    }
  EffectiveHamiltonian h = effective_hamiltonian(r, slow_local);
  h.mode_labels = std::move(slow_labels);
  return h;
}

double elimination_error_estimate(const DriftMatrix& d, const std::vector<std::size_t>& fast, double t_horizon,
                                  std::size_t n_samples) {
  const std::vector<std::size_t> idx = nambu_fast(d, fast);
  if (idx.empty()) return 0.0;
  const Split s = split_indices(d.m.rows(), idx);
  const CMatrix reduced = schur_complement(d.m, idx);

  const CVector xs = CVector::Ones(static_cast<Eigen::Index>(s.slow.size()));
  const CVector xf = -take(d.m, s.fast, s.fast).partialPivLu().solve(take(d.m, s.fast, s.slow) * xs);
  CVector x0(d.m.rows());
  for (std::size_t i = 0; i < s.slow.size(); ++i) x0(s.slow[i]) = xs(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < s.fast.size(); ++i) x0(s.fast[i]) = xf(static_cast<Eigen::Index>(i));

  double worst = 0.0;
  for (std::size_t k = 1; k <= n_samples; ++k) {
    const double t = t_horizon * static_cast<double>(k) / static_cast<double>(n_samples);
    const CVector full = propagate(d.m, x0, t);
    const CVector red = propagate(reduced, xs, t);
    for (std::size_t i = 0; i < s.slow.size(); ++i)
      worst = std::max(worst, std::abs(full(s.slow[i]) - red(static_cast<Eigen::Index>(i))));
  }
  return worst;
}

}  // namespace qbme
