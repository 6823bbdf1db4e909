#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "qbme/lindblad.hpp"
#include "qbme/nambu.hpp"

namespace qbme {

using SparseC = Eigen::SparseMatrix<cplx>;

/// Largest Fock dimension the oracle accepts.
inline constexpr std::size_t kMaxFockDim = 65536;
/// Top-layer population above which evolve throws TruncationError.
inline constexpr double kLeakageThreshold = 1e-6;

/// Truncated Fock-space realization of a LindbladModel in the lab frame.
/// Mode k keeps levels 0..cutoffs[k]; mode 0 is the most significant index.
/// The model's rotating frame, if any, is ignored.
class FockRep {
public:
  FockRep(const LindbladModel& model, std::vector<std::size_t> cutoffs);

  std::size_t dim() const { return dim_; }
  std::size_t n_modes() const { return cutoffs_.size(); }
  const std::vector<std::size_t>& cutoffs() const { return cutoffs_; }
  const SparseC& annihilation(std::size_t k) const { return a_[k]; }
  const SparseC& hamiltonian() const { return h_; }
  /// Independent jumps (eigen-decomposed Kossakowski matrix) with rates.
  const std::vector<std::pair<SparseC, double>>& jumps() const { return jumps_; }

  /// Operator sum_i (u_i a_i + w_i a_i^+).
  SparseC linear_operator(const NambuVector& v) const;

  /// dt limit 0.1 / max(rate, frequency).
  double max_step() const;

  /// Lindbladian applied to rho.
  CMatrix apply(const CMatrix& rho) const;

  /// Population of basis states with any mode at its cutoff level.
  double top_layer_population(const CMatrix& rho) const;

private:
  std::vector<std::size_t> cutoffs_;
  std::size_t dim_ = 1;
  std::vector<SparseC> a_;
  SparseC h_;
  SparseC k_;  // -iH - sum rate L^+ L, so L(rho) = K rho + rho K^+ + sum 2 rate L rho L^+
  std::vector<std::pair<SparseC, double>> jumps_;
  std::vector<bool> top_layer_;
  double max_frequency_ = 0.0;
  double max_rate_ = 0.0;
};

struct DensityMatrix {
  CMatrix rho;

  /// Hermitian, unit trace, eigenvalues >= -tol.
  bool is_valid(double tol = 1e-10) const;
  double min_eigenvalue() const;
  double purity() const;
};

/// Product of truncated coherent states, renormalized after truncation.
DensityMatrix coherent_product_state(const FockRep& rep, const std::vector<cplx>& alpha);

/// Fixed-step RK4 from 0 to t with steps no larger than dt.
/// Throws StepTooLarge when dt exceeds max_step() and TruncationError when the
/// top Fock layer population reaches kLeakageThreshold.
DensityMatrix evolve(const FockRep& rep, const DensityMatrix& rho0, double t, double dt);

/// Tr(rho * sum_i (u_i a_i + w_i a_i^+)).
cplx expect_linear(const FockRep& rep, const DensityMatrix& rho, const NambuVector& v);

/// Nambu vector of means (<a_1>, .., <a_N>, <a_1^+>, .., <a_N^+>).
CVector nambu_means(const FockRep& rep, const DensityMatrix& rho);

struct OracleComparison {
  double max_deviation = 0.0;  // max over samples and Nambu entries
  double max_leakage = 0.0;
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double horizon = 0.0;
  double dt = 0.0;
};

/// Evolves a coherent product state with the oracle and compares the means at
/// n_samples equally spaced times against exp(G t) from the lab-frame drift.
OracleComparison compare_with_drift(const LindbladModel& model, const std::vector<std::size_t>& cutoffs,
                                    const std::vector<cplx>& alpha, double t, double dt,
                                    std::size_t n_samples = 20);

/// Default cutoff per mode: 6 for up to two modes, 4 for three or more.
std::size_t default_cutoff(std::size_t n_modes);

}  // namespace qbme
