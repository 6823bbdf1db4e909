#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qbme {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// N bosonic modes with the general quadratic Hamiltonian
///
///   H = sum_n [ w_n a_n^+ a_n + (chi_n/2 a_n^2 + h.c.) ]
///     + sum_{i<j} [ g_ij a_i a_j + lambda_ij a_i a_j^+ + h.c. ].
///
/// `lambda` and `g` are N x N with only the strict upper triangle used.
struct QuadraticSystem {
  std::vector<double> omega;
  std::vector<cplx> chi;
  CMatrix lambda;
  CMatrix g;

  std::size_t n_modes() const { return omega.size(); }

  /// Throws DimensionError / InvalidModel on inconsistent data.
  void validate() const;

  static QuadraticSystem uncoupled(std::vector<double> omega);

  /// Sets the (i, j) couplings; (j, i) is mapped to the upper triangle.
  QuadraticSystem& couple(std::size_t i, std::size_t j, cplx lambda_ij, cplx g_ij = {});
};

/// Hopfield-Bogoliubov matrix [[A, -B], [B*, -A*]]. Its right eigenvectors are
/// the coefficient vectors (mu, nu) of operators b = mu.a + nu.a^+ obeying
/// [b, H] = Omega b.
struct HBMatrix {
  CMatrix m;

  std::size_t n_modes() const { return static_cast<std::size_t>(m.rows() / 2); }
  CMatrix a_block() const { return m.topLeftCorner(m.rows() / 2, m.cols() / 2); }
  CMatrix b_block() const { return -m.topRightCorner(m.rows() / 2, m.cols() / 2); }
};

/// Linear operator sum_i (u_i a_i + w_i a_i^+), stored as (u, w).
class NambuVector {
public:
  NambuVector() = default;
  explicit NambuVector(CVector coeffs);

  static NambuVector annihilation(std::size_t n_modes, std::size_t k);
  static NambuVector creation(std::size_t n_modes, std::size_t k);

  const CVector& coeffs() const { return coeffs_; }
  std::size_t n_modes() const { return static_cast<std::size_t>(coeffs_.size() / 2); }

  /// Coefficients of the Hermitian conjugate operator.
  NambuVector dagger() const;

  friend NambuVector operator+(const NambuVector& a, const NambuVector& b);
  friend NambuVector operator*(cplx s, const NambuVector& v);

private:
  CVector coeffs_;
};

/// Canonical transform b = T a on Nambu vectors (b_1..b_N, b_1^+..b_N^+).
///
/// Rows 0..N-1 of T hold (mu~_n, nu~_n); rows N..2N-1 hold (nu~_n*, mu~_n*).
/// T Sigma T^+ = Sigma with Sigma = diag(I, -I), and T M^T T^-1 = diag(Omega, -Omega).
struct BogoliubovTransform {
  CMatrix t;
  CMatrix t_inv;
  RVector dressed_freq;  // descending
  double ground_shift = 0.0;

  std::size_t n_modes() const { return static_cast<std::size_t>(dressed_freq.size()); }

  /// Dressed annihilation operator b_k in bare coordinates.
  NambuVector dressed_mode(std::size_t k) const;
};

/// H in normal-ordered form:
///   H = sum hop_kl a_k^+ a_l + 1/2 sum (pair_kl a_k^+ a_l^+ + h.c.) + constant.
struct NormalOrderedForm {
  CMatrix hop;
  CMatrix pair;
  double constant = 0.0;
};

CMatrix symplectic_metric(std::size_t n_modes);  // diag(I, -I)
CMatrix nambu_swap(std::size_t n_modes);         // [[0, I], [I, 0]]

HBMatrix build_hb_matrix(const QuadraticSystem& sys);

/// Stability tolerance (relative to ||M||_F) for imaginary parts and zero modes.
inline constexpr double kStabilityTolerance = 1e-9;

/// Hopfield-Bogoliubov diagonalization in the stable normal phase.
///
/// Degenerate eigenspaces get a deterministic basis: the eigenvectors are
/// brought to reduced row-echelon form (pivots on the leading bare
/// coordinates), then symplectically orthonormalized in that order. Each
/// dressed mode is phased so its largest |mu~| entry is real positive.
///
/// Throws InstabilityError (complex, zero or negative-norm spectrum) and
/// DegenerateNormError (vanishing symplectic norm).
BogoliubovTransform diagonalize(const QuadraticSystem& sys);

/// phi_{n,k} = (T^-1)_{n,k} + conj((T^-1)_{n,k+N}), k = 0..N-1: the weight of
/// b_k in the bath coupling operator a_n + a_n^+.
CVector phi_coefficients(const BogoliubovTransform& bt, std::size_t n);

/// Bare Nambu coefficients -> dressed Nambu coefficients of the same operator.
NambuVector to_dressed(const BogoliubovTransform& bt, const NambuVector& v);
/// Inverse of to_dressed.
NambuVector to_bare(const BogoliubovTransform& bt, const NambuVector& v);

/// Groups dressed modes whose frequencies agree within rel_tol * max Omega.
std::vector<std::vector<std::size_t>> dressed_eigenspaces(const BogoliubovTransform& bt,
                                                          double rel_tol = 1e-9);

NormalOrderedForm normal_ordered_form(const QuadraticSystem& sys);
/// sum_n Omega_n b_n^+ b_n + ground_shift, expanded back into bare operators.
NormalOrderedForm reconstruct_form(const BogoliubovTransform& bt);

}  // namespace qbme
