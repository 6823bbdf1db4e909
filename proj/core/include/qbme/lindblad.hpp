#pragma once

#include <optional>
#include <vector>

#include "qbme/bath.hpp"
#include "qbme/nambu.hpp"

namespace qbme {

enum class Basis { bare, dressed };

/// Rotating frame: mode k of `basis` rotates at frequencies[k].
struct Frame {
  Basis basis = Basis::bare;
  std::vector<double> frequencies;
};

/// Dissipator rate * (2 L rho L^+ - {L^+ L, rho}), L linear in bare a, a^+.
struct JumpTerm {
  NambuVector op;
  double rate = 0.0;
};

/// sum_{mu,nu} R_{mu nu} (2 L_mu rho L_nu^+ - {L_nu^+ L_mu, rho}).
struct CrossJumpBlock {
  std::vector<NambuVector> ops;
  CMatrix rate_matrix;
};

/// All jump operators are stored in bare Nambu coordinates, whatever the
/// basis they were built in. `basis` records which builder produced them.
struct LindbladModel {
  QuadraticSystem hamiltonian;
  std::vector<JumpTerm> jumps;
  std::vector<CrossJumpBlock> cross_blocks;
  Basis basis = Basis::bare;
  std::optional<Frame> frame;
  std::optional<BogoliubovTransform> transform;

  std::size_t n_modes() const { return hamiltonian.n_modes(); }

  /// Rates >= 0, rate matrices Hermitian PSD to 1e-10, consistent dimensions.
  void validate() const;

  /// Largest jump rate or rate-matrix eigenvalue.
  double max_rate() const;
};

struct BuildOptions {
  /// Accept non-flat densities by dropping their Lamb shift.
  bool neglect_lamb_shift = false;
};

/// Local master equation: bare jumps a_k, a_k^+ with rates evaluated at the
/// bare frequencies.
LindbladModel build_local(const QuadraticSystem& sys, const std::vector<BathSpec>& baths,
                          BuildOptions opts = {});

/// Dressed master equation for a non-degenerate dressed spectrum.
/// Throws DegenerateSpectrum when two dressed frequencies coincide.
LindbladModel build_global(const QuadraticSystem& sys, const std::vector<BathSpec>& baths,
                           BuildOptions opts = {});

/// Dressed master equation with cross terms inside each degenerate eigenspace.
/// Singleton eigenspaces produce the same plain jumps as build_global.
LindbladModel build_global_degenerate(const QuadraticSystem& sys, const std::vector<BathSpec>& baths,
                                      BuildOptions opts = {});

/// Kossakowski matrix of the dissipator in the bare Nambu basis x = (a, a^+):
/// the dissipator equals sum_ij K_ij (2 x_i rho x_j^+ - ...). Two models with
/// equal K have identical dissipators.
CMatrix kossakowski_matrix(const LindbladModel& model);

/// Rates below this fraction of the largest rate are dropped by the builders.
inline constexpr double kRatePruneFraction = 1e-14;

}  // namespace qbme
