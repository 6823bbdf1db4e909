#pragma once

#include <cstddef>
#include <vector>

#include "qbme/moments.hpp"

namespace qbme {

struct EliminationDiagnostics {
  double fast_rate = 0.0;        // min |Re eig| of the fast block
  double slow_scale = 0.0;       // max |eig| of the reduced slow block
  double condition_number = 0.0; // of the fast block
  bool timescale_warning = false; // fast_rate < 10 * slow_scale
};

/// Schur complement m_ss - m_sf m_ff^-1 m_fs over index set `fast`; the
/// remaining indices keep their relative order.
CMatrix schur_complement(const CMatrix& m, const std::vector<std::size_t>& fast);

/// Sets d<fast>/dt = 0 (both a and a^+ components of each fast mode), solves
/// for the fast means and returns H_eff = i (G_ss - G_sf G_ff^-1 G_fs) on the
/// annihilation operators of the slow modes.
/// Throws SingularFastBlock (condition number >= 1e8) and NotClosed.
EffectiveHamiltonian eliminate(const DriftMatrix& d, const std::vector<std::size_t>& fast,
                               EliminationDiagnostics* diag = nullptr);

/// Reduced Nambu-space drift on the slow modes (a and a^+ rows).
DriftMatrix reduced_drift(const DriftMatrix& d, const std::vector<std::size_t>& fast,
                          EliminationDiagnostics* diag = nullptr);

/// Max |<x_slow>_full(t) - <x_slow>_reduced(t)| over [0, t_horizon], starting
/// from slow means (1, .., 1) with the fast means slaved to them.
double elimination_error_estimate(const DriftMatrix& d, const std::vector<std::size_t>& fast, double t_horizon,
                                  std::size_t n_samples = 50);

inline constexpr double kMaxFastCondition = 1e8;
inline constexpr double kTimescaleRatio = 10.0;

}  // namespace qbme
