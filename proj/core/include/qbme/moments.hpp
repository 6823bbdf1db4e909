#pragma once

#include <string>
#include <vector>

#include "qbme/lindblad.hpp"
#include "qbme/nambu.hpp"

namespace qbme {

/// d<x>/dt = m <x>, x the Nambu vector of `basis`, in a frame rotating at
/// `frame` (empty means lab frame).
struct DriftMatrix {
  CMatrix m;
  Basis basis = Basis::bare;
  std::vector<double> frame;

  std::size_t n_modes() const { return static_cast<std::size_t>(m.rows() / 2); }
};

/// i d<v>/dt = h <v> on the annihilation operators of `mode_labels`.
struct EffectiveHamiltonian {
  CMatrix h;
  std::vector<std::size_t> mode_labels;
};

/// J = [[0, I], [-I, 0]], so that [x_i, x_j] = J_ij.
CMatrix commutator_matrix(std::size_t n_modes);

/// Exact first-moment generator of the model in the lab frame, bare basis.
CMatrix lab_drift(const LindbladModel& model);

/// Drift in `basis`, including the model's rotating frame if it has one.
/// A dressed basis needs the model's transform (global builders set it).
DriftMatrix drift(const LindbladModel& model, Basis basis = Basis::bare);

/// Same, with an explicit transform for the dressed basis.
DriftMatrix drift(const LindbladModel& model, Basis basis, const BogoliubovTransform& bt);

/// Adds a rotation at `frequencies` (per mode of d.basis) on top of d's frame.
/// Throws FrameError if the rotation does not commute with the generator.
DriftMatrix with_frame(const DriftMatrix& d, const std::vector<double>& frequencies);

/// Uniform frame shift by delta on every mode.
DriftMatrix shift_frame(const DriftMatrix& d, double delta);

/// H_eff = i G on the annihilation block of `modes`.
/// Throws NotClosed if those rows couple to anything else above 1e-12 ||G||.
EffectiveHamiltonian effective_hamiltonian(const DriftMatrix& d, const std::vector<std::size_t>& modes);

/// Wraps a directly specified non-Hermitian matrix.
EffectiveHamiltonian effective_hamiltonian(CMatrix h);

/// Subtracts Re(tr h)/n from the diagonal: a real frame shift.
EffectiveHamiltonian recenter(const EffectiveHamiltonian& h);

/// exp(G t) v0.
CVector propagate(const DriftMatrix& d, const CVector& v0, double t);
CVector propagate(const CMatrix& g, const CVector& v0, double t);

/// ||G - S conj(G) S||_F with S the block swap; zero for any physical drift.
double conjugation_residual(const DriftMatrix& d);

/// Relative leakage tolerance used by effective_hamiltonian.
inline constexpr double kClosureTolerance = 1e-12;

}  // namespace qbme
