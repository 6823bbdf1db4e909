#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbme/moments.hpp"

namespace qbme {

enum class SpectralClass { real_spectrum, imaginary_spectrum, conjugate_pairs, anti_conjugate_pairs, generic };

std::string to_string(SpectralClass c);

struct SpectrumPoint {
  double param_value = 0.0;
  CVector eigenvalues;
  double min_gap = 0.0;      // min pairwise |E_i - E_j|
  double coalescence = 0.0;  // max pairwise normalized eigenvector overlap
  SpectralClass classification = SpectralClass::generic;
};

struct EPReport {
  double location = 0.0;
  bool refined = false;
  double discriminant_residual = 0.0;
  double coalescence = 0.0;  // at the refined location
  SpectralClass symmetry_side_low = SpectralClass::generic;
  SpectralClass symmetry_side_high = SpectralClass::generic;
};

struct ScanResult {
  std::vector<SpectrumPoint> points;
  std::vector<EPReport> eps;
};

inline constexpr double kClassTolerance = 1e-9;

/// Classification tolerance is kClassTolerance * max(1, max |E|).
SpectralClass classify(const CVector& eigenvalues, double tol = kClassTolerance);

SpectrumPoint spectrum(const EffectiveHamiltonian& h, double param_value = 0.0);

/// ((h11 - h22)/2)^2 + h12 h21 for a 2x2 matrix; its zeros are the EPs.
cplx discriminant(const CMatrix& h);

using Family = std::function<EffectiveHamiltonian(double)>;

struct ScanOptions {
  /// Grid candidates of size > 2 need this coalescence at the local gap minimum.
  double candidate_coalescence = 0.9;
  /// A refined point counts as an EP above this coalescence, or for 2x2 when
  /// the discriminant vanishes at a matrix that is not a multiple of identity.
  double ep_coalescence = 0.999;
  /// Refined when |D| < discriminant_tolerance * scale^2.
  double discriminant_tolerance = 1e-12;
  int max_iterations = 200;
};

/// Sweeps p over n_points equally spaced values in [from, to]. Candidates are
/// interior local minima of min_gap; 2x2 families are refined on the
/// discriminant, larger ones on min_gap * (1 - coalescence).
ScanResult ep_scan(const Family& family, double from, double to, std::size_t n_points, ScanOptions opts = {});

}  // namespace qbme
