#pragma once

#include <vector>

#include "qbme/bath.hpp"
#include "qbme/moments.hpp"
#include "qbme/nambu.hpp"

namespace qbme {

/// Modes 1 and 2 couple with strength g to mode 3:
///   w1 = w3 + delta_prime, w2 = w1 - epsilon.
struct ThreeModeParams {
  double g = 1.0;
  double delta_prime = 20.0;
  double epsilon = 1.0;
  double omega3 = 100.0;
  double gamma1 = 200.0;
  double gamma2 = 200.0;
  double gamma3 = 2e4;
};

QuadraticSystem three_mode_system(const ThreeModeParams& p);

/// Zero-temperature flat baths; a negative rate becomes a fermi bath with its
/// chemical potential far above every frequency (incoherent gain).
std::vector<BathSpec> three_mode_baths(const ThreeModeParams& p);

/// Frame-w3 drift of the dressed master equation in the bare basis.
DriftMatrix three_mode_drift(const ThreeModeParams& p);

/// Mode 3 eliminated from three_mode_drift.
EffectiveHamiltonian three_mode_reduced(const ThreeModeParams& p, bool recentered = true);

/// Perturbative EP detuning 2 g^2 Gamma1 / Delta'^2.
double perturbative_ep_detuning(double g, double delta_prime, double gamma1);

/// Reduced two-mode Hamiltonian of the weak-coupling limit, frame centered
/// between the two modes:
///   [[-i G1 + e/2, -i g^2 G1/D'^2], [-i g^2 G1/D'^2, -i G1 - e/2]].
CMatrix perturbative_hamiltonian(double g, double delta_prime, double gamma1, double epsilon);

/// Weak-coupling approximation of the dressed annihilation block,
/// [[1, g/D', g/D'], [-g/D', 1, g/D'], [-g/D', -g/D', 1]].
CMatrix approximate_transform(double g, double delta_prime);

/// Max entry difference between approximate_transform and the exact dressed
/// annihilation block (rows matched by dominant bare mode, phases aligned).
double transform_discrepancy(const ThreeModeParams& p);

/// Exact elimination at epsilon = 2 Delta' (frame w3, gamma2 = gamma1):
///   H = [[-iK + P, -iC], [-iC, -iK - P]], eigenvalues -iK +- sqrt(P^2 - C^2).
struct ExactRegimeCoefficients {
  double K = 0.0;
  double P = 0.0;
  double C = 0.0;
};

ExactRegimeCoefficients exact_regime_coefficients(double g, double delta_prime, double gamma1, double gamma3);
CMatrix exact_regime_hamiltonian(double g, double delta_prime, double gamma1, double gamma3);

/// EP conditions at epsilon = 2 Delta': anti-PT where |C| = |P| with K > 0,
/// PT where in addition K = 0.
struct ThreeModeEPConditions {
  double anti_pt_residual = 0.0;  // |C| - |P|
  double pt_residual = 0.0;       // K
};

ThreeModeEPConditions ep_conditions_three_mode(double g, double delta_prime, double gamma1, double gamma3);

/// Gamma3 values (ascending) where K = 0 for the given Gamma1; empty if none.
std::vector<double> pt_branch_gamma3(double g, double delta_prime, double gamma1);

/// Gamma1 values in [lo, hi] where |C| = |P| at fixed Gamma3.
std::vector<double> anti_pt_gamma1(double g, double delta_prime, double gamma3, double lo, double hi);

/// Gamma1 values in [lo, hi] (lo < hi < 0) where |C| = |P| on the smaller
/// K = 0 branch, Gamma3 = pt_branch_gamma3(..)[0].
std::vector<double> pt_ep_gamma1(double g, double delta_prime, double lo, double hi);

/// Closed forms as printed alongside the exact-regime Hamiltonian, for
/// comparison only.
struct PrintedExactRegime {
  static double kappa(double g, double delta_prime, double gamma1, double gamma3);
  static double chi(double g, double delta_prime, double gamma1, double gamma3);
  /// Delta' (Delta'^2 + 2 g^2) / g^2
  static double anti_pt_gamma1(double g, double delta_prime);
  /// g^2 (2 g^2 + Delta'^2 + G1^2) / ((g^2 + Delta'^2) |G1|)
  static double pt_gamma3(double g, double delta_prime, double gamma1);
};

}  // namespace qbme
