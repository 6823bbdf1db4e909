#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "qbme/nambu.hpp"

namespace qbme {

/// zeta = -1 for bosons, +1 for fermions.
enum class Statistics { bose, fermi };

inline double zeta(Statistics s) { return s == Statistics::bose ? -1.0 : 1.0; }

struct FlatDensity {
  double value = 0.0;
};

/// J(w) = pi * alpha * w * exp(-w / cutoff)
struct OhmicDensity {
  double alpha = 0.0;
  double cutoff = 1.0;
};

using SpectralDensity = std::variant<FlatDensity, OhmicDensity>;

struct BathSpec {
  std::size_t mode = 0;
  Statistics statistics = Statistics::bose;
  double temperature = 0.0;
  double chemical_potential = 0.0;
  SpectralDensity spectral_density = FlatDensity{};

  void validate() const;
  bool is_flat() const { return std::holds_alternative<FlatDensity>(spectral_density); }
};

/// Throws InvalidModel on bad specs or two baths on one mode; DimensionError
/// when a bath points past the last mode.
void validate_baths(const std::vector<BathSpec>& baths, std::size_t n_modes);

/// f(eps) = 1 / (zeta + exp((eps - eta) / T)), with the T = 0 limits
/// (fermi: step with 1/2 at eps = eta; bose: 0 above eta).
double occupation(const BathSpec& b, double eps);

double spectral_density(const BathSpec& b, double omega);

/// Rate function: J(w)[1 - zeta f(w)] for w > 0 and J(-w) f(-w) for w < 0.
/// w = 0 throws ZeroFrequencyUnsupported; see lambda_rate_zero_branch.
double lambda_rate(const BathSpec& b, double omega);

/// The w = 0 branch J(0)[1 + (1 - zeta) f(0)], with J(0) taken as the limit of
/// the density at zero frequency.
double lambda_rate_zero_branch(const BathSpec& b);

/// gamma_{n,k} = J_n(Omega_k) |phi_{n,k}|^2 for bath b attached to mode n.
double coupling_constant(const BathSpec& b, const BogoliubovTransform& bt, std::size_t k);

/// Net decay rate of dressed mode k:
///   sum_n gamma_{n,k} [1 - zeta_n f_n(Omega_k) - f_n(Omega_k)].
/// Negative values mean incoherent gain.
double total_rate(const std::vector<BathSpec>& baths, const BogoliubovTransform& bt, std::size_t k);

}  // namespace qbme
