#include "qbme/bath.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbme/errors.hpp"

namespace qbme {

void BathSpec::validate() const {
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw InvalidModel("bath temperature must be finite and non-negative");
  if (!std::isfinite(chemical_potential)) throw InvalidModel("non-finite chemical potential");
  if (const auto* f = std::get_if<FlatDensity>(&spectral_density)) {
    if (!(f->value >= 0.0) || !std::isfinite(f->value))
      throw InvalidModel("flat spectral density must be finite and non-negative");
  } else {
    const auto& o = std::get<OhmicDensity>(spectral_density);
    if (!(o.alpha >= 0.0) || !std::isfinite(o.alpha)) throw InvalidModel("ohmic alpha must be non-negative");
    if (!(o.cutoff > 0.0)) throw InvalidModel("ohmic cutoff must be positive");
  }
}

void validate_baths(const std::vector<BathSpec>& baths, std::size_t n_modes) {
  std::vector<bool> used(n_modes, false);
  for (const auto& b : baths) {
    b.validate();
    if (b.mode >= n_modes)
      throw DimensionError("bath attached to mode " + std::to_string(b.mode) + " of " +
                           std::to_string(n_modes));
    if (used[b.mode]) throw InvalidModel("more than one bath on mode " + std::to_string(b.mode));
    used[b.mode] = true;
  }
}

double occupation(const BathSpec& b, double eps) {
  const double x = eps - b.chemical_potential;
  if (b.statistics == Statistics::bose) {
    if (x <= 0.0)
      throw DivergentOccupation("bose occupation at eps <= eta (eps=" + std::to_string(eps) +
                                ", eta=" + std::to_string(b.chemical_potential) + ")");
    if (b.temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(x / b.temperature);
  }
  if (b.temperature == 0.0) return x < 0.0 ? 1.0 : (x > 0.0 ? 0.0 : 0.5);
  const double y = x / b.temperature;
  // 1/(1+e^y) written to avoid overflow for large |y|.
  return y > 0.0 ? std::exp(-y) / (1.0 + std::exp(-y)) : 1.0 / (1.0 + std::exp(y));
}

double spectral_density(const BathSpec& b, double omega) {
  if (!(omega > 0.0)) throw NonPositiveFrequency("spectral density needs omega > 0");
  if (const auto* f = std::get_if<FlatDensity>(&b.spectral_density)) return f->value;
  const auto& o = std::get<OhmicDensity>(b.spectral_density);
  return std::numbers::pi * o.alpha * omega * std::exp(-omega / o.cutoff);
}

double lambda_rate(const BathSpec& b, double omega) {
  if (omega == 0.0) throw ZeroFrequencyUnsupported("rate at zero frequency");
  if (omega > 0.0) return spectral_density(b, omega) * (1.0 - zeta(b.statistics) * occupation(b, omega));
  return spectral_density(b, -omega) * occupation(b, -omega);
}

double lambda_rate_zero_branch(const BathSpec& b) {
  const double j0 = b.is_flat() ? std::get<FlatDensity>(b.spectral_density).value : 0.0;
  return j0 * (1.0 + (1.0 - zeta(b.statistics)) * occupation(b, 0.0));
}

double coupling_constant(const BathSpec& b, const BogoliubovTransform& bt, std::size_t k) {
  if (k >= bt.n_modes()) throw DimensionError("dressed mode index out of range");
  const CVector phi = phi_coefficients(bt, b.mode);
  const double w = bt.dressed_freq(static_cast<Eigen::Index>(k));
  return spectral_density(b, w) * std::norm(phi(static_cast<Eigen::Index>(k)));
}

double total_rate(const std::vector<BathSpec>& baths, const BogoliubovTransform& bt, std::size_t k) {
  if (k >= bt.n_modes()) throw DimensionError("dressed mode index out of range");
  const double w = bt.dressed_freq(static_cast<Eigen::Index>(k));
  double rate = 0.0;
  for (const auto& b : baths) {
    const double f = occupation(b, w);
    rate += coupling_constant(b, bt, k) * (1.0 - zeta(b.statistics) * f - f);
  }
  return rate;
}

}  // namespace qbme
