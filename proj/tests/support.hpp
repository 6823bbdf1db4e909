#pragma once

#include <complex>
#include <random>

#include "qbme/bath.hpp"
#include "qbme/nambu.hpp"

namespace qbme::test {

inline BathSpec flat_loss(std::size_t mode, double rate) {
  BathSpec b;
  b.mode = mode;
  b.spectral_density = FlatDensity{rate};
  return b;
}

// Zero-temperature fermi bath with its chemical potential far above the modes.
inline BathSpec flat_pump(std::size_t mode, double rate, double eta = 100.0) {
  BathSpec b = flat_loss(mode, rate);
  b.statistics = Statistics::fermi;
  b.chemical_potential = eta;
  return b;
}

inline QuadraticSystem beamsplitter(double omega, double lambda) {
  QuadraticSystem s = QuadraticSystem::uncoupled({omega, omega});
  s.couple(0, 1, lambda);
  return s;
}

inline QuadraticSystem pairing(double omega, double g) {
  QuadraticSystem s = QuadraticSystem::uncoupled({omega, omega});
  s.couple(0, 1, {}, g);
  return s;
}

// Random stable system: frequencies in [2, 5], couplings small enough that
// A - |B| stays positive definite.
inline QuadraticSystem random_stable(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> w(2.0, 5.0);
  std::uniform_real_distribution<double> c(-0.3, 0.3);
  std::vector<double> omega(n);
  for (auto& x : omega) x = w(rng);
  QuadraticSystem s = QuadraticSystem::uncoupled(omega);
  for (std::size_t k = 0; k < n; ++k) s.chi[k] = {c(rng), c(rng)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.couple(i, j, {c(rng), c(rng)}, {c(rng), c(rng)});
  return s;
}

}  // namespace qbme::test
