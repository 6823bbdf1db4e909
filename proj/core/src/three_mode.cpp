#include "qbme/three_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbme/errors.hpp"
#include "qbme/lindblad.hpp"
#include "qbme/reduction.hpp"

namespace qbme {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kGainChemicalPotential = 1e9;

BathSpec flat_bath(std::size_t mode, double rate) {
  BathSpec b;
  b.mode = mode;
  b.spectral_density = FlatDensity{std::abs(rate)};
  if (rate < 0.0) {
    b.statistics = Statistics::fermi;
    b.chemical_potential = kGainChemicalPotential;
  }
  return b;
}

// Roots of f on [lo, hi] from a uniform scan plus bisection. Sign changes
// across poles are rejected by requiring |f| to shrink at the root.
template <class F>
std::vector<double> scan_roots(F f, double lo, double hi, std::size_t samples = 20000) {
  std::vector<double> roots;
  double x0 = lo;
  double f0 = f(x0);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples);
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1) && (f0 < 0.0) != (f1 < 0.0)) {
      double a = x0;
      double b = x1;
      double fa = f0;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double r = 0.5 * (a + b);
      if (std::abs(f(r)) <= 1e-6 * std::max({1.0, std::abs(f0), std::abs(f1)})) roots.push_back(r);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

QuadraticSystem three_mode_system(const ThreeModeParams& p) {
  const double w1 = p.omega3 + p.delta_prime;
  QuadraticSystem sys = QuadraticSystem::uncoupled({w1, w1 - p.epsilon, p.omega3});
  sys.couple(0, 2, p.g);
  sys.couple(1, 2, p.g);
  return sys;
}

std::vector<BathSpec> three_mode_baths(const ThreeModeParams& p) {
  return {flat_bath(0, p.gamma1), flat_bath(1, p.gamma2), flat_bath(2, p.gamma3)};
}

DriftMatrix three_mode_drift(const ThreeModeParams& p) {
  LindbladModel m = build_global_degenerate(three_mode_system(p), three_mode_baths(p));
  m.frame = Frame{Basis::bare, {p.omega3, p.omega3, p.omega3}};
  return drift(m, Basis::bare);
}

EffectiveHamiltonian three_mode_reduced(const ThreeModeParams& p, bool recentered) {
  EffectiveHamiltonian h = eliminate(three_mode_drift(p), {2});
  return recentered ? recenter(h) : h;
}

double perturbative_ep_detuning(double g, double delta_prime, double gamma1) {
  return 2.0 * g * g * gamma1 / (delta_prime * delta_prime);
}

CMatrix perturbative_hamiltonian(double g, double delta_prime, double gamma1, double epsilon) {
  const cplx off = -kI * g * g * gamma1 / (delta_prime * delta_prime);
  CMatrix h(2, 2);
  h << -kI * gamma1 + 0.5 * epsilon, off, off, -kI * gamma1 - 0.5 * epsilon;
  return h;
}

CMatrix approximate_transform(double g, double delta_prime) {
  const double r = g / delta_prime;
  CMatrix u(3, 3);
  u << 1.0, r, r, -r, 1.0, r, -r, -r, 1.0;
  return u;
}

double transform_discrepancy(const ThreeModeParams& p) {
  const BogoliubovTransform bt = diagonalize(three_mode_system(p));
  const CMatrix approx = approximate_transform(p.g, p.delta_prime);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < 3; ++r) {
    Eigen::Index dominant = 0;
    const CVector mu = bt.t.row(r).head(3).transpose();
    mu.cwiseAbs().maxCoeff(&dominant);
    worst = std::max(worst, (mu.transpose() - approx.row(dominant)).cwiseAbs().maxCoeff());
  }
  return worst;
}

ExactRegimeCoefficients exact_regime_coefficients(double g, double dp, double g1, double g3) {
  const double g2 = g * g;
  const double d2 = dp * dp;
  const double dg2 = d2 + 2.0 * g2;
  // Dressed rates of the symmetric/antisymmetric pair and of the mode-3-like mode.
  const double rs = (g1 * (d2 + g2) + g3 * g2) / dg2;
  const double r0 = (2.0 * g2 * g1 + g3 * d2) / dg2;
  const double q = (2.0 * g2 * rs + d2 * r0) / dg2;
  const double x = g * dp * (rs - r0) / dg2;
  const double rho = (rs * (d2 + g2) + r0 * g2) / dg2;
  const double r12 = (rs - r0) * g2 / dg2;
  ExactRegimeCoefficients c;
  c.K = rho + (g2 - x * x) / q;
  c.P = dp - 2.0 * g * x / q;
  c.C = r12 + (g2 + x * x) / q;
  return c;
}

CMatrix exact_regime_hamiltonian(double g, double dp, double g1, double g3) {
  const ExactRegimeCoefficients c = exact_regime_coefficients(g, dp, g1, g3);
  CMatrix h(2, 2);
  h << -kI * c.K + c.P, -kI * c.C, -kI * c.C, -kI * c.K - c.P;
  return h;
}

ThreeModeEPConditions ep_conditions_three_mode(double g, double dp, double g1, double g3) {
  if (!(dp > 0.0)) throw InvalidModel("delta_prime must be positive");
  const ExactRegimeCoefficients c = exact_regime_coefficients(g, dp, g1, g3);
  return {std::abs(c.C) - std::abs(c.P), c.K};
}

std::vector<double> pt_branch_gamma3(double g, double dp, double g1) {
  const double g2 = g * g;
  const double d2 = dp * dp;
  const double dg2 = d2 + 2.0 * g2;
  // K = 0 cleared of denominators is quadratic in Gamma3.
  const double a = g2 * (d2 * d2 + d2 * g2 + g2 * g2);
  const double b = g1 * (d2 * d2 * d2 + 2.0 * d2 * d2 * g2 + 5.0 * d2 * g2 * g2 + 4.0 * g2 * g2 * g2);
  const double c = g2 * dg2 * dg2 * dg2 + 3.0 * g1 * g1 * g2 * (d2 + g2) * (d2 + g2);
  const double disc = b * b - 4.0 * a * c;
  if (a == 0.0 || disc < 0.0) return {};
  const double s = std::sqrt(disc);
  // Cancellation-free pair of roots.
  const double qq = -0.5 * (b + std::copysign(s, b));
  std::vector<double> roots{qq / a, c / qq};
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> anti_pt_gamma1(double g, double dp, double g3, double lo, double hi) {
  return scan_roots([&](double g1) { return ep_conditions_three_mode(g, dp, g1, g3).anti_pt_residual; }, lo, hi);
}

std::vector<double> pt_ep_gamma1(double g, double dp, double lo, double hi) {
  auto f = [&](double g1) {
    const auto r = pt_branch_gamma3(g, dp, g1);
    if (r.empty()) return std::numeric_limits<double>::quiet_NaN();
    return ep_conditions_three_mode(g, dp, g1, r.front()).anti_pt_residual;
  };
  return scan_roots(f, lo, hi);
}

double PrintedExactRegime::kappa(double g, double dp, double g1, double g3) {
  const double g2 = g * g;
  return dp * dp * (g2 + g1 * g3) + g2 * (2.0 * g2 + g1 * g1 + g1 * g3);
}

double PrintedExactRegime::chi(double g, double dp, double g1, double g3) {
  const double g2 = g * g;
  return g2 * (dp * dp + 2.0 * g2 + g1 * g1 - g1 * g3);
}

double PrintedExactRegime::anti_pt_gamma1(double g, double dp) { return dp * (dp * dp + 2.0 * g * g) / (g * g); }

double PrintedExactRegime::pt_gamma3(double g, double dp, double g1) {
  const double g2 = g * g;
  return g2 * (2.0 * g2 + dp * dp + g1 * g1) / ((g2 + dp * dp) * std::abs(g1));
}

}  // namespace qbme
