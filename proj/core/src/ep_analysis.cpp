#include "qbme/ep_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qbme/errors.hpp"

namespace qbme {

namespace {

constexpr double kGolden = 0.6180339887498949;

// True if every eigenvalue can be paired with a distinct eigenvalue equal to
// map(E) within tol.
template <class Map>
bool closed_under(const CVector& e, double tol, Map map) {
  std::vector<bool> used(static_cast<std::size_t>(e.size()), false);
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const cplx target = map(e(i));
    Eigen::Index best = -1;
    double best_d = tol;
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(e(j) - target);
      if (d <= best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best < 0) return false;
    used[static_cast<std::size_t>(best)] = true;
  }
  return true;
}

double scale_of(const CMatrix& h) { return std::max(h.norm(), std::numeric_limits<double>::min()); }

template <class F>
double golden_minimize(F f, double a, double b, int max_iter) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && std::abs(b - a) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) + 1e-300; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

template <class F>
double bisect(F f, double a, double b, int max_iter) {
  double fa = f(a);
  for (int it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

struct Refinement {
  double location = 0.0;
  double residual = 0.0;
  bool converged = false;
};

Refinement refine_2x2(const Family& family, double lo, double mid, double hi, const ScanOptions& opts) {
  auto d_at = [&](double p) { return discriminant(family(p).h); };
  const cplx dl = d_at(lo);
  const cplx dm = d_at(mid);
  const cplx dh = d_at(hi);
  const double s2 = std::pow(scale_of(family(mid).h), 2);
  const bool real_d = std::abs(dl.imag()) <= 1e-9 * s2 && std::abs(dm.imag()) <= 1e-9 * s2 &&
                      std::abs(dh.imag()) <= 1e-9 * s2;
  Refinement r;
  auto re_d = [&](double p) { return d_at(p).real(); };
  if (real_d && (dl.real() < 0.0) != (dm.real() < 0.0)) {
    r.location = bisect(re_d, lo, mid, opts.max_iterations);
  } else if (real_d && (dm.real() < 0.0) != (dh.real() < 0.0)) {
    r.location = bisect(re_d, mid, hi, opts.max_iterations);
  } else if (dm == cplx{}) {
    r.location = mid;
  } else {
    r.location = golden_minimize([&](double p) { return std::abs(d_at(p)); }, lo, hi, opts.max_iterations);
  }
  const CMatrix h = family(r.location).h;
  r.residual = std::abs(discriminant(h));
  r.converged = r.residual < opts.discriminant_tolerance * std::pow(scale_of(h), 2);
  return r;
}

Refinement refine_general(const Family& family, double lo, double hi, const ScanOptions& opts) {
  auto f = [&](double p) {
    const SpectrumPoint s = spectrum(family(p), p);
    return s.min_gap * (1.0 - s.coalescence);
  };
  Refinement r;
  r.location = golden_minimize(f, lo, hi, opts.max_iterations);
  r.residual = f(r.location);
  r.converged = r.residual < std::sqrt(opts.discriminant_tolerance) * scale_of(family(r.location).h);
  return r;
}

}  // namespace

std::string to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::real_spectrum: return "real_spectrum";
    case SpectralClass::imaginary_spectrum: return "imaginary_spectrum";
    case SpectralClass::conjugate_pairs: return "conjugate_pairs";
    case SpectralClass::anti_conjugate_pairs: return "anti_conjugate_pairs";
    case SpectralClass::generic: return "generic";
  }
  return "generic";
}

SpectralClass classify(const CVector& e, double tol) {
  if (e.size() == 0) return SpectralClass::real_spectrum;
  const double t = tol * std::max(1.0, e.cwiseAbs().maxCoeff());
  if (e.imag().cwiseAbs().maxCoeff() < t) return SpectralClass::real_spectrum;
  if (e.real().cwiseAbs().maxCoeff() < t) return SpectralClass::imaginary_spectrum;
  if (closed_under(e, t, [](cplx z) { return std::conj(z); })) return SpectralClass::conjugate_pairs;
  if (closed_under(e, t, [](cplx z) { return -std::conj(z); })) return SpectralClass::anti_conjugate_pairs;
  return SpectralClass::generic;
}

SpectrumPoint spectrum(const EffectiveHamiltonian& h, double param_value) {
  SpectrumPoint p;
  p.param_value = param_value;
  const auto n = h.h.rows();
  if (n == 0) return p;
  Eigen::ComplexEigenSolver<CMatrix> es(h.h);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const CVector& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  p.eigenvalues.resize(n);
  CMatrix vecs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.eigenvalues(i) = ev(order[static_cast<std::size_t>(i)]);
    vecs.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]).normalized();
  }
  p.min_gap = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      p.min_gap = std::min(p.min_gap, std::abs(p.eigenvalues(i) - p.eigenvalues(j)));
      p.coalescence = std::max(p.coalescence, std::min(1.0, std::abs(vecs.col(i).dot(vecs.col(j)))));
    }
  p.classification = classify(p.eigenvalues);
  return p;
}

cplx discriminant(const CMatrix& h) {
  if (h.rows() != 2 || h.cols() != 2) throw DimensionError("discriminant needs a 2x2 matrix");
  const cplx half = 0.5 * (h(0, 0) - h(1, 1));
  return half * half + h(0, 1) * h(1, 0);
}

ScanResult ep_scan(const Family& family, double from, double to, std::size_t n_points, ScanOptions opts) {
  if (n_points < 3) throw InvalidModel("ep_scan needs at least 3 points");
  if (!(to > from)) throw InvalidModel("ep_scan needs from < to");
  ScanResult out;
  const double step = (to - from) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double p = i + 1 == n_points ? to : from + step * static_cast<double>(i);
    out.points.push_back(spectrum(family(p), p));
  }
  const auto& pts = out.points;
  for (std::size_t i = 1; i + 1 < n_points; ++i) {
    const double g = pts[i].min_gap;
    const bool local_min = g <= pts[i - 1].min_gap && g <= pts[i + 1].min_gap &&
                           (g < pts[i - 1].min_gap || g < pts[i + 1].min_gap);
    const bool two = pts[i].eigenvalues.size() == 2;
    // Grid-point eigenvector overlap depends on the basis and on how close the
    // grid lands, so 2x2 candidates are judged after refinement instead.
    if (!local_min || (!two && pts[i].coalescence < opts.candidate_coalescence)) continue;

    const double lo = pts[i - 1].param_value;
    const double hi = pts[i + 1].param_value;
    const Refinement r = two ? refine_2x2(family, lo, pts[i].param_value, hi, opts) : refine_general(family, lo, hi, opts);
    const SpectrumPoint at = spectrum(family(r.location), r.location);
    // A vanishing 2x2 discriminant is decisive even where the eigenvectors,
    // computed at a defective matrix, are numerically ill-defined, unless the
    // matrix is a multiple of the identity (a diabolic point).
    bool defective = false;
    if (two && r.converged) {
      const CMatrix h = family(r.location).h;
      const CMatrix traceless = h - 0.5 * h.trace() * CMatrix::Identity(2, 2);
      defective = traceless.norm() > 1e-6 * scale_of(h);
    }
    if (at.coalescence < opts.ep_coalescence && !defective) continue;

    const bool duplicate = std::any_of(out.eps.begin(), out.eps.end(), [&](const EPReport& e) {
      return std::abs(e.location - r.location) <= 1e-9 * std::max(1.0, std::abs(to - from));
    });
    if (duplicate) continue;

    EPReport rep;
    rep.location = r.location;
    rep.refined = r.converged;
    rep.discriminant_residual = r.residual;
    rep.coalescence = at.coalescence;
    std::size_t below = 0;
    std::size_t above = n_points - 1;
    for (std::size_t k = 0; k < n_points; ++k) {
      if (pts[k].param_value < r.location) below = k;
      if (pts[k].param_value > r.location) {
        above = k;
        break;
      }
    }
    rep.symmetry_side_low = pts[below].classification;
    rep.symmetry_side_high = pts[above].classification;
    out.eps.push_back(rep);
  }
  return out;
}

}  // namespace qbme
