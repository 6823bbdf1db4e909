#include "qbme/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbme/errors.hpp"

namespace qbme {

namespace {

constexpr cplx kI{0.0, 1.0};

CMatrix frame_generator(const std::vector<double>& f) {
  const auto n = static_cast<Eigen::Index>(f.size());
  CMatrix r = CMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r(k, k) = kI * f[static_cast<std::size_t>(k)];
    r(k + n, k + n) = -kI * f[static_cast<std::size_t>(k)];
  }
  return r;
}

// Rotation that commutes with G, else FrameError.
void check_commutes(const CMatrix& g, const CMatrix& r) {
  const double scale = std::max(g.norm(), 1.0) * std::max(r.norm(), 1.0);
  const double c = (g * r - r * g).norm();
  if (c > 1e-10 * scale)
    throw FrameError("rotating frame does not commute with the drift (residual " + std::to_string(c / scale) +
                     "); the rotated dynamics would be time dependent");
}

DriftMatrix in_basis(const LindbladModel& model, Basis basis, const BogoliubovTransform* bt) {
  model.validate();
  const CMatrix g = lab_drift(model);
  auto to_basis = [&](const CMatrix& bare, Basis target) -> CMatrix {
    if (target == Basis::bare) return bare;
    if (bt == nullptr) throw FrameError("dressed basis requested but no Bogoliubov transform is available");
    return bt->t * bare * bt->t_inv;
  };
  auto from_basis = [&](const CMatrix& m, Basis source) -> CMatrix {
    if (source == Basis::bare) return m;
    return bt->t_inv * m * bt->t;
  };

  DriftMatrix d;
  d.basis = basis;
  if (!model.frame) {
    d.m = to_basis(g, basis);
    return d;
  }
  const Frame& fr = *model.frame;
  const CMatrix in_frame_basis = to_basis(g, fr.basis);
  const CMatrix r = frame_generator(fr.frequencies);
  check_commutes(in_frame_basis, r);
  d.m = to_basis(from_basis(in_frame_basis + r, fr.basis), basis);
  // The recorded frame is only meaningful per mode when expressed in the same basis.
  if (fr.basis == basis) d.frame = fr.frequencies;
  return d;
}

}  // namespace

CMatrix commutator_matrix(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  CMatrix j = CMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
  return j;
}

CMatrix lab_drift(const LindbladModel& model) {
  const std::size_t n = model.n_modes();
  const CMatrix j = commutator_matrix(n);
  const CMatrix s = nambu_swap(n);
  // [x, H] = M^T x for the HB matrix M, so d<x>/dt = -i M^T <x>.
  CMatrix g = -kI * build_hb_matrix(model.hamiltonian).m.transpose();
  for (const auto& jump : model.jumps) {
    const CVector& l = jump.op.coeffs();
    const CVector lbar = s * l.conjugate();
    g += jump.rate * (j * l * lbar.transpose() - j * lbar * l.transpose());
  }
  for (const auto& block : model.cross_blocks) {
    for (std::size_t mu = 0; mu < block.ops.size(); ++mu) {
      const CVector& lm = block.ops[mu].coeffs();
      for (std::size_t nu = 0; nu < block.ops.size(); ++nu) {
        const cplx r = block.rate_matrix(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu));
        if (r == cplx{}) continue;
        const CVector lbar = s * block.ops[nu].coeffs().conjugate();
        g += r * (j * lm * lbar.transpose() - j * lbar * lm.transpose());
      }
    }
  }
  return g;
}

DriftMatrix drift(const LindbladModel& model, Basis basis) {
  return in_basis(model, basis, model.transform ? &*model.transform : nullptr);
}

DriftMatrix drift(const LindbladModel& model, Basis basis, const BogoliubovTransform& bt) {
  return in_basis(model, basis, &bt);
}

DriftMatrix with_frame(const DriftMatrix& d, const std::vector<double>& frequencies) {
  if (frequencies.size() != d.n_modes()) throw DimensionError("frame needs one frequency per mode");
  const CMatrix r = frame_generator(frequencies);
  check_commutes(d.m, r);
  DriftMatrix out = d;
  out.m += r;
  if (out.frame.empty()) out.frame.assign(frequencies.size(), 0.0);
  for (std::size_t k = 0; k < frequencies.size(); ++k) out.frame[k] += frequencies[k];
  return out;
}

DriftMatrix shift_frame(const DriftMatrix& d, double delta) {
  return with_frame(d, std::vector<double>(d.n_modes(), delta));
}

EffectiveHamiltonian effective_hamiltonian(const DriftMatrix& d, const std::vector<std::size_t>& modes) {
  const auto n = static_cast<Eigen::Index>(d.n_modes());
  std::vector<bool> keep(static_cast<std::size_t>(2 * n), false);
  for (std::size_t k : modes) {
    if (k >= d.n_modes()) throw DimensionError("mode index out of range");
    keep[k] = true;
  }
  const double tol = kClosureTolerance * d.m.norm();
  double leak = 0.0;
  for (std::size_t k : modes)
    for (Eigen::Index c = 0; c < 2 * n; ++c)
      if (!keep[static_cast<std::size_t>(c)]) leak = std::max(leak, std::abs(d.m(static_cast<Eigen::Index>(k), c)));
  if (leak > tol)
    throw NotClosed("retained modes couple to excluded operators (|G| = " + std::to_string(leak) + ")");

  EffectiveHamiltonian h;
  h.mode_labels = modes;
  const auto m = static_cast<Eigen::Index>(modes.size());
  h.h.resize(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      h.h(r, c) = kI * d.m(static_cast<Eigen::Index>(modes[static_cast<std::size_t>(r)]),
                           static_cast<Eigen::Index>(modes[static_cast<std::size_t>(c)]));
  return h;
}

EffectiveHamiltonian effective_hamiltonian(CMatrix h) {
  if (h.rows() != h.cols()) throw DimensionError("effective Hamiltonian must be square");
  EffectiveHamiltonian out;
  for (Eigen::Index k = 0; k < h.rows(); ++k) out.mode_labels.push_back(static_cast<std::size_t>(k));
  out.h = std::move(h);
  return out;
}

EffectiveHamiltonian recenter(const EffectiveHamiltonian& h) {
  EffectiveHamiltonian out = h;
  const auto n = h.h.rows();
  if (n == 0) return out;
  const double shift = h.h.trace().real() / static_cast<double>(n);
  out.h.diagonal().array() -= shift;
  return out;
}

CVector propagate(const CMatrix& g, const CVector& v0, double t) {
  if (t < 0.0) throw InvalidModel("propagation time must be non-negative");
  if (v0.size() != g.rows()) throw DimensionError("state vector dimension mismatch");
  if (t == 0.0) return v0;
  const CMatrix e = (g * t).exp();
  return e * v0;
}

CVector propagate(const DriftMatrix& d, const CVector& v0, double t) { return propagate(d.m, v0, t); }

double conjugation_residual(const DriftMatrix& d) {
  const CMatrix s = nambu_swap(d.n_modes());
  return (d.m - s * d.m.conjugate() * s).norm();
}

}  // namespace qbme
