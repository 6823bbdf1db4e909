#include "qbme/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qbme/errors.hpp"

namespace qbme {

namespace {

constexpr double kPsdTolerance = 1e-10;

void require_supported(const std::vector<BathSpec>& baths, const BuildOptions& opts) {
  if (opts.neglect_lamb_shift) return;
  for (const auto& b : baths)
    if (!b.is_flat())
      throw UnsupportedLambShift("bath on mode " + std::to_string(b.mode) +
                                 " is not flat; its Lamb shift is not implemented "
                                 "(set neglect_lamb_shift to drop it)");
}

void prune(LindbladModel& m) {
  const double cut = kRatePruneFraction * m.max_rate();
  std::erase_if(m.jumps, [&](const JumpTerm& j) { return j.rate <= cut; });
  std::erase_if(m.cross_blocks,
                [&](const CrossJumpBlock& b) { return b.rate_matrix.cwiseAbs().maxCoeff() <= cut; });
}

void push_dressed_pair(LindbladModel& m, const BathSpec& b, const BogoliubovTransform& bt, std::size_t k) {
  const auto kk = static_cast<Eigen::Index>(k);
  const double w = bt.dressed_freq(kk);
  const double weight = std::norm(phi_coefficients(bt, b.mode)(kk));
  const NambuVector op = bt.dressed_mode(k);
  m.jumps.push_back({op, weight * lambda_rate(b, w)});
  m.jumps.push_back({op.dagger(), weight * lambda_rate(b, -w)});
}

void require_valid(const QuadraticSystem& sys, const std::vector<BathSpec>& baths) {
  sys.validate();
  validate_baths(baths, sys.n_modes());
}

}  // namespace

void LindbladModel::validate() const {
  hamiltonian.validate();
  const auto dim = static_cast<Eigen::Index>(2 * n_modes());
  for (const auto& j : jumps) {
    if (j.op.coeffs().size() != dim) throw DimensionError("jump operator dimension mismatch");
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) throw InvalidModel("jump rate must be finite and >= 0");
  }
  for (const auto& b : cross_blocks) {
    const auto n = static_cast<Eigen::Index>(b.ops.size());
    if (b.rate_matrix.rows() != n || b.rate_matrix.cols() != n)
      throw DimensionError("rate matrix does not match operator count");
    for (const auto& op : b.ops)
      if (op.coeffs().size() != dim) throw DimensionError("jump operator dimension mismatch");
    const double scale = std::max(1.0, b.rate_matrix.norm());
    if ((b.rate_matrix - b.rate_matrix.adjoint()).norm() > kPsdTolerance * scale)
      throw InvalidModel("rate matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b.rate_matrix);
    if (es.eigenvalues().minCoeff() < -kPsdTolerance * scale)
      throw InvalidModel("rate matrix is not positive semidefinite");
  }
  if (frame) {
    if (frame->frequencies.size() != n_modes()) throw DimensionError("frame needs one frequency per mode");
    if (frame->basis == Basis::dressed && !transform)
      throw FrameError("dressed frame requires the model's Bogoliubov transform");
  }
  if (transform && transform->n_modes() != n_modes())
    throw DimensionError("transform dimension mismatch");
}

double LindbladModel::max_rate() const {
  double r = 0.0;
  for (const auto& j : jumps) r = std::max(r, j.rate);
  for (const auto& b : cross_blocks) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b.rate_matrix, Eigen::EigenvaluesOnly);
    r = std::max(r, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return r;
}

LindbladModel build_local(const QuadraticSystem& sys, const std::vector<BathSpec>& baths, BuildOptions opts) {
  require_valid(sys, baths);
  require_supported(baths, opts);
  LindbladModel m;
  m.hamiltonian = sys;
  m.basis = Basis::bare;
  const std::size_t n = sys.n_modes();
  for (const auto& b : baths) {
    const double w = sys.omega[b.mode];
    m.jumps.push_back({NambuVector::annihilation(n, b.mode), lambda_rate(b, w)});
    m.jumps.push_back({NambuVector::creation(n, b.mode), lambda_rate(b, -w)});
  }
  prune(m);
  m.validate();
  return m;
}

LindbladModel build_global(const QuadraticSystem& sys, const std::vector<BathSpec>& baths, BuildOptions opts) {
  require_valid(sys, baths);
  require_supported(baths, opts);
  BogoliubovTransform bt = diagonalize(sys);
  for (const auto& group : dressed_eigenspaces(bt))
    if (group.size() > 1)
      throw DegenerateSpectrum("dressed frequency " + std::to_string(bt.dressed_freq(static_cast<Eigen::Index>(group[0]))) +
                               " is degenerate; use build_global_degenerate");
  LindbladModel m;
  m.hamiltonian = sys;
  m.basis = Basis::dressed;
  for (const auto& b : baths)
    for (std::size_t k = 0; k < bt.n_modes(); ++k) push_dressed_pair(m, b, bt, k);
  m.transform = std::move(bt);
  prune(m);
  m.validate();
  return m;
}

LindbladModel build_global_degenerate(const QuadraticSystem& sys, const std::vector<BathSpec>& baths,
                                      BuildOptions opts) {
  require_valid(sys, baths);
  require_supported(baths, opts);
  BogoliubovTransform bt = diagonalize(sys);
  const auto groups = dressed_eigenspaces(bt);
  LindbladModel m;
  m.hamiltonian = sys;
  m.basis = Basis::dressed;
  for (const auto& b : baths) {
    const CVector phi = phi_coefficients(bt, b.mode);
    for (const auto& group : groups) {
      if (group.size() == 1) {
        push_dressed_pair(m, b, bt, group[0]);
        continue;
      }
      const double w = bt.dressed_freq(static_cast<Eigen::Index>(group[0]));
      const auto d = static_cast<Eigen::Index>(group.size());
      CVector p(d);
      CrossJumpBlock down;
      CrossJumpBlock up;
      for (Eigen::Index i = 0; i < d; ++i) {
        const std::size_t k = group[static_cast<std::size_t>(i)];
        p(i) = phi(static_cast<Eigen::Index>(k));
        down.ops.push_back(bt.dressed_mode(k));
        up.ops.push_back(bt.dressed_mode(k).dagger());
      }
      down.rate_matrix = lambda_rate(b, w) * (p * p.adjoint());
      up.rate_matrix = lambda_rate(b, -w) * (p.conjugate() * p.transpose());
      m.cross_blocks.push_back(std::move(down));
      m.cross_blocks.push_back(std::move(up));
    }
  }
  m.transform = std::move(bt);
  prune(m);
  m.validate();
  return m;
}

CMatrix kossakowski_matrix(const LindbladModel& model) {
  const auto dim = static_cast<Eigen::Index>(2 * model.n_modes());
  CMatrix k = CMatrix::Zero(dim, dim);
  for (const auto& j : model.jumps) k += j.rate * (j.op.coeffs() * j.op.coeffs().adjoint());
  for (const auto& b : model.cross_blocks) {
    CMatrix ops(dim, static_cast<Eigen::Index>(b.ops.size()));
    for (std::size_t i = 0; i < b.ops.size(); ++i) ops.col(static_cast<Eigen::Index>(i)) = b.ops[i].coeffs();
    k += ops * b.rate_matrix * ops.adjoint();
  }
  return k;
}

}  // namespace qbme
