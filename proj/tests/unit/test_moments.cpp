#include <doctest.h>

#include <cmath>
#include <random>

#include "qbme/errors.hpp"
#include "qbme/moments.hpp"
#include "support.hpp"

using namespace qbme;
using qbme::test::flat_loss;
using qbme::test::flat_pump;

namespace {

const cplx I{0.0, 1.0};

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) { return (CMatrix(2, 2) << a, b, c, d).finished(); }

}  // namespace

TEST_CASE("damped oscillator drift and propagation") {
  const LindbladModel m = build_local(QuadraticSystem::uncoupled({2.0}), {flat_loss(0, 0.3)});
  const DriftMatrix d = drift(m);
  CHECK((d.m - mat2(-2.0 * I - 0.3, 0, 0, 2.0 * I - 0.3)).norm() < 1e-15);
  const CVector v = propagate(d, (CVector(2) << 1, 1).finished(), 1.7);
  CHECK(std::abs(v(0) - std::exp((-2.0 * I - 0.3) * 1.7)) < 1e-13);
  CHECK(std::abs(v(1) - std::exp((2.0 * I - 0.3) * 1.7)) < 1e-13);

  const LindbladModel gain = build_local(QuadraticSystem::uncoupled({2.0}), {flat_pump(0, 0.3)});
  CHECK(drift(gain).m(0, 0) == -2.0 * I + 0.3);
}

TEST_CASE("closed beamsplitter gives a Hermitian effective Hamiltonian") {
  const LindbladModel m = build_local(test::beamsplitter(5, 1), {});
  const EffectiveHamiltonian h = effective_hamiltonian(drift(m), {0, 1});
  CHECK((h.h - mat2(5, 1, 1, 5)).norm() < 1e-15);
  CHECK(h.mode_labels == std::vector<std::size_t>{0, 1});
}

TEST_CASE("textbook gain-loss dimer from the local master equation") {
  const LindbladModel m = build_local(test::beamsplitter(1, 0.2), {flat_loss(0, 0.1), flat_pump(1, 0.1)});
  const EffectiveHamiltonian h = effective_hamiltonian(drift(m), {0, 1});
  CHECK((h.h - mat2(1.0 - 0.1 * I, 0.2, 0.2, 1.0 + 0.1 * I)).norm() < 1e-15);

  const EffectiveHamiltonian direct = effective_hamiltonian(mat2(1.0 - 0.1 * I, 0.2, 0.2, 1.0 + 0.1 * I));
  CHECK(direct.h == h.h);
  CHECK(direct.mode_labels == std::vector<std::size_t>{0, 1});
}

TEST_CASE("pairing moments couple a and a^+") {
  const LindbladModel m = build_local(test::pairing(5, 3), {});
  const DriftMatrix d = drift(m);
  CHECK(d.m(0, 3) == -3.0 * I);
  CHECK(d.m(2, 1) == 3.0 * I);
  CHECK_THROWS_AS(effective_hamiltonian(d, {0, 1}), NotClosed);
  CHECK_THROWS_AS(effective_hamiltonian(d, {0}), NotClosed);
}

TEST_CASE("degenerate dressed dynamics in the rotating frame") {
  // Dressed frequency sqrt(25 - 9) = 4 for both modes.
  const QuadraticSystem s = test::pairing(5, 3);
  const double j1 = 0.1, j2 = 0.05;
  const LindbladModel m = build_global_degenerate(s, {flat_loss(0, j1), flat_pump(1, j2)});
  const DriftMatrix d = with_frame(drift(m, Basis::dressed, diagonalize(s)), {4.0, 4.0});
  const EffectiveHamiltonian h = effective_hamiltonian(d, {0, 1});

  const double w = 5.0 / 4.0;
  const double lp = j1 + j2, lm = j1 - j2;
  CHECK(std::abs(h.h(0, 0) - (-I * (w * lm + lp) / 2.0)) < 1e-13);
  CHECK(std::abs(h.h(1, 1) - (-I * (w * lm - lp) / 2.0)) < 1e-13);
  // The off-diagonal sign depends on the relative phase of the dressed modes.
  CHECK(std::abs(std::abs(h.h(0, 1)) - std::sqrt(w * w - 1.0) * lm / 2.0) < 1e-13);
  CHECK(std::abs(h.h(0, 1) - h.h(1, 0)) < 1e-15);

  // Eigenvalues (i/2)(-+R - W lm), R = sqrt(lp^2 + (W^2 - 1) lm^2): purely imaginary.
  const double r = std::sqrt(lp * lp + (w * w - 1.0) * lm * lm);
  Eigen::ComplexEigenSolver<CMatrix> es(h.h);
  std::vector<double> got{es.eigenvalues()(0).imag(), es.eigenvalues()(1).imag()};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(0.5 * (-r - w * lm)).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(0.5 * (r - w * lm)).epsilon(1e-12));
  for (int k = 0; k < 2; ++k) CHECK(std::abs(es.eigenvalues()(k).real()) < 1e-13);
}

TEST_CASE("symmetric baths leave the degenerate modes uncoupled") {
  const QuadraticSystem s = test::pairing(5, 3);
  const LindbladModel m = build_global_degenerate(s, {flat_loss(0, 0.1), flat_pump(1, 0.1)});
  const DriftMatrix d = with_frame(drift(m, Basis::dressed), {4.0, 4.0});
  const EffectiveHamiltonian h = effective_hamiltonian(d, {0, 1});
  CHECK((h.h - mat2(-0.1 * I, 0, 0, 0.1 * I)).norm() < 1e-14);
}

TEST_CASE("dressed drift is the bare drift in new coordinates") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticSystem s = test::random_stable(rng, 3);
    const BogoliubovTransform bt = diagonalize(s);
    const LindbladModel m = build_global(s, {flat_loss(0, 0.2), flat_pump(1, 0.1)});
    const CMatrix bare = drift(m, Basis::bare).m;
    const CMatrix dressed = drift(m, Basis::dressed, bt).m;
    CHECK((dressed - bt.t * bare * bt.t_inv).norm() < 1e-12 * bare.norm());
    // Closed dressed dynamics are diagonal: each b_k only decays or grows.
    const CMatrix closed = drift(build_global(s, {}), Basis::dressed, bt).m;
    CHECK((closed - CMatrix(closed.diagonal().asDiagonal())).norm() < 1e-10);
  }
}

TEST_CASE("drift respects Nambu conjugation symmetry") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticSystem s = test::random_stable(rng, 2 + static_cast<std::size_t>(trial % 2));
    const LindbladModel local = build_local(s, {flat_loss(0, 0.2), flat_pump(1, 0.1)});
    const LindbladModel global = build_global_degenerate(s, {flat_loss(0, 0.2), flat_pump(1, 0.1)});
    CHECK(conjugation_residual(drift(local)) < 1e-14);
    CHECK(conjugation_residual(drift(global)) < 1e-13);
    CHECK(conjugation_residual(drift(global, Basis::dressed)) < 1e-12);
  }
  CHECK(conjugation_residual(drift(build_global_degenerate(test::pairing(5, 3), {flat_loss(0, 0.1)}),
                                   Basis::dressed)) < 1e-13);
}

TEST_CASE("rotating frames shift the spectrum and are checked for consistency") {
  const LindbladModel m = build_local(test::beamsplitter(1, 0.2), {flat_loss(0, 0.1), flat_pump(1, 0.1)});
  const DriftMatrix lab = drift(m);
  const DriftMatrix rot = with_frame(lab, {1.0, 1.0});
  const EffectiveHamiltonian h = effective_hamiltonian(rot, {0, 1});
  CHECK((h.h - mat2(-0.1 * I, 0.2, 0.2, 0.1 * I)).norm() < 1e-15);
  CHECK(rot.frame == std::vector<double>{1.0, 1.0});
  CHECK((shift_frame(lab, 1.0).m - rot.m).norm() == 0.0);
  // Unequal frequencies on coupled modes do not commute with the generator.
  CHECK_THROWS_AS(with_frame(lab, {1.0, 0.5}), FrameError);
  // Uncoupled modes tolerate any rotation.
  const DriftMatrix free = drift(build_local(QuadraticSystem::uncoupled({2.0, 3.0}), {}));
  CHECK(effective_hamiltonian(with_frame(free, {2.0, 3.0}), {0, 1}).h.norm() < 1e-15);
}

TEST_CASE("frames stored on the model are applied") {
  LindbladModel m = build_local(test::beamsplitter(1, 0.2), {});
  m.frame = Frame{Basis::bare, {1.0, 1.0}};
  const DriftMatrix d = drift(m);
  CHECK(d.frame == std::vector<double>{1.0, 1.0});
  CHECK((effective_hamiltonian(d, {0, 1}).h - mat2(0, 0.2, 0.2, 0)).norm() < 1e-15);
}

TEST_CASE("recentering removes the real part of the trace") {
  const EffectiveHamiltonian h = effective_hamiltonian(mat2(3.0 - I, 0.5, 0.5, 5.0 + 0.2 * I));
  const EffectiveHamiltonian c = recenter(h);
  CHECK(std::abs(c.h.trace().real()) < 1e-15);
  CHECK(c.h.trace().imag() == doctest::Approx(h.h.trace().imag()));
  CHECK(c.h(0, 1) == h.h(0, 1));
}

TEST_CASE("sub-block extraction honours mode labels") {
  const LindbladModel m = build_local(QuadraticSystem::uncoupled({1.0, 2.0, 3.0}), {flat_loss(2, 0.5)});
  const EffectiveHamiltonian h = effective_hamiltonian(drift(m), {2});
  CHECK(h.h.rows() == 1);
  CHECK(h.h(0, 0) == 3.0 - 0.5 * I);
  CHECK(h.mode_labels == std::vector<std::size_t>{2});
  CHECK_THROWS(effective_hamiltonian(drift(m), {3}));
}
