#include <benchmark/benchmark.h>

#include <random>

#include "qbme/ep_analysis.hpp"
#include "qbme/fock_oracle.hpp"
#include "qbme/lindblad.hpp"
#include "qbme/moments.hpp"
#include "qbme/nambu.hpp"
#include "qbme/reduction.hpp"
#include "qbme/three_mode.hpp"

namespace {

using namespace qbme;

QuadraticSystem chain(std::size_t n) {
  std::vector<double> omega;
  for (std::size_t k = 0; k < n; ++k) omega.push_back(3.0 + 0.7 * static_cast<double>(k));
  QuadraticSystem s = QuadraticSystem::uncoupled(omega);
  for (std::size_t k = 0; k + 1 < n; ++k) s.couple(k, k + 1, 0.3, 0.1);
  return s;
}

std::vector<BathSpec> losses(std::size_t n) {
  std::vector<BathSpec> out;
  for (std::size_t k = 0; k < n; ++k) {
    BathSpec b;
    b.mode = k;
    b.spectral_density = FlatDensity{0.05 * static_cast<double>(k + 1)};
    out.push_back(b);
  }
  return out;
}

void BM_Diagonalize(benchmark::State& state) {
  const QuadraticSystem s = chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(s));
}
BENCHMARK(BM_Diagonalize)->Arg(1)->Arg(2)->Arg(3)->Arg(8);

void BM_GlobalDrift(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const QuadraticSystem s = chain(n);
  const auto baths = losses(n);
  for (auto _ : state) benchmark::DoNotOptimize(drift(build_global(s, baths)));
}
BENCHMARK(BM_GlobalDrift)->Arg(2)->Arg(3)->Arg(8);

void BM_OracleStep(benchmark::State& state) {
  const std::size_t cutoff = static_cast<std::size_t>(state.range(0));
  const QuadraticSystem s = chain(2);
  const LindbladModel m = build_global(s, losses(2));
  const FockRep rep(m, {cutoff, cutoff});
  const DensityMatrix rho = coherent_product_state(rep, {0.3, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(rep.apply(rho.rho));
  state.counters["dim"] = static_cast<double>(rep.dim());
}
BENCHMARK(BM_OracleStep)->Arg(4)->Arg(6)->Arg(12);

void BM_EliminateThreeMode(benchmark::State& state) {
  const DriftMatrix d = three_mode_drift(ThreeModeParams{});
  for (auto _ : state) benchmark::DoNotOptimize(eliminate(d, {2}));
}
BENCHMARK(BM_EliminateThreeMode);

void BM_EPScanTextbook(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Family f = [](double g) {
    CMatrix h(2, 2);
    h << cplx{1.0, 0.1}, g, g, cplx{1.0, -0.1};
    return effective_hamiltonian(h);
  };
  for (auto _ : state) benchmark::DoNotOptimize(ep_scan(f, 0.0, 0.2, n));
}
BENCHMARK(BM_EPScanTextbook)->Arg(101)->Arg(1001);

void BM_EPScanThreeMode(benchmark::State& state) {
  const Family f = [](double gamma1) {
    ThreeModeParams p;
    p.g = 1.0;
    p.delta_prime = 2.0;
    p.epsilon = 4.0;
    p.gamma1 = p.gamma2 = gamma1;
    p.gamma3 = 100.0;
    return three_mode_reduced(p, false);
  };
  for (auto _ : state) benchmark::DoNotOptimize(ep_scan(f, 50.0, 150.0, 201));
}
BENCHMARK(BM_EPScanThreeMode);

}  // namespace

BENCHMARK_MAIN();
