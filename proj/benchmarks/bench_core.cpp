#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "aqt/ccr_gaussian.hpp"
#include "aqt/free_field.hpp"
#include "aqt/gns.hpp"
#include "aqt/qubit_chain.hpp"
#include "aqt/wick.hpp"

namespace {

using namespace aqt;

void BM_WickSum(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = 0.1 * static_cast<double>(i + 1);
  for (auto _ : state) {
    const double v = wick_sum<double>(m, [&](std::size_t i, std::size_t j) { return x[i] * x[j]; });
    benchmark::DoNotOptimize(v);
  }
  state.counters["pairings"] = static_cast<double>(pair_partition_count(m));
}
BENCHMARK(BM_WickSum)->DenseRange(4, 14, 2);

void BM_GnsConstruct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StarAlgebra alg({n, n / 2 + 1});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<Matrix> rho;
  double total = 0.0;
  for (std::size_t d : alg.blocks()) {
    Matrix w(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = Complex(nd(rng), nd(rng));
    rho.push_back(w * w.adjoint());
    total += rho.back().trace().real();
  }
  for (auto& r : rho) r /= total;
  const State f = State::from_densities(alg, rho);
  for (auto _ : state) {
    const GnsRep rep = gns_construct(f);
    benchmark::DoNotOptimize(rep.dim());
  }
}
BENCHMARK(BM_GnsConstruct)->Arg(2)->Arg(4)->Arg(8);

void BM_QubitWindow(benchmark::State& state) {
  QubitConfig a;
  QubitConfig b;
  b.set_tail(PowerTail{1.0, 1.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(equivalence_verdict(a, b).partial_sum);
}
BENCHMARK(BM_QubitWindow);

void BM_PauliJordan(benchmark::State& state) {
  const MassShellGrid grid(1.0, 6.0, static_cast<std::size_t>(state.range(0)));
  const Point4 x{0.3, 0.1, -0.2, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(pauli_jordan(grid, x));
  state.counters["shell_points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_PauliJordan)->Arg(17)->Arg(33)->Arg(49);

void BM_ShellForm(benchmark::State& state) {
  const MassShellGrid grid(1.0, 6.0, static_cast<std::size_t>(state.range(0)));
  const TestFunction psi = TestFunction::sample(grid, [](double p0, const Momentum3& p) {
    return Complex(std::exp(-(p0 * p0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 4.0), 0.0);
  });
  for (auto _ : state) benchmark::DoNotOptimize(shell_bilinear_form(grid, psi, psi));
}
BENCHMARK(BM_ShellForm)->Arg(17)->Arg(33);

void BM_MassWitness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mass_kernel_witness(1.0, 2.0, 6.0, 33).form_mass_prime);
}
BENCHMARK(BM_MassWitness)->Unit(benchmark::kMillisecond);

void BM_EuclideanPropagator(benchmark::State& state) {
  const EuclideanSpec spec{1.0, 6.0, static_cast<std::size_t>(state.range(0)), 0.0};
  const Point4 x{0.5, 0.0, 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(euclidean_propagator(spec, x));
}
BENCHMARK(BM_EuclideanPropagator)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);

void BM_MomentOracle(benchmark::State& state) {
  const CcrSpace space = CcrSpace::euclidean(3, 1.5);
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<RealVector> args(m, RealVector::Constant(3, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(moment_oracle(space, args));
}
BENCHMARK(BM_MomentOracle)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
