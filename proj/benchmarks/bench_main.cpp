#include <benchmark/benchmark.h>

#include "g4/checks.hpp"
#include "g4/geometry.hpp"
#include "g4/mechanics.hpp"

using namespace g4;

static void BM_EvalJet(benchmark::State& state) {
  const GroupModel m = get_group(GroupId::kVIII_a);
  const ChartPoint u{1.1, 0.3, -0.4, 0.2};
  for (auto _ : state) {
    for (const auto& row : m.frame.xi)
      for (const Expr& f : row) benchmark::DoNotOptimize(eval_jet(f, u));
  }
}
BENCHMARK(BM_EvalJet);

static void BM_MetricJet(benchmark::State& state) {
  const GroupModel m = get_group(GroupId::kII);
  const ChartPoint u{0.3, -0.2, 0.5, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(metric_con_jet(m, u));
}
BENCHMARK(BM_MetricJet);

static void BM_KillingCheck(benchmark::State& state) {
  const GroupModel m = get_group(GroupId::kIII);
  const auto pts = sample_points(m.domain, static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(check_killing(m, pts, 1e-9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KillingCheck)->Arg(50)->Arg(200);

static void BM_HamiltonianIntegrals(benchmark::State& state) {
  const GroupModel m = get_group(GroupId::kVII_a);
  const auto phase = sample_phase_points(m, 200, 42);
  const LinearPotential pot = admissible_potential(m);
  for (auto _ : state) benchmark::DoNotOptimize(check_hamiltonian_integrals(m, pot, phase, 1e-9));
}
BENCHMARK(BM_HamiltonianIntegrals);

static void BM_RK4Trajectory(benchmark::State& state) {
  const GroupModel m = get_group(GroupId::kI_cne1);
  const PhasePoint s0{{0.0, 0.0, 0.0, 0.0}, {0.1, 0.2, 0.3, 0.4}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_trajectory(m, s0, 0.4, 1e-3));
}
BENCHMARK(BM_RK4Trajectory);

BENCHMARK_MAIN();
