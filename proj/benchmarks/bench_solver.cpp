#include "cha/fisher.hpp"
#include "cha/tables.hpp"

#include <benchmark/benchmark.h>

namespace {

cha::SolverConfig fixed_grid(int n) {
  cha::SolverConfig c;
  c.grid_size = n;
  c.grid_max = n;
  c.converge = false;
  return c;
}

void BM_Hamiltonian(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::build_hamiltonian(2, 1.0, 5.0, n));
  }
}
BENCHMARK(BM_Hamiltonian)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SolveFixedGrid(benchmark::State &state) {
  const auto config = fixed_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::solve_state({3, 2, 0, 1.0, 5.0}, config));
  }
}
BENCHMARK(BM_SolveFixedGrid)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SolveConverged(benchmark::State &state) {
  const cha::QuantumState s{static_cast<int>(state.range(0)), 1, 0, 1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::solve_state(s));
  }
}
BENCHMARK(BM_SolveConverged)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Transform(benchmark::State &state) {
  const auto sol = cha::solve_state({2, 1, 0, 1.0, static_cast<double>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::transform(sol));
  }
}
BENCHMARK(BM_Transform)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State &state) {
  const cha::QuantumState s{10, 5, 1, 1.0, 2.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::evaluate(s));
  }
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

// One row of the 2p table: the state at all seven radii.
void BM_TableRow(benchmark::State &state) {
  for (auto _ : state) {
    for (double rc : cha::kTableRadii) {
      benchmark::DoNotOptimize(cha::evaluate({2, 1, 0, 1.0, rc}));
    }
  }
}
BENCHMARK(BM_TableRow)->Unit(benchmark::kMillisecond);

void BM_GradientOracle(benchmark::State &state) {
  const cha::QuantumState s{3, 2, 1, 1.0, 2.5};
  const auto sol = cha::solve_state(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cha::direct_fisher_oracle(sol, s));
  }
}
BENCHMARK(BM_GradientOracle)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
