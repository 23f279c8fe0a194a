#include <benchmark/benchmark.h>

#include "support/fixtures.hpp"
#include "synkit/netsim.hpp"

using namespace synkit;

static void SimulateCtPartialCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario s;
  s.model = fixtures::ct_agent();
  s.protocol = synth_ct_partial(s.model, fixtures::ct_precompensator());
  s.graph = DiGraph::cycle(n);
  s.x0 = seeded_initial_states(n, 3, 42);
  s.horizon = 1.0;
  s.dt = 1e-3;
  s.record_stride = 1 << 20;
  for (auto _ : state) {
    auto tr = simulate(s);
    benchmark::DoNotOptimize(tr.sync_error);
  }
  state.SetItemsProcessed(state.iterations() * 1000 * n);
}
BENCHMARK(SimulateCtPartialCycle)->Arg(10)->Arg(60)->Arg(240)->Unit(benchmark::kMillisecond);

static void SimulateDtPartialCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario s;
  s.model = fixtures::dt_agent();
  s.protocol = synth_dt_partial(s.model);
  s.graph = DiGraph::cycle(n);
  s.x0 = seeded_initial_states(n, 3, 42);
  s.steps = 10000;
  s.record_stride = 1 << 20;
  for (auto _ : state) {
    auto tr = simulate(s);
    benchmark::DoNotOptimize(tr.sync_error);
  }
  state.SetItemsProcessed(state.iterations() * 10000 * n);
}
BENCHMARK(SimulateDtPartialCycle)->Arg(10)->Arg(60)->Arg(240)->Unit(benchmark::kMillisecond);

static void DecoupledOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Scenario s;
  s.model = fixtures::dt_agent();
  s.protocol = synth_dt_partial(s.model);
  s.graph = DiGraph::cycle(n);
  s.x0 = seeded_initial_states(n, 3, 42);
  for (auto _ : state) {
    auto modes = decoupled_oracle(s);
    benchmark::DoNotOptimize(modes.blocks);
  }
}
BENCHMARK(DecoupledOracle)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
