#include <benchmark/benchmark.h>

#include <random>

#include "support/oracles.hpp"
#include "synkit/lti.hpp"

using namespace synkit;

static void InvariantZeros(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int n = static_cast<int>(state.range(0));
  const MatrixXd A = oracles::random_matrix(n, n, rng);
  const MatrixXd B = oracles::random_matrix(n, 1, rng);
  const MatrixXd C = oracles::random_matrix(2, n, rng);
  for (auto _ : state) {
    auto zeros = invariant_zeros(A, B, C);
    benchmark::DoNotOptimize(zeros);
  }
}
BENCHMARK(InvariantZeros)->Arg(3)->Arg(6)->Arg(12);

static void StructuralReportBench(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const int n = static_cast<int>(state.range(0));
  const LtiModel m{oracles::random_matrix(n, n, rng), oracles::random_matrix(n, 2, rng),
                   oracles::random_matrix(2, n, rng), TimeDomain::continuous};
  for (auto _ : state) {
    auto rep = structural_report(m);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(StructuralReportBench)->Arg(3)->Arg(6)->Arg(12);
