#include <benchmark/benchmark.h>

#include <random>

#include "support/oracles.hpp"
#include "synkit/lyapunov.hpp"

using namespace synkit;

static void CertificateConstructionCt(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const MatrixXd A = oracles::random_neutrally_stable(
      static_cast<int>(state.range(0)), TimeDomain::continuous, rng);
  for (auto _ : state) {
    auto cert = ct_certificate(A);
    benchmark::DoNotOptimize(cert.P);
  }
}
BENCHMARK(CertificateConstructionCt)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void CertificateConstructionDt(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MatrixXd A = oracles::random_neutrally_stable(
      static_cast<int>(state.range(0)), TimeDomain::discrete, rng);
  for (auto _ : state) {
    auto cert = dt_certificate(A);
    benchmark::DoNotOptimize(cert.P);
  }
}
BENCHMARK(CertificateConstructionDt)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void DiscreteLyapunovSolve(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(state.range(0));
  const MatrixXd A = oracles::random_schur(n, rng);
  const MatrixXd Q = MatrixXd::Identity(n, n);
  for (auto _ : state) {
    auto X = solve_discrete_lyapunov(A, Q);
    benchmark::DoNotOptimize(X);
  }
}
BENCHMARK(DiscreteLyapunovSolve)->Arg(4)->Arg(8)->Arg(16)->Arg(32);
