#include <benchmark/benchmark.h>

#include "srd/srd.hpp"

namespace {

void BM_HermitianEig(benchmark::State& state) {
  const auto d = static_cast<srd::Index>(state.range(0));
  const srd::DensityMatrix rho = srd::random_density(d, d, 7);
  for (auto _ : state) benchmark::DoNotOptimize(srd::hermitian_eig(rho.matrix()));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_QTilde(benchmark::State& state) {
  const auto d = static_cast<srd::Index>(state.range(0));
  const srd::DensityMatrix rho = srd::random_density(d, d, 1);
  const srd::DensityMatrix sigma = srd::random_density(d, d, 2);
  const srd::RenyiOrder order(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(srd::q_tilde(rho, sigma, order));
}
BENCHMARK(BM_QTilde)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_EqualityResidual(benchmark::State& state) {
  const auto d = static_cast<srd::Index>(state.range(0));
  const srd::DensityMatrix rho = srd::random_density(d, d, 3);
  const srd::DensityMatrix sigma = srd::random_density(d, d, 4);
  const srd::QuantumChannel ch = srd::random_channel(d, d, 3, 5);
  const srd::RenyiOrder order(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(srd::equality_residual(rho, sigma, ch, order).residual);
}
BENCHMARK(BM_EqualityResidual)->Arg(2)->Arg(4)->Arg(6);

void BM_ConditionalRenyi(benchmark::State& state) {
  const srd::BipartiteState rho(srd::random_density(4, 4, 11), 2, 2);
  srd::ConditionalOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(srd::conditional_renyi(rho, 2.0, opts).value);
}
BENCHMARK(BM_ConditionalRenyi)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
