#include <vector>

#include <benchmark/benchmark.h>

#include "reprorl/matrix.hpp"
#include "reprorl/metrics.hpp"
#include "reprorl/rng.hpp"
#include "reprorl/stats.hpp"

using namespace reprorl;

namespace {

std::vector<double> sample(std::size_t n) {
  RngStream s(1, "bench", n);
  std::vector<double> xs(n);
  for (double& x : xs) x = s.gaussian();
  return xs;
}

void BM_Mad(benchmark::State& state) {
  const auto xs = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stats::mad(xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mad)->Arg(256)->Arg(4096)->Arg(100000);

void BM_Iqm(benchmark::State& state) {
  const auto xs = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stats::iqm(xs));
}
BENCHMARK(BM_Iqm)->Arg(10)->Arg(256);

void BM_Bootstrap(benchmark::State& state) {
  std::vector<std::vector<double>> strata{sample(10)};
  for (auto _ : state) {
    RngStream s(0, "bootstrap", 0);
    benchmark::DoNotOptimize(
        stats::stratified_bootstrap(strata, stats::Aggregate::iqm, static_cast<std::size_t>(state.range(0)), 0.95, s));
  }
}
BENCHMARK(BM_Bootstrap)->Arg(2000);

void BM_BehaviouralMad(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto flat = sample(n * 2);
  Matrix m;
  for (std::size_t i = 0; i < n; ++i) m.append_row(std::vector<double>{flat[2 * i], flat[2 * i + 1]});
  for (auto _ : state) benchmark::DoNotOptimize(metrics::behavioural_mad(m));
}
BENCHMARK(BM_BehaviouralMad)->Arg(256);

}  // namespace
