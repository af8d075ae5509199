#include <vector>

#include <benchmark/benchmark.h>

#include "reprorl/envs.hpp"
#include "reprorl/optim.hpp"

using namespace reprorl;

namespace {

void BM_RankNormalize(benchmark::State& state) {
  RngStream s(0, "bench", 0);
  std::vector<double> f(static_cast<std::size_t>(state.range(0)));
  for (double& x : f) x = s.gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(optim::rank_normalize(f, optim::TieMode::average));
}
BENCHMARK(BM_RankNormalize)->Arg(64)->Arg(512);

void BM_EsStepSphere(benchmark::State& state) {
  optim::EsConfig cfg;
  cfg.pop_size = static_cast<std::size_t>(state.range(0));
  cfg.sigma = 0.1;
  optim::EsState st;
  st.center.assign(386, 0.5);
  const optim::FitnessFn sphere = [](std::span<const double> x, std::size_t) {
    double f = 0.0;
    for (double v : x) f -= v * v;
    return f;
  };
  std::uint64_t g = 0;
  for (auto _ : state) {
    RngStream s(0, "es-population", g++);
    benchmark::DoNotOptimize(optim::es_step(st, cfg, sphere, s));
  }
}
BENCHMARK(BM_EsStepSphere)->Arg(64)->Arg(512);

void BM_TrainGeneration(benchmark::State& state) {
  optim::EsConfig cfg;
  cfg.generations = 1;
  cfg.sigma = 0.1;
  cfg.learning_rate = 0.05;
  cfg.fitness = state.range(0) ? optim::FitnessKind::repro_weighted : optim::FitnessKind::plain;
  const EnvConfig env = EnvConfig::tradeoff_spread();
  for (auto _ : state) benchmark::DoNotOptimize(optim::train(cfg, env, NoiseConfig{}, optim::PolicyShape{}, 0));
}
BENCHMARK(BM_TrainGeneration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
