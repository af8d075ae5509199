#include <vector>

#include <benchmark/benchmark.h>

#include "reprorl/envs.hpp"
#include "reprorl/noise.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rollout.hpp"

using namespace reprorl;

namespace {

void BM_PolicyForward(benchmark::State& state) {
  RngStream s(0, "bench", 0);
  const auto width = static_cast<std::size_t>(state.range(0));
  const PolicyParams p = init_policy({4, width, width, 2}, Activation::tanh, s);
  const std::vector<double> obs{0.1, 0.2, -0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(policy_forward(p, obs));
}
BENCHMARK(BM_PolicyForward)->Arg(16)->Arg(64);

void BM_RolloutNav(benchmark::State& state) {
  const EnvConfig env = EnvConfig::point_mass_nav();
  const PolicyParams p = goal_seeking_policy(env);
  const NoiseConfig noise = NoiseConfig::with_default_sigma(NoiseKind::action);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RolloutStreams streams = RolloutStreams::for_rollout(0, i++);
    benchmark::DoNotOptimize(rollout_once(p, env, noise, streams));
  }
}
BENCHMARK(BM_RolloutNav);

void BM_Evaluate256(benchmark::State& state) {
  const EnvConfig env = EnvConfig::point_mass_nav();
  RngStream s(0, "bench", 0);
  const PolicyParams p = init_policy({4, 16, 16, 2}, Activation::tanh, s);
  const NoiseConfig noise = NoiseConfig::with_default_sigma(NoiseKind::init_state);
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(p, env, noise, EvalConfig{256}, "bench", jobs));
}
BENCHMARK(BM_Evaluate256)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
