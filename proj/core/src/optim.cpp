#include "reprorl/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reprorl/error.hpp"
#include "reprorl/parallel.hpp"
#include "reprorl/rollout.hpp"
#include "reprorl/stats.hpp"

namespace reprorl::optim {

std::string_view to_string(FitnessKind k) noexcept {
  return k == FitnessKind::repro_weighted ? "repro_weighted" : "plain";
}

FitnessKind fitness_kind_from_string(std::string_view name) {
  if (name == "plain") return FitnessKind::plain;
  if (name == "repro_weighted") return FitnessKind::repro_weighted;
  throw Error(Errc::invalid_config, "unknown fitness kind '" + std::string(name) + "' (valid: plain, repro_weighted)");
}

void EsConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::invalid_config, "es: " + what); };
  if (pop_size < 2 || pop_size % 2 != 0) fail("pop_size must be even and >= 2 (mirror pairs)");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be finite and > 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be finite and > 0");
  if (!(l2_coef >= 0.0) || !std::isfinite(l2_coef)) fail("l2_coef must be finite and >= 0");
  if (fitness == FitnessKind::repro_weighted) {
    if (reevals < 2) fail("reevals must be >= 2 for repro_weighted fitness");
    if (!(repro_weight >= 0.0 && repro_weight <= 1.0)) fail("repro_weight must lie in [0, 1]");
  }
}

Population sample_population(std::span<const double> center, const EsConfig& cfg, RngStream& stream) {
  if (cfg.pop_size < 2 || cfg.pop_size % 2 != 0) {
    throw Error(Errc::invalid_config, "es: pop_size must be even and >= 2 (mirror pairs)");
  }
  const std::size_t half = cfg.pop_size / 2;
  Population pop;
  pop.directions.resize(half);
  pop.candidates.reserve(cfg.pop_size);
  for (std::size_t j = 0; j < half; ++j) {
    auto& eps = pop.directions[j];
    eps.resize(center.size());
    stream.fill_gaussian(eps);
    for (int sign : {1, -1}) {
      Candidate c;
      c.eps_index = j;
      c.sign = sign;
      c.theta.resize(center.size());
      for (std::size_t d = 0; d < center.size(); ++d) c.theta[d] = center[d] + sign * cfg.sigma * eps[d];
      pop.candidates.push_back(std::move(c));
    }
  }
  return pop;
}

std::vector<double> rank_normalize(std::span<const double> fitnesses, TieMode ties) {
  const std::size_t n = fitnesses.size();
  if (n < 2) throw Error(Errc::insufficient_data, "rank_normalize: need at least 2 fitnesses");
  for (double f : fitnesses) {
    if (std::isnan(f)) throw Error(Errc::numeric, "rank_normalize: NaN fitness");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitnesses[a] < fitnesses[b]; });

  const double denom = static_cast<double>(n - 1);
  std::vector<double> u(n);
  if (ties == TieMode::stable_index) {
    for (std::size_t k = 0; k < n; ++k) u[order[k]] = static_cast<double>(k) / denom - 0.5;
    return u;
  }

  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && fitnesses[order[end]] == fitnesses[order[begin]]) ++end;
    // Mean of ranks begin..end-1.
    const double rank = 0.5 * static_cast<double>(begin + end - 1);
    const double value = rank / denom - 0.5;
    for (std::size_t k = begin; k < end; ++k) u[order[k]] = value;
    begin = end;
  }
  return u;
}

std::vector<double> estimate_gradient(const Population& pop, std::span<const double> utilities, double sigma) {
  if (utilities.size() != pop.candidates.size()) {
    throw Error(Errc::shape, "estimate_gradient: one utility per candidate expected");
  }
  const std::size_t dim = pop.directions.empty() ? 0 : pop.directions.front().size();
  std::vector<double> g(dim, 0.0);
  for (std::size_t j = 0; j < pop.directions.size(); ++j) {
    const double weight = utilities[2 * j] - utilities[2 * j + 1];
    if (weight == 0.0) continue;
    const auto& eps = pop.directions[j];
    for (std::size_t d = 0; d < dim; ++d) g[d] += weight * eps[d];
  }
  const double scale = 1.0 / (static_cast<double>(pop.candidates.size()) * sigma);
  for (double& v : g) v *= scale;
  return g;
}

EsState es_step(EsState state, const EsConfig& cfg, const FitnessFn& fitness_fn, RngStream& stream,
                unsigned jobs) {
  cfg.validate();
  const Population pop = sample_population(state.center, cfg, stream);

  std::vector<double> f(pop.candidates.size());
  parallel_for(f.size(), jobs, [&](std::size_t i) { f[i] = fitness_fn(pop.candidates[i].theta, i); });

  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      throw Error(Errc::numeric, "es_step: generation " + std::to_string(state.generation) + ", candidate " +
                                     std::to_string(i) + " has non-finite fitness " + std::to_string(f[i]));
    }
  }

  const bool flat = std::all_of(f.begin(), f.end(), [&](double v) { return v == f.front(); });
  std::vector<double> g(state.center.size(), 0.0);
  if (!flat) g = estimate_gradient(pop, rank_normalize(f, TieMode::average), cfg.sigma);

  for (std::size_t d = 0; d < state.center.size(); ++d) {
    const double theta = state.center[d];
    state.center[d] = theta + cfg.learning_rate * g[d] - cfg.learning_rate * cfg.l2_coef * theta;
  }

  const auto best = std::max_element(f.begin(), f.end());
  if (*best > state.best_fitness) {
    state.best_fitness = *best;
    state.best_theta = pop.candidates[static_cast<std::size_t>(best - f.begin())].theta;
  }

  double norm = 0.0;
  for (double v : state.center) norm += v * v;
  state.history.push_back({state.generation, stats::mean(f), *best, std::sqrt(norm)});
  ++state.generation;
  return state;
}

EsState minimize_free(EsState state, const EsConfig& cfg, const FitnessFn& fitness_fn, std::uint64_t stream_seed,
                      unsigned jobs) {
  cfg.validate();
  for (std::size_t g = 0; g < cfg.generations; ++g) {
    RngStream stream = derive_stream(stream_seed, "es-population", state.generation);
    state = es_step(std::move(state), cfg, fitness_fn, stream, jobs);
  }
  return state;
}

Architecture PolicyShape::architecture_for(const EnvConfig& env) const {
  Architecture arch;
  arch.push_back(env.state_dim);
  arch.insert(arch.end(), hidden.begin(), hidden.end());
  arch.push_back(env.action_dim);
  return arch;
}

double fitness(const PolicyParams& candidate, const EnvConfig& env, const NoiseConfig& noise, const EsConfig& cfg,
               std::uint64_t candidate_seed) {
  if (cfg.fitness == FitnessKind::plain) {
    RolloutStreams streams = RolloutStreams::for_rollout(candidate_seed, 0);
    return rollout_once(candidate, env, noise, streams).episode_return;
  }
  std::vector<double> returns(cfg.reevals);
  for (std::size_t r = 0; r < cfg.reevals; ++r) {
    RolloutStreams streams = RolloutStreams::for_rollout(candidate_seed, r);
    returns[r] = rollout_once(candidate, env, noise, streams).episode_return;
  }
  const double w = cfg.repro_weight;
  return w * stats::mean(returns) - (1.0 - w) * stats::sample_std(returns);
}

std::uint64_t candidate_seed(std::uint64_t master_seed, std::size_t generation, std::size_t k, std::size_t pop_size) {
  return derive_seed(master_seed, "es-candidate", generation * pop_size + k);
}

PolicyParams initial_policy(const EnvConfig& env, const PolicyShape& shape, std::uint64_t master_seed) {
  RngStream stream = derive_stream(master_seed, "es-init", 0);
  return init_policy(shape.architecture_for(env), shape.activation, stream);
}

TrainResult train(const EsConfig& cfg, const EnvConfig& env, const NoiseConfig& noise, const PolicyShape& shape,
                  std::uint64_t master_seed, unsigned jobs) {
  cfg.validate();
  env.validate();
  noise.validate();

  const PolicyParams init = initial_policy(env, shape, master_seed);
  TrainResult out;
  out.state.center = init.theta;

  auto make_policy = [&](std::span<const double> theta) {
    PolicyParams p;
    p.theta.assign(theta.begin(), theta.end());
    p.arch = init.arch;
    p.activation = init.activation;
    return p;
  };

  for (std::size_t g = 0; g < cfg.generations; ++g) {
    const std::size_t generation = out.state.generation;
    FitnessFn fn = [&, generation](std::span<const double> theta, std::size_t k) {
      return fitness(make_policy(theta), env, noise, cfg, candidate_seed(master_seed, generation, k, cfg.pop_size));
    };
    RngStream stream = derive_stream(master_seed, "es-population", generation);
    out.state = es_step(std::move(out.state), cfg, fn, stream, jobs);
  }

  out.final_policy = make_policy(out.state.center);
  return out;
}

}  // namespace reprorl::optim
