#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "reprorl/envs.hpp"
#include "reprorl/noise.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rng.hpp"

namespace reprorl::optim {

enum class FitnessKind { plain, repro_weighted };

std::string_view to_string(FitnessKind k) noexcept;
FitnessKind fitness_kind_from_string(std::string_view name);

// OpenAI-style ES with mirror sampling and centred-rank utilities.
// plain: one rollout per candidate. repro_weighted (R-ES): w*mean - (1-w)*std
// over `reevals` rollouts of every candidate.
struct EsConfig {
  std::size_t pop_size = 64;
  double sigma = 0.02;
  double learning_rate = 0.005;
  double l2_coef = 0.0;
  std::size_t generations = 100;
  FitnessKind fitness = FitnessKind::plain;
  double repro_weight = 0.5;
  std::size_t reevals = 32;

  void validate() const;
};

struct Candidate {
  std::vector<double> theta;
  std::size_t eps_index = 0;
  int sign = 1;
};

// Candidates 2j and 2j+1 are centre + sigma*eps_j and centre - sigma*eps_j.
struct Population {
  std::vector<std::vector<double>> directions;
  std::vector<Candidate> candidates;
};

Population sample_population(std::span<const double> center, const EsConfig& cfg, RngStream& stream);

enum class TieMode {
  stable_index,  // equal fitnesses ranked by candidate index
  average,       // equal fitnesses share the mean of their centred ranks
};

// Centred ranks: the k-th smallest fitness (k = 0..n-1) gets k/(n-1) - 0.5.
// Throws Errc::insufficient_data for fewer than two entries.
std::vector<double> rank_normalize(std::span<const double> fitnesses,
                                   TieMode ties = TieMode::stable_index);

// g = 1/(lambda*sigma) * sum_j (u_{2j} - u_{2j+1}) * eps_j.
std::vector<double> estimate_gradient(const Population& pop, std::span<const double> utilities,
                                      double sigma);

struct HistoryRow {
  std::size_t generation = 0;
  double mean_fitness = 0.0;
  double best_fitness = 0.0;
  double theta_norm = 0.0;
};

struct EsState {
  std::vector<double> center;
  std::size_t generation = 0;
  double best_fitness = -std::numeric_limits<double>::infinity();
  std::vector<double> best_theta;
  std::vector<HistoryRow> history;
};

// Fitness of one candidate; `candidate` is its index in the population.
// Must be safe to call concurrently.
using FitnessFn = std::function<double(std::span<const double> theta, std::size_t candidate)>;

// sample -> evaluate -> rank (tie-averaged) -> theta += lr*g - lr*l2*theta.
// When every fitness is equal the gradient term is exactly zero.
EsState es_step(EsState state, const EsConfig& cfg, const FitnessFn& fitness, RngStream& stream,
                unsigned jobs = 1);

// Plain ES loop over a black-box objective. `stream_seed` keys the per-generation
// population streams (seed, "es-population", generation).
EsState minimize_free(EsState state, const EsConfig& cfg, const FitnessFn& fitness,
                      std::uint64_t stream_seed, unsigned jobs = 1);

// ---- policy training ----------------------------------------------------

struct PolicyShape {
  std::vector<std::size_t> hidden{16, 16};
  Activation activation = Activation::tanh;

  Architecture architecture_for(const EnvConfig& env) const;
};

// Fitness of one candidate policy. Rollouts use the streams keyed by
// `candidate_seed`: one rollout (index 0) for plain, `reevals` rollouts
// (indices 0..m-1) for repro_weighted.
double fitness(const PolicyParams& candidate, const EnvConfig& env, const NoiseConfig& noise,
               const EsConfig& cfg, std::uint64_t candidate_seed);

// Seed handed to candidate k of generation g.
std::uint64_t candidate_seed(std::uint64_t master_seed, std::size_t generation, std::size_t k,
                             std::size_t pop_size);

// Initial search centre, drawn from (master_seed, "es-init", 0).
PolicyParams initial_policy(const EnvConfig& env, const PolicyShape& shape, std::uint64_t master_seed);

struct TrainResult {
  EsState state;
  PolicyParams final_policy;
};

TrainResult train(const EsConfig& cfg, const EnvConfig& env, const NoiseConfig& noise,
                  const PolicyShape& shape, std::uint64_t master_seed, unsigned jobs = 1);

}  // namespace reprorl::optim
