#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "reprorl/envs.hpp"
#include "reprorl/matrix.hpp"
#include "reprorl/noise.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rng.hpp"
#include "reprorl/trajectory.hpp"

namespace reprorl {

struct EvalConfig {
  std::size_t n_evals = 256;
  bool record_state_marginal = false;
  std::uint64_t master_seed = 0;

  void validate() const;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

// N rollouts of one policy: returns R^N, descriptors B^N and, optionally, the
// flattened T*d_s state marginals, with the provenance needed to regenerate them.
struct EvalRecord {
  std::string policy_id;
  EnvConfig env;
  NoiseConfig noise;
  std::uint64_t master_seed = 0;
  std::size_t n_evals = 0;
  std::vector<double> returns;
  Matrix descriptors;
  std::optional<Matrix> state_marginals;

  std::string env_id() const { return std::string(to_string(env.id)); }
  void validate() const;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

// The three disjoint streams of rollout i: (seed, "init", i), (seed, "noise", i), (seed, "env", i).
struct RolloutStreams {
  RngStream init;
  RngStream noise;
  RngStream env;

  static RolloutStreams for_rollout(std::uint64_t master_seed, std::uint64_t index);
};

// reset -> T wrapped steps. The policy acts on the emitted observation; under
// parameter noise it acts with theta + e (one e per episode unless per_step).
// Throws NumericFailure carrying the step on non-finite state or reward.
Trajectory rollout_once(const PolicyParams& params, const EnvConfig& env, const NoiseConfig& noise,
                        RolloutStreams& streams);

// n_evals independent rollouts; rollout i uses RolloutStreams::for_rollout(seed, i).
// The record does not depend on `jobs`.
EvalRecord evaluate(const PolicyParams& params, const EnvConfig& env, const NoiseConfig& noise,
                    const EvalConfig& eval, std::string policy_id = "policy", unsigned jobs = 1);

// Row-major flattening of the trajectory's states (T*d_s values).
std::vector<double> flatten_states(const Trajectory& traj);

// Throws Errc::shape unless the policy's input/output sizes match the env.
void check_compatible(const PolicyParams& params, const EnvConfig& env);

}  // namespace reprorl
