#include "reprorl/rollout.hpp"

#include <cmath>
#include <string>

#include "reprorl/error.hpp"
#include "reprorl/parallel.hpp"

namespace reprorl {

void EvalConfig::validate() const {
  if (n_evals < 1) throw Error(Errc::invalid_config, "n_evals must be at least 1");
}

void EvalRecord::validate() const {
  if (returns.size() != n_evals || descriptors.rows() != n_evals) {
    throw Error(Errc::shape, "eval record: returns and descriptors must have n_evals rows");
  }
  if (state_marginals) {
    if (state_marginals->rows() != n_evals ||
        state_marginals->cols() != env.episode_length * env.state_dim) {
      throw Error(Errc::shape, "eval record: state marginals must be n_evals x (T * d_s)");
    }
  }
}

RolloutStreams RolloutStreams::for_rollout(std::uint64_t master_seed, std::uint64_t index) {
  return {derive_stream(master_seed, "init", index), derive_stream(master_seed, "noise", index),
          derive_stream(master_seed, "env", index)};
}

void check_compatible(const PolicyParams& params, const EnvConfig& env) {
  params.validate();
  if (params.input_dim() != env.state_dim || params.output_dim() != env.action_dim) {
    throw Error(Errc::shape, "policy maps " + std::to_string(params.input_dim()) + " -> " +
                                 std::to_string(params.output_dim()) + " but env " +
                                 std::string(to_string(env.id)) + " has state_dim " +
                                 std::to_string(env.state_dim) + " and action_dim " +
                                 std::to_string(env.action_dim));
  }
}

namespace {

void require_finite(std::span<const double> xs, std::size_t step, const char* what) {
  for (double v : xs) {
    if (!std::isfinite(v)) {
      throw NumericFailure(std::string("non-finite ") + what + " at step " + std::to_string(step), step);
    }
  }
}

}  // namespace

Trajectory rollout_once(const PolicyParams& params, const EnvConfig& env, const NoiseConfig& noise,
                        RolloutStreams& streams) {
  const ActionBox box = env.action_box();
  const bool param_noise = noise.kind == NoiseKind::parameter;
  const bool per_step = param_noise && noise.resample == Resample::per_step;

  PolicyParams acting = param_noise && !per_step ? wrap_params(params, noise, streams.noise) : params;

  EnvState state = wrap_reset(env, noise, streams.init);
  std::vector<double> obs = wrap_initial_observation(env, noise, state, streams.noise);
  require_finite(state.x, 0, "initial state");

  Trajectory traj;
  traj.rewards.reserve(env.episode_length);
  for (std::size_t t = 0; t < env.episode_length; ++t) {
    if (per_step) acting = wrap_params(params, noise, streams.noise);
    const std::vector<double> action = policy_forward(acting, obs, box);
    WrappedStep step = wrap_step(env, noise, state, obs, action, streams.noise, streams.env);

    require_finite(step.state.x, t, "state");
    require_finite(std::span<const double>(&step.reward, 1), t, "reward");

    traj.observations.append_row(obs);
    traj.actions.append_row(step.executed_action);
    traj.states.append_row(step.state.x);
    traj.rewards.push_back(step.reward);
    traj.episode_return += step.reward;

    state = std::move(step.state);
    obs = std::move(step.observation);
  }
  return traj;
}

std::vector<double> flatten_states(const Trajectory& traj) {
  const auto flat = traj.states.data();
  return {flat.begin(), flat.end()};
}

EvalRecord evaluate(const PolicyParams& params, const EnvConfig& env, const NoiseConfig& noise,
                    const EvalConfig& eval, std::string policy_id, unsigned jobs) {
  env.validate();
  noise.validate();
  eval.validate();
  check_compatible(params, env);

  const std::size_t n = eval.n_evals;
  const std::size_t d_b = env.descriptor_dim();
  const std::size_t marginal_len = env.episode_length * env.state_dim;

  EvalRecord rec;
  rec.policy_id = std::move(policy_id);
  rec.env = env;
  rec.noise = noise;
  rec.master_seed = eval.master_seed;
  rec.n_evals = n;
  rec.returns.assign(n, 0.0);
  rec.descriptors = Matrix(n, d_b);
  if (eval.record_state_marginal) rec.state_marginals = Matrix(n, marginal_len);

  parallel_for(n, jobs, [&](std::size_t i) {
    RolloutStreams streams = RolloutStreams::for_rollout(eval.master_seed, i);
    Trajectory traj;
    try {
      traj = rollout_once(params, env, noise, streams);
    } catch (const NumericFailure& e) {
      throw NumericFailure("rollout " + std::to_string(i) + ": " + e.what(), e.step(), i);
    }
    rec.returns[i] = traj.episode_return;
    const std::vector<double> desc = descriptor(env, traj);
    std::copy(desc.begin(), desc.end(), rec.descriptors.row(i).begin());
    if (rec.state_marginals) {
      const auto flat = traj.states.data();
      std::copy(flat.begin(), flat.end(), rec.state_marginals->row(i).begin());
    }
  });
  return rec;
}

}  // namespace reprorl
