#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "reprorl/envs.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rng.hpp"

namespace reprorl {

enum class NoiseKind { none, action, observation, reward, parameter, init_state, dynamics };
enum class Resample { per_episode, per_step };

// Config-file spellings: "none", "action", "obs", "reward", "param", "init-state", "dynamics".
std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind noise_kind_from_string(std::string_view name);
std::string_view valid_noise_kinds() noexcept;

std::string_view to_string(Resample r) noexcept;
Resample resample_from_string(std::string_view name);

// One uncertainty source with Gaussian scale sigma. Exactly one kind is active per rollout.
struct NoiseConfig {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;
  Resample resample = Resample::per_episode;
  // Observation noise also enters the reward, R(s_t + e_t, a_t, s_{t+1} + e_{t+1}).
  bool obs_noise_affects_reward = true;

  // Default scale per kind, calibrated on point_mass_nav.
  static double default_sigma(NoiseKind kind) noexcept;
  static NoiseConfig with_default_sigma(NoiseKind kind);

  bool active() const noexcept { return kind != NoiseKind::none && sigma > 0.0; }
  void validate() const;

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

// Base reset; init_state noise adds sigma*N(0, I) to the position components,
// drawing from `init_stream`.
EnvState wrap_reset(const EnvConfig& cfg, const NoiseConfig& noise, RngStream& init_stream);

// The observation emitted for the reset state: s_0, or s_0 + e_0 under observation noise.
std::vector<double> wrap_initial_observation(const EnvConfig& cfg, const NoiseConfig& noise,
                                             const EnvState& state, RngStream& noise_stream);

struct WrappedStep {
  EnvState state;
  double reward = 0.0;
  bool done = false;
  // What the policy sees next.
  std::vector<double> observation;
  // The action the environment actually executed.
  std::vector<double> executed_action;
};

// One environment step through the active wrapper. `observation` is what the
// policy saw at this step (needed when observation noise enters the reward).
//
//   action      executes clip(a + e) inside the action box
//   reward      reward + e_t, fresh e_t every step
//   dynamics    e added to the next true state
//   observation emits s' + e'; reward on (s + e, a, s' + e') unless disabled
//   others      passthrough (parameter and init-state act elsewhere)
WrappedStep wrap_step(const EnvConfig& cfg, const NoiseConfig& noise, const EnvState& state,
                      std::span<const double> observation, std::span<const double> action,
                      RngStream& noise_stream, RngStream& env_stream);

// theta + sigma*N(0, I). Throws Errc::misuse unless kind == parameter.
PolicyParams wrap_params(const PolicyParams& params, const NoiseConfig& noise, RngStream& stream);

}  // namespace reprorl
