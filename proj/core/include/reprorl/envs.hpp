#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "reprorl/policy.hpp"
#include "reprorl/rng.hpp"
#include "reprorl/trajectory.hpp"

namespace reprorl {

enum class EnvId { point_mass_nav, flat_mean_spread, tradeoff_spread };

std::string_view to_string(EnvId id) noexcept;
EnvId env_id_from_string(std::string_view name);

// Three desk-scale environments, one per uncertainty class:
//
//   point_mass_nav   2-D point mass steering to a goal. Deterministic; return
//                    spread comes only from injected noise, and init-state noise
//                    affects a passive policy far more than a goal-seeking one.
//   flat_mean_spread 1-step bandit, reward = mean_base + spread_max*a*U with
//                    U ~ Uniform(-1, 1). Every arm a in [0, 1] has the same mean.
//   tradeoff_spread  as above plus mean_slope*a: larger a pays more on average
//                    and spreads more.
struct EnvConfig {
  EnvId id = EnvId::point_mass_nav;
  std::size_t episode_length = 100;
  std::size_t state_dim = 4;
  std::size_t action_dim = 2;

  // point_mass_nav
  double dt = 0.1;
  double v_max = 1.0;
  std::array<double, 2> goal{1.0, 1.0};
  std::array<double, 2> start{0.0, 0.0};

  // bandits
  double mean_base = 60.0;
  double spread_max = 50.0;
  double mean_slope = 10.0;

  static EnvConfig point_mass_nav();
  static EnvConfig flat_mean_spread();
  static EnvConfig tradeoff_spread();
  static EnvConfig defaults_for(EnvId id);

  bool is_bandit() const noexcept { return id != EnvId::point_mass_nav; }
  ActionBox action_box() const noexcept;
  std::size_t descriptor_dim() const noexcept;
  // State components that hold a position (what init-state noise perturbs).
  std::vector<std::size_t> position_components() const;

  void validate() const;

  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

struct EnvState {
  std::vector<double> x;
  std::size_t timestep = 0;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

struct StepOutcome {
  EnvState state;
  double reward = 0.0;
  bool done = false;
};

EnvState env_reset(const EnvConfig& cfg, RngStream& stream);

// Deterministic part of a step: the next state. Throws Errc::episode_complete at t = T.
EnvState env_transition(const EnvConfig& cfg, const EnvState& state, std::span<const double> action);

// R(s, a, s'). The bandits draw their U from `stream`; point_mass_nav draws nothing.
double env_reward(const EnvConfig& cfg, std::span<const double> state, std::span<const double> action,
                  std::span<const double> next_state, RngStream& stream);

// Bandit reward for arm a and spread draw u in [-1, 1].
double bandit_reward(const EnvConfig& cfg, double a, double u) noexcept;

StepOutcome env_step(const EnvConfig& cfg, const EnvState& state, std::span<const double> action,
                     RngStream& stream);

// Final (x, y) for point_mass_nav, the executed action for the bandits.
std::vector<double> descriptor(const EnvConfig& cfg, const Trajectory& traj);

// Scripted proportional-derivative controller for point_mass_nav, expressed as a
// one-layer tanh policy: a = tanh(kp * (goal - p) - kd * v).
PolicyParams goal_seeking_policy(const EnvConfig& cfg, double kp = 4.0, double kd = 2.0);

}  // namespace reprorl
