#include "reprorl/envs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reprorl/error.hpp"

namespace reprorl {

std::string_view to_string(EnvId id) noexcept {
  switch (id) {
    case EnvId::point_mass_nav: return "point_mass_nav";
    case EnvId::flat_mean_spread: return "flat_mean_spread";
    case EnvId::tradeoff_spread: return "tradeoff_spread";
  }
  return "point_mass_nav";
}

EnvId env_id_from_string(std::string_view name) {
  if (name == "point_mass_nav") return EnvId::point_mass_nav;
  if (name == "flat_mean_spread") return EnvId::flat_mean_spread;
  if (name == "tradeoff_spread") return EnvId::tradeoff_spread;
  throw Error(Errc::invalid_config, "unknown env '" + std::string(name) +
                                        "' (valid: point_mass_nav, flat_mean_spread, tradeoff_spread)");
}

EnvConfig EnvConfig::point_mass_nav() { return EnvConfig{}; }

EnvConfig EnvConfig::flat_mean_spread() {
  EnvConfig c;
  c.id = EnvId::flat_mean_spread;
  c.episode_length = 1;
  c.state_dim = 1;
  c.action_dim = 1;
  return c;
}

EnvConfig EnvConfig::tradeoff_spread() {
  EnvConfig c = flat_mean_spread();
  c.id = EnvId::tradeoff_spread;
  return c;
}

EnvConfig EnvConfig::defaults_for(EnvId id) {
  switch (id) {
    case EnvId::point_mass_nav: return point_mass_nav();
    case EnvId::flat_mean_spread: return flat_mean_spread();
    case EnvId::tradeoff_spread: return tradeoff_spread();
  }
  return point_mass_nav();
}

ActionBox EnvConfig::action_box() const noexcept {
  return is_bandit() ? ActionBox{0.0, 1.0} : ActionBox{-1.0, 1.0};
}

std::size_t EnvConfig::descriptor_dim() const noexcept { return is_bandit() ? 1 : 2; }

std::vector<std::size_t> EnvConfig::position_components() const {
  if (is_bandit()) return {0};
  return {0, 1};
}

void EnvConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::invalid_config, what); };
  if (episode_length < 1) fail("episode_length must be at least 1");
  if (is_bandit()) {
    if (episode_length != 1) fail(std::string(to_string(id)) + " is a one-step bandit: episode_length must be 1");
    if (state_dim != 1 || action_dim != 1) fail(std::string(to_string(id)) + " has state_dim = action_dim = 1");
    if (!(spread_max >= 0.0) || !std::isfinite(spread_max)) fail("spread_max must be finite and >= 0");
    if (!std::isfinite(mean_base) || !std::isfinite(mean_slope)) fail("bandit means must be finite");
  } else {
    if (state_dim != 4 || action_dim != 2) fail("point_mass_nav has state_dim 4 and action_dim 2");
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be finite and > 0");
    if (!(v_max > 0.0) || !std::isfinite(v_max)) fail("v_max must be finite and > 0");
    for (double v : {goal[0], goal[1], start[0], start[1]}) {
      if (!std::isfinite(v)) fail("goal and start must be finite");
    }
  }
}

EnvState env_reset(const EnvConfig& cfg, RngStream& /*stream*/) {
  EnvState s;
  if (cfg.is_bandit()) {
    s.x = {0.0};
  } else {
    s.x = {cfg.start[0], cfg.start[1], 0.0, 0.0};
  }
  return s;
}

EnvState env_transition(const EnvConfig& cfg, const EnvState& state, std::span<const double> action) {
  if (state.timestep >= cfg.episode_length) {
    throw Error(Errc::episode_complete, "episode already finished at step " + std::to_string(state.timestep));
  }
  if (action.size() != cfg.action_dim) {
    throw Error(Errc::shape, "action has " + std::to_string(action.size()) + " entries, env expects " +
                                 std::to_string(cfg.action_dim));
  }
  if (state.x.size() != cfg.state_dim) {
    throw Error(Errc::shape, "state has the wrong dimension for this env");
  }

  EnvState next = state;
  next.timestep = state.timestep + 1;
  if (cfg.is_bandit()) return next;

  double vx = state.x[2] + action[0] * cfg.dt;
  double vy = state.x[3] + action[1] * cfg.dt;
  const double speed = std::hypot(vx, vy);
  if (speed > cfg.v_max) {
    vx *= cfg.v_max / speed;
    vy *= cfg.v_max / speed;
  }
  next.x[0] = state.x[0] + vx * cfg.dt;
  next.x[1] = state.x[1] + vy * cfg.dt;
  next.x[2] = vx;
  next.x[3] = vy;
  return next;
}

double bandit_reward(const EnvConfig& cfg, double a, double u) noexcept {
  const double mean = cfg.id == EnvId::tradeoff_spread ? cfg.mean_base + cfg.mean_slope * a : cfg.mean_base;
  return mean + cfg.spread_max * a * u;
}

double env_reward(const EnvConfig& cfg, std::span<const double> /*state*/, std::span<const double> action,
                  std::span<const double> next_state, RngStream& stream) {
  if (cfg.is_bandit()) {
    const double u = stream.uniform(-1.0, 1.0);
    return bandit_reward(cfg, action[0], u);
  }
  return -std::hypot(next_state[0] - cfg.goal[0], next_state[1] - cfg.goal[1]);
}

StepOutcome env_step(const EnvConfig& cfg, const EnvState& state, std::span<const double> action,
                     RngStream& stream) {
  StepOutcome out;
  out.state = env_transition(cfg, state, action);
  out.reward = env_reward(cfg, state.x, action, out.state.x, stream);
  out.done = out.state.timestep == cfg.episode_length;
  return out;
}

std::vector<double> descriptor(const EnvConfig& cfg, const Trajectory& traj) {
  if (traj.length() != cfg.episode_length || traj.states.rows() != cfg.episode_length ||
      traj.actions.rows() != cfg.episode_length) {
    throw Error(Errc::incomplete_trajectory, "descriptor needs a complete trajectory of " +
                                                 std::to_string(cfg.episode_length) + " steps, got " +
                                                 std::to_string(traj.length()));
  }
  if (cfg.is_bandit()) {
    return {traj.actions(0, 0)};
  }
  const auto last = traj.states.row(traj.states.rows() - 1);
  return {last[0], last[1]};
}

PolicyParams goal_seeking_policy(const EnvConfig& cfg, double kp, double kd) {
  if (cfg.id != EnvId::point_mass_nav) {
    throw Error(Errc::misuse, "goal_seeking_policy is only defined for point_mass_nav");
  }
  PolicyParams p;
  p.arch = {4, 2};
  // Rows: action x, action y. Columns: px, py, vx, vy. Then two biases.
  p.theta = {-kp, 0.0, -kd, 0.0,
             0.0, -kp, 0.0, -kd,
             kp * cfg.goal[0], kp * cfg.goal[1]};
  return p;
}

}  // namespace reprorl
