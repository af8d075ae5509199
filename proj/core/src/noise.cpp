#include "reprorl/noise.hpp"

#include <cmath>
#include <string>

#include "reprorl/error.hpp"

namespace reprorl {

std::string_view to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::action: return "action";
    case NoiseKind::observation: return "obs";
    case NoiseKind::reward: return "reward";
    case NoiseKind::parameter: return "param";
    case NoiseKind::init_state: return "init-state";
    case NoiseKind::dynamics: return "dynamics";
  }
  return "none";
}

std::string_view valid_noise_kinds() noexcept {
  return "none, action, obs, reward, param, init-state, dynamics";
}

NoiseKind noise_kind_from_string(std::string_view name) {
  for (NoiseKind k : {NoiseKind::none, NoiseKind::action, NoiseKind::observation, NoiseKind::reward,
                      NoiseKind::parameter, NoiseKind::init_state, NoiseKind::dynamics}) {
    if (name == to_string(k)) return k;
  }
  throw Error(Errc::invalid_config, "unknown noise kind '" + std::string(name) + "' (valid kinds: " +
                                        std::string(valid_noise_kinds()) + ")");
}

std::string_view to_string(Resample r) noexcept {
  return r == Resample::per_step ? "per_step" : "per_episode";
}

Resample resample_from_string(std::string_view name) {
  if (name == "per_episode") return Resample::per_episode;
  if (name == "per_step") return Resample::per_step;
  throw Error(Errc::invalid_config,
              "unknown resample mode '" + std::string(name) + "' (valid: per_episode, per_step)");
}

double NoiseConfig::default_sigma(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::none: return 0.0;
    case NoiseKind::action: return 0.2;
    case NoiseKind::observation: return 0.05;
    case NoiseKind::reward: return 0.5;
    case NoiseKind::parameter: return 0.02;
    case NoiseKind::init_state: return 0.1;
    case NoiseKind::dynamics: return 0.01;
  }
  return 0.0;
}

NoiseConfig NoiseConfig::with_default_sigma(NoiseKind kind) {
  NoiseConfig n;
  n.kind = kind;
  n.sigma = default_sigma(kind);
  return n;
}

void NoiseConfig::validate() const {
  if (kind == NoiseKind::none) return;
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_config, "noise sigma must be finite and >= 0");
  }
}

EnvState wrap_reset(const EnvConfig& cfg, const NoiseConfig& noise, RngStream& init_stream) {
  EnvState s = env_reset(cfg, init_stream);
  if (noise.kind == NoiseKind::init_state && noise.sigma > 0.0) {
    for (std::size_t c : cfg.position_components()) s.x[c] += noise.sigma * init_stream.gaussian();
  }
  return s;
}

namespace {

std::vector<double> perturbed(std::span<const double> x, double sigma, RngStream& stream) {
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v += sigma * stream.gaussian();
  return out;
}

}  // namespace

std::vector<double> wrap_initial_observation(const EnvConfig& /*cfg*/, const NoiseConfig& noise,
                                             const EnvState& state, RngStream& noise_stream) {
  if (noise.kind == NoiseKind::observation && noise.sigma > 0.0) {
    return perturbed(state.x, noise.sigma, noise_stream);
  }
  return state.x;
}

WrappedStep wrap_step(const EnvConfig& cfg, const NoiseConfig& noise, const EnvState& state,
                      std::span<const double> observation, std::span<const double> action,
                      RngStream& noise_stream, RngStream& env_stream) {
  const bool on = noise.sigma > 0.0;
  const ActionBox box = cfg.action_box();

  WrappedStep out;
  out.executed_action.assign(action.begin(), action.end());
  if (noise.kind == NoiseKind::action && on) {
    for (double& a : out.executed_action) a += noise.sigma * noise_stream.gaussian();
  }
  for (double& a : out.executed_action) a = box.clip(a);

  out.state = env_transition(cfg, state, out.executed_action);
  if (noise.kind == NoiseKind::dynamics && on) {
    for (double& v : out.state.x) v += noise.sigma * noise_stream.gaussian();
  }

  if (noise.kind == NoiseKind::observation && on) {
    out.observation = perturbed(out.state.x, noise.sigma, noise_stream);
    if (noise.obs_noise_affects_reward) {
      out.reward = env_reward(cfg, observation, out.executed_action, out.observation, env_stream);
    } else {
      out.reward = env_reward(cfg, state.x, out.executed_action, out.state.x, env_stream);
    }
  } else {
    out.observation = out.state.x;
    out.reward = env_reward(cfg, state.x, out.executed_action, out.state.x, env_stream);
  }

  if (noise.kind == NoiseKind::reward && on) out.reward += noise.sigma * noise_stream.gaussian();

  out.done = out.state.timestep == cfg.episode_length;
  return out;
}

PolicyParams wrap_params(const PolicyParams& params, const NoiseConfig& noise, RngStream& stream) {
  if (noise.kind != NoiseKind::parameter) {
    throw Error(Errc::misuse, "wrap_params called with noise kind '" + std::string(to_string(noise.kind)) + "'");
  }
  PolicyParams out = params;
  if (noise.sigma > 0.0) {
    for (double& w : out.theta) w += noise.sigma * stream.gaussian();
  }
  return out;
}

}  // namespace reprorl
