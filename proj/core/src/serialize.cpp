#include "reprorl/serialize.hpp"

#include <string>

#include "reprorl/error.hpp"

namespace reprorl {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, const char* what) {
  Matrix m;
  if (!j.is_array()) throw Error(Errc::shape, std::string(what) + " must be an array of rows");
  for (const auto& row : j) m.append_row(row.get<std::vector<double>>());
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

}  // namespace

void to_json(json& j, const PolicyParams& p) {
  j = json{{"arch", p.arch}, {"activation", to_string(p.activation)}, {"theta", p.theta}};
}

void from_json(const json& j, PolicyParams& p) {
  p.arch.clear();
  for (const auto& v : j.at("arch")) {
    const auto n = v.get<long long>();
    if (n <= 0) throw Error(Errc::invalid_architecture, "policy arch entries must be positive");
    p.arch.push_back(static_cast<std::size_t>(n));
  }
  p.activation = activation_from_string(j.value("activation", std::string("tanh")));
  p.theta = j.at("theta").get<std::vector<double>>();
  p.validate();
}

void to_json(json& j, const EnvConfig& c) {
  j = json{{"id", to_string(c.id)}, {"episode_length", c.episode_length}, {"state_dim", c.state_dim},
           {"action_dim", c.action_dim}};
  if (c.is_bandit()) {
    j["mean_base"] = c.mean_base;
    j["spread_max"] = c.spread_max;
    j["mean_slope"] = c.mean_slope;
  } else {
    j["dt"] = c.dt;
    j["v_max"] = c.v_max;
    j["goal"] = c.goal;
    j["start"] = c.start;
  }
}

void from_json(const json& j, EnvConfig& c) {
  c = EnvConfig::defaults_for(env_id_from_string(j.at("id").get<std::string>()));
  c.episode_length = j.value("episode_length", c.episode_length);
  c.state_dim = j.value("state_dim", c.state_dim);
  c.action_dim = j.value("action_dim", c.action_dim);
  c.dt = j.value("dt", c.dt);
  c.v_max = j.value("v_max", c.v_max);
  if (j.contains("goal")) c.goal = j.at("goal").get<std::array<double, 2>>();
  if (j.contains("start")) c.start = j.at("start").get<std::array<double, 2>>();
  c.mean_base = j.value("mean_base", c.mean_base);
  c.spread_max = j.value("spread_max", c.spread_max);
  c.mean_slope = j.value("mean_slope", c.mean_slope);
  c.validate();
}

void to_json(json& j, const NoiseConfig& c) {
  j = json{{"kind", to_string(c.kind)},
           {"sigma", c.sigma},
           {"resample", to_string(c.resample)},
           {"obs_noise_affects_reward", c.obs_noise_affects_reward}};
}

void from_json(const json& j, NoiseConfig& c) {
  c = NoiseConfig{};
  c.kind = noise_kind_from_string(j.at("kind").get<std::string>());
  c.sigma = j.contains("sigma") ? j.at("sigma").get<double>() : NoiseConfig::default_sigma(c.kind);
  c.resample = resample_from_string(j.value("resample", std::string("per_episode")));
  c.obs_noise_affects_reward = j.value("obs_noise_affects_reward", true);
  c.validate();
}

void to_json(json& j, const EvalConfig& c) {
  j = json{{"n_evals", c.n_evals}, {"record_state_marginal", c.record_state_marginal}, {"master_seed", c.master_seed}};
}

void from_json(const json& j, EvalConfig& c) {
  c = EvalConfig{};
  c.n_evals = j.value("n_evals", c.n_evals);
  c.record_state_marginal = j.value("record_state_marginal", c.record_state_marginal);
  c.master_seed = j.value("master_seed", c.master_seed);
  c.validate();
}

void to_json(json& j, const EvalRecord& r) {
  j = json{{"policy_id", r.policy_id}, {"env", r.env},          {"noise", r.noise},
           {"master_seed", r.master_seed}, {"n_evals", r.n_evals}, {"returns", r.returns},
           {"descriptors", matrix_to_json(r.descriptors)}};
  if (r.state_marginals) j["state_marginals"] = matrix_to_json(*r.state_marginals);
}

void from_json(const json& j, EvalRecord& r) {
  r = EvalRecord{};
  r.policy_id = j.at("policy_id").get<std::string>();
  r.env = j.at("env").get<EnvConfig>();
  r.noise = j.at("noise").get<NoiseConfig>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.n_evals = j.at("n_evals").get<std::size_t>();
  r.returns = j.at("returns").get<std::vector<double>>();
  r.descriptors = matrix_from_json(j.at("descriptors"), "descriptors");
  if (j.contains("state_marginals") && !j.at("state_marginals").is_null()) {
    r.state_marginals = matrix_from_json(j.at("state_marginals"), "state_marginals");
  }
  r.validate();
}

namespace optim {

void to_json(json& j, const EsConfig& c) {
  j = json{{"pop_size", c.pop_size},
           {"sigma", c.sigma},
           {"learning_rate", c.learning_rate},
           {"l2_coef", c.l2_coef},
           {"generations", c.generations},
           {"fitness", to_string(c.fitness)},
           {"repro_weight", c.repro_weight},
           {"reevals", c.reevals}};
}

void from_json(const json& j, EsConfig& c) {
  c = EsConfig{};
  c.pop_size = j.value("pop_size", c.pop_size);
  c.sigma = j.value("sigma", c.sigma);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.l2_coef = j.value("l2_coef", c.l2_coef);
  c.generations = j.value("generations", c.generations);
  c.fitness = fitness_kind_from_string(j.value("fitness", std::string("plain")));
  c.repro_weight = j.value("repro_weight", c.repro_weight);
  c.reevals = j.value("reevals", c.reevals);
  c.validate();
}

void to_json(json& j, const HistoryRow& r) {
  j = json{{"generation", r.generation},
           {"mean_fitness", r.mean_fitness},
           {"best_fitness", r.best_fitness},
           {"theta_norm", r.theta_norm}};
}

void from_json(const json& j, HistoryRow& r) {
  r.generation = j.at("generation").get<std::size_t>();
  r.mean_fitness = j.at("mean_fitness").get<double>();
  r.best_fitness = j.at("best_fitness").get<double>();
  r.theta_norm = j.at("theta_norm").get<double>();
}

void to_json(json& j, const PolicyShape& s) {
  j = json{{"hidden", s.hidden}, {"activation", to_string(s.activation)}};
}

void from_json(const json& j, PolicyShape& s) {
  s = PolicyShape{};
  if (j.contains("hidden")) s.hidden = j.at("hidden").get<std::vector<std::size_t>>();
  s.activation = activation_from_string(j.value("activation", std::string("tanh")));
}

}  // namespace optim

namespace metrics {

void to_json(json& j, const LcbConfig& c) {
  j = json{{"perf", to_string(c.perf)}, {"disp", to_string(c.disp)}};
}

void from_json(const json& j, LcbConfig& c) {
  c = LcbConfig{};
  c.perf = perf_estimator_from_string(j.value("perf", std::string("mean")));
  c.disp = disp_estimator_from_string(j.value("disp", std::string("mad")));
}

}  // namespace metrics

}  // namespace reprorl
