#include "reprorl/app/config.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "reprorl/app/format.hpp"
#include "reprorl/serialize.hpp"

namespace reprorl::app {

std::string_view to_string(Algo a) noexcept {
  switch (a) {
    case Algo::es: return "es";
    case Algo::res: return "res";
    case Algo::random: return "random";
    case Algo::scripted: return "scripted";
  }
  return "es";
}

Algo algo_from_string(std::string_view name) {
  if (name == "es") return Algo::es;
  if (name == "res") return Algo::res;
  if (name == "random") return Algo::random;
  if (name == "scripted") return Algo::scripted;
  throw Error(Errc::invalid_config, "unknown algo '" + std::string(name) + "' (valid: es, res, random, scripted)");
}

namespace {

std::string anchor(const std::string& source, std::optional<std::size_t> line, const std::string& message) {
  std::string out = source;
  if (line) out += ":" + std::to_string(*line);
  return out + ": " + message;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::optional<std::size_t> line, const std::string& message)
    : Error(Errc::invalid_config, anchor(source, line, message)), line_(line) {}

optim::EsConfig ExperimentConfig::effective_es() const {
  optim::EsConfig c = es;
  c.fitness = algo == Algo::res ? optim::FitnessKind::repro_weighted : optim::FitnessKind::plain;
  return c;
}

void ExperimentConfig::validate() const {
  env.validate();
  noise.validate();
  eval.validate();
  lcb.validate();
  if (algo == Algo::es || algo == Algo::res) effective_es().validate();
  if (seeds.empty()) throw Error(Errc::invalid_config, "seeds must not be empty");
  bool has_zero = false;
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw Error(Errc::invalid_config, "alphas must be finite and >= 0");
    has_zero = has_zero || a == 0.0;
  }
  if (!has_zero) throw Error(Errc::invalid_config, "alphas must contain 0 (the expected-return column)");
  for (std::size_t h : policy.hidden) {
    if (h == 0) throw Error(Errc::invalid_config, "policy.hidden sizes must be positive");
  }
  if (scripted_action && scripted_action->size() != env.action_dim) {
    throw Error(Errc::invalid_config, "policy.scripted_action must have action_dim entries");
  }
  if (algo == Algo::scripted && env.is_bandit() && !scripted_action) {
    throw Error(Errc::invalid_config, "algo scripted on a bandit needs policy.scripted_action");
  }
  if (report.bootstrap_resamples < 100) throw Error(Errc::invalid_config, "report.bootstrap_resamples must be >= 100");
  if (!(report.confidence > 0.0 && report.confidence < 1.0)) {
    throw Error(Errc::invalid_config, "report.confidence must lie in (0, 1)");
  }
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  static std::optional<std::size_t> line_of(const YAML::Node& n) {
    const YAML::Mark m = n.Mark();
    if (m.is_null() || m.line < 0) return std::nullopt;
    return static_cast<std::size_t>(m.line) + 1;
  }

  [[noreturn]] void fail(const YAML::Node& n, const std::string& message) const {
    throw ConfigError(source_, line_of(n), message);
  }

  void require_map(const YAML::Node& n, const std::string& what) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
  }

  void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                  const std::string& section) const {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) {
        std::string valid;
        for (auto a : allowed) valid += (valid.empty() ? "" : ", ") + std::string(a);
        fail(kv.first, "unknown key '" + key + "' in " + section + " (valid: " + valid + ")");
      }
    }
  }

  template <class T>
  T get(const YAML::Node& n, const std::string& what) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, what + ": cannot read value '" + (n.IsScalar() ? n.Scalar() : std::string("<non-scalar>")) + "'");
    }
  }

  std::size_t get_count(const YAML::Node& n, const std::string& what) const {
    const auto v = get<long long>(n, what);
    if (v < 0) fail(n, what + " must be >= 0");
    return static_cast<std::size_t>(v);
  }

  template <class T>
  void maybe(const YAML::Node& map, const char* key, T& field, const std::string& section) const {
    if (const YAML::Node n = map[key]) field = get<T>(n, section + "." + key);
  }

  void maybe_count(const YAML::Node& map, const char* key, std::size_t& field, const std::string& section) const {
    if (const YAML::Node n = map[key]) field = get_count(n, section + "." + key);
  }

  // Runs f, re-anchoring any library error to node n.
  template <class F>
  auto at(const YAML::Node& n, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

 private:
  std::string source_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view yaml_text, std::string_view source_name) {
  const std::string source(source_name);
  const Reader r(source);

  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line >= 0 ? std::optional<std::size_t>(e.mark.line + 1) : std::nullopt, e.msg);
  }

  ExperimentConfig cfg;
  if (root.IsNull()) {
    cfg.validate();
    return cfg;
  }
  r.require_map(root, "config");
  r.check_keys(root, {"env", "noise", "algo", "policy", "es", "eval", "seeds", "alphas", "lcb", "report"}, "config");

  if (const YAML::Node env = root["env"]) {
    r.require_map(env, "env");
    r.check_keys(env, {"id", "episode_length", "dt", "v_max", "goal", "start", "mean_base", "spread_max", "mean_slope"},
                 "env");
    if (const YAML::Node id = env["id"]) {
      cfg.env = r.at(id, [&] { return EnvConfig::defaults_for(env_id_from_string(r.get<std::string>(id, "env.id"))); });
    }
    r.maybe_count(env, "episode_length", cfg.env.episode_length, "env");
    r.maybe(env, "dt", cfg.env.dt, "env");
    r.maybe(env, "v_max", cfg.env.v_max, "env");
    r.maybe(env, "goal", cfg.env.goal, "env");
    r.maybe(env, "start", cfg.env.start, "env");
    r.maybe(env, "mean_base", cfg.env.mean_base, "env");
    r.maybe(env, "spread_max", cfg.env.spread_max, "env");
    r.maybe(env, "mean_slope", cfg.env.mean_slope, "env");
    r.at(env, [&] { cfg.env.validate(); });
  }

  if (const YAML::Node noise = root["noise"]) {
    r.require_map(noise, "noise");
    r.check_keys(noise, {"kind", "sigma", "resample", "obs_noise_affects_reward"}, "noise");
    if (const YAML::Node kind = noise["kind"]) {
      cfg.noise = r.at(kind, [&] {
        return NoiseConfig::with_default_sigma(noise_kind_from_string(r.get<std::string>(kind, "noise.kind")));
      });
    }
    r.maybe(noise, "sigma", cfg.noise.sigma, "noise");
    if (const YAML::Node rs = noise["resample"]) {
      cfg.noise.resample = r.at(rs, [&] { return resample_from_string(r.get<std::string>(rs, "noise.resample")); });
    }
    r.maybe(noise, "obs_noise_affects_reward", cfg.noise.obs_noise_affects_reward, "noise");
    r.at(noise, [&] { cfg.noise.validate(); });
  }

  if (const YAML::Node algo = root["algo"]) {
    cfg.algo = r.at(algo, [&] { return algo_from_string(r.get<std::string>(algo, "algo")); });
  }

  if (const YAML::Node policy = root["policy"]) {
    r.require_map(policy, "policy");
    r.check_keys(policy, {"hidden", "activation", "scripted_action"}, "policy");
    if (const YAML::Node hidden = policy["hidden"]) {
      cfg.policy.hidden.clear();
      if (!hidden.IsSequence()) r.fail(hidden, "policy.hidden must be a list of layer sizes");
      for (const auto& h : hidden) {
        const std::size_t n = r.get_count(h, "policy.hidden");
        if (n == 0) r.fail(h, "policy.hidden sizes must be positive");
        cfg.policy.hidden.push_back(n);
      }
    }
    if (const YAML::Node act = policy["activation"]) {
      cfg.policy.activation = r.at(act, [&] { return activation_from_string(r.get<std::string>(act, "policy.activation")); });
    }
    if (const YAML::Node sa = policy["scripted_action"]) {
      cfg.scripted_action = r.get<std::vector<double>>(sa, "policy.scripted_action");
    }
  }

  if (const YAML::Node es = root["es"]) {
    r.require_map(es, "es");
    r.check_keys(es, {"pop_size", "sigma", "learning_rate", "l2_coef", "generations", "repro_weight", "reevals"}, "es");
    r.maybe_count(es, "pop_size", cfg.es.pop_size, "es");
    r.maybe(es, "sigma", cfg.es.sigma, "es");
    r.maybe(es, "learning_rate", cfg.es.learning_rate, "es");
    r.maybe(es, "l2_coef", cfg.es.l2_coef, "es");
    r.maybe_count(es, "generations", cfg.es.generations, "es");
    r.maybe(es, "repro_weight", cfg.es.repro_weight, "es");
    r.maybe_count(es, "reevals", cfg.es.reevals, "es");
    r.at(es, [&] {
      if (cfg.algo == Algo::es || cfg.algo == Algo::res) cfg.effective_es().validate();
    });
  }

  if (const YAML::Node eval = root["eval"]) {
    r.require_map(eval, "eval");
    r.check_keys(eval, {"n_evals", "record_state_marginal", "master_seed"}, "eval");
    r.maybe_count(eval, "n_evals", cfg.eval.n_evals, "eval");
    r.maybe(eval, "record_state_marginal", cfg.eval.record_state_marginal, "eval");
    r.maybe(eval, "master_seed", cfg.eval.master_seed, "eval");
    r.at(eval, [&] { cfg.eval.validate(); });
  }

  if (const YAML::Node seeds = root["seeds"]) {
    cfg.seeds = r.get<std::vector<std::uint64_t>>(seeds, "seeds");
    if (cfg.seeds.empty()) r.fail(seeds, "seeds must not be empty");
  }

  if (const YAML::Node alphas = root["alphas"]) {
    cfg.alphas = r.get<std::vector<double>>(alphas, "alphas");
  }

  if (const YAML::Node lcb = root["lcb"]) {
    r.require_map(lcb, "lcb");
    r.check_keys(lcb, {"perf", "disp"}, "lcb");
    if (const YAML::Node p = lcb["perf"]) {
      cfg.lcb.perf = r.at(p, [&] { return metrics::perf_estimator_from_string(r.get<std::string>(p, "lcb.perf")); });
    }
    if (const YAML::Node d = lcb["disp"]) {
      cfg.lcb.disp = r.at(d, [&] { return metrics::disp_estimator_from_string(r.get<std::string>(d, "lcb.disp")); });
    }
  }

  if (const YAML::Node rep = root["report"]) {
    r.require_map(rep, "report");
    r.check_keys(rep, {"bootstrap_resamples", "confidence", "seed"}, "report");
    r.maybe_count(rep, "bootstrap_resamples", cfg.report.bootstrap_resamples, "report");
    r.maybe(rep, "confidence", cfg.report.confidence, "report");
    r.maybe(rep, "seed", cfg.report.seed, "report");
  }

  r.at(root, [&] { cfg.validate(); });
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

namespace {

std::string list(const auto& xs, auto&& fmt) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + fmt(xs[i]);
  return out + "]";
}

}  // namespace

std::string emit_config_yaml(const ExperimentConfig& c) {
  const auto num = [](double v) { return format_double(v); };
  const auto count = [](auto v) { return std::to_string(v); };
  std::ostringstream o;
  o << "env:\n"
    << "  id: " << to_string(c.env.id) << "\n"
    << "  episode_length: " << c.env.episode_length << "\n";
  if (c.env.is_bandit()) {
    o << "  mean_base: " << num(c.env.mean_base) << "\n"
      << "  spread_max: " << num(c.env.spread_max) << "\n"
      << "  mean_slope: " << num(c.env.mean_slope) << "\n";
  } else {
    o << "  dt: " << num(c.env.dt) << "\n"
      << "  v_max: " << num(c.env.v_max) << "\n"
      << "  goal: " << list(c.env.goal, num) << "\n"
      << "  start: " << list(c.env.start, num) << "\n";
  }
  o << "noise:\n"
    << "  kind: " << to_string(c.noise.kind) << "\n"
    << "  sigma: " << num(c.noise.sigma) << "\n"
    << "  resample: " << to_string(c.noise.resample) << "\n"
    << "  obs_noise_affects_reward: " << (c.noise.obs_noise_affects_reward ? "true" : "false") << "\n"
    << "algo: " << to_string(c.algo) << "\n"
    << "policy:\n"
    << "  hidden: " << list(c.policy.hidden, count) << "\n"
    << "  activation: " << to_string(c.policy.activation) << "\n";
  if (c.scripted_action) o << "  scripted_action: " << list(*c.scripted_action, num) << "\n";
  o << "es:\n"
    << "  pop_size: " << c.es.pop_size << "\n"
    << "  sigma: " << num(c.es.sigma) << "\n"
    << "  learning_rate: " << num(c.es.learning_rate) << "\n"
    << "  l2_coef: " << num(c.es.l2_coef) << "\n"
    << "  generations: " << c.es.generations << "\n"
    << "  repro_weight: " << num(c.es.repro_weight) << "\n"
    << "  reevals: " << c.es.reevals << "\n"
    << "eval:\n"
    << "  n_evals: " << c.eval.n_evals << "\n"
    << "  record_state_marginal: " << (c.eval.record_state_marginal ? "true" : "false") << "\n"
    << "  master_seed: " << c.eval.master_seed << "\n"
    << "seeds: " << list(c.seeds, count) << "\n"
    << "alphas: " << list(c.alphas, num) << "\n"
    << "lcb:\n"
    << "  perf: " << metrics::to_string(c.lcb.perf) << "\n"
    << "  disp: " << metrics::to_string(c.lcb.disp) << "\n"
    << "report:\n"
    << "  bootstrap_resamples: " << c.report.bootstrap_resamples << "\n"
    << "  confidence: " << num(c.report.confidence) << "\n"
    << "  seed: " << c.report.seed << "\n";
  return o.str();
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j{{"env", c.env},
                   {"noise", c.noise},
                   {"algo", to_string(c.algo)},
                   {"policy", c.policy},
                   {"es", c.effective_es()},
                   {"eval", c.eval},
                   {"seeds", c.seeds},
                   {"alphas", c.alphas},
                   {"lcb", c.lcb},
                   {"report",
                    {{"bootstrap_resamples", c.report.bootstrap_resamples},
                     {"confidence", c.report.confidence},
                     {"seed", c.report.seed}}}};
  if (c.scripted_action) j["policy"]["scripted_action"] = *c.scripted_action;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.env = j.at("env").get<EnvConfig>();
  c.noise = j.at("noise").get<NoiseConfig>();
  c.algo = algo_from_string(j.at("algo").get<std::string>());
  c.policy = j.at("policy").get<optim::PolicyShape>();
  if (j.at("policy").contains("scripted_action")) {
    c.scripted_action = j.at("policy").at("scripted_action").get<std::vector<double>>();
  }
  c.es = j.at("es").get<optim::EsConfig>();
  c.eval = j.at("eval").get<EvalConfig>();
  c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  c.alphas = j.at("alphas").get<std::vector<double>>();
  c.lcb = j.at("lcb").get<metrics::LcbConfig>();
  const auto& rep = j.at("report");
  c.report.bootstrap_resamples = rep.at("bootstrap_resamples").get<std::size_t>();
  c.report.confidence = rep.at("confidence").get<double>();
  c.report.seed = rep.at("seed").get<std::uint64_t>();
  c.validate();
  return c;
}

namespace {

template <class T>
std::vector<T> parse_list(std::string_view text, const char* what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    T value{};
    const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw Error(Errc::invalid_config, std::string("cannot parse ") + what + " list entry '" + std::string(item) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) { return parse_list<double>(text, "number"); }

std::vector<std::uint64_t> parse_seed_list(std::string_view text) { return parse_list<std::uint64_t>(text, "seed"); }

}  // namespace reprorl::app
