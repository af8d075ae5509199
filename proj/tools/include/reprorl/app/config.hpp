#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "reprorl/envs.hpp"
#include "reprorl/error.hpp"
#include "reprorl/metrics.hpp"
#include "reprorl/noise.hpp"
#include "reprorl/optim.hpp"
#include "reprorl/rollout.hpp"
#include "reprorl/stats.hpp"

namespace reprorl::app {

enum class Algo { es, res, random, scripted };

std::string_view to_string(Algo a) noexcept;
Algo algo_from_string(std::string_view name);

struct ReportOptions {
  std::size_t bootstrap_resamples = stats::default_bootstrap_resamples;
  double confidence = stats::default_confidence;
  std::uint64_t seed = 0;
};

// Everything one experiment needs. Serialised as YAML for humans and embedded
// as JSON in every artifact, so artifacts never depend on the original file.
struct ExperimentConfig {
  EnvConfig env;
  NoiseConfig noise;
  Algo algo = Algo::es;
  optim::PolicyShape policy;
  std::optional<std::vector<double>> scripted_action;
  optim::EsConfig es;
  EvalConfig eval;
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> alphas{0.0, 0.1, 0.4, 1.0, 2.0};
  metrics::LcbConfig lcb;
  ReportOptions report;

  // es with fitness forced by algo: plain for es, repro_weighted for res.
  optim::EsConfig effective_es() const;

  void validate() const;
};

// A config problem, anchored to a line of the source file when one is known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, std::optional<std::size_t> line, const std::string& message);

  const std::optional<std::size_t>& line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

ExperimentConfig parse_config(std::string_view yaml_text, std::string_view source_name = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// YAML with every field spelled out (what print-config shows).
std::string emit_config_yaml(const ExperimentConfig& cfg);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

// "0,0.1,2" -> {0, 0.1, 2}
std::vector<double> parse_double_list(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace reprorl::app
