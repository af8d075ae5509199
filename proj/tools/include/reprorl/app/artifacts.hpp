#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reprorl/app/config.hpp"
#include "reprorl/optim.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rollout.hpp"

namespace reprorl::app {

inline constexpr int artifact_format_version = 1;

// Output of `train`: one per seed.
//   {"kind": "run", "format_version", "created_at", "policy_id", "algo", "seed",
//    "generations", "history": [...], "final_policy": {...}, "config": {...}}
struct RunArtifact {
  std::string policy_id;
  Algo algo = Algo::es;
  std::uint64_t seed = 0;
  std::size_t generations = 0;
  std::vector<optim::HistoryRow> history;
  PolicyParams final_policy;
  ExperimentConfig config;
  std::string created_at;
};

// Output of `evaluate`: the EvalRecord fields at top level plus provenance.
//   {"kind": "eval", "format_version", "created_at", "algo", "train_seed",
//    "policy_id", "env", "noise", "master_seed", "n_evals", "returns",
//    "descriptors", "state_marginals"?, "config"?}
struct EvalArtifact {
  EvalRecord record;
  std::string algo = "unknown";
  std::optional<std::uint64_t> train_seed;
  std::optional<ExperimentConfig> config;
  std::string created_at;
};

nlohmann::json to_json(const RunArtifact& a);
RunArtifact run_artifact_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EvalArtifact& a);
EvalArtifact eval_artifact_from_json(const nlohmann::json& j);

RunArtifact read_run_artifact(const std::filesystem::path& path);
EvalArtifact read_eval_artifact(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
// Pretty-printed, newline-terminated. Creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// generation,mean_fitness,best_fitness,theta_norm
std::string history_csv(const std::vector<optim::HistoryRow>& history);

std::string utc_timestamp();

// Sorted matches of a shell glob. A directory expands to the *.json files in it.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

}  // namespace reprorl::app
