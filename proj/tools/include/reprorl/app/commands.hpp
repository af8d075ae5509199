#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reprorl/app/artifacts.hpp"
#include "reprorl/app/config.hpp"
#include "reprorl/app/report.hpp"

namespace reprorl::app {

struct CommandOptions {
  std::optional<std::vector<std::uint64_t>> seeds;  // overrides config seeds
  unsigned jobs = 1;                                 // never changes results
};

// Produces the run artifact for one seed (no IO).
RunArtifact train_one(const ExperimentConfig& cfg, std::uint64_t seed, unsigned jobs = 1);

// Writes one run artifact per seed (plus <stem>.history.csv for es/res).
// `out` ending in .json names the file (a -seed<N> suffix is added when there
// are several seeds); anything else is treated as a directory.
std::vector<std::filesystem::path> cmd_train(const std::filesystem::path& config_path,
                                             const std::filesystem::path& out, const CommandOptions& opts = {});

EvalArtifact evaluate_run(const RunArtifact& run, const ExperimentConfig& cfg, unsigned jobs = 1);

std::filesystem::path cmd_evaluate(const std::filesystem::path& policy_path,
                                   const std::filesystem::path& config_path, const std::filesystem::path& out,
                                   const CommandOptions& opts = {});

std::vector<EvalArtifact> load_eval_artifacts(const std::string& eval_glob);

// Writes the report; returns it so callers can inspect missing cells.
Report cmd_report(const std::string& eval_glob, const ReportRequest& req, ReportFormat format,
                  const std::filesystem::path& out);

std::vector<ParetoRow> cmd_pareto(const std::string& eval_glob, const std::filesystem::path& out);

}  // namespace reprorl::app
