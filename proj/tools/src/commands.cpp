#include "reprorl/app/commands.hpp"

#include <iostream>

#include "reprorl/error.hpp"
#include "reprorl/serialize.hpp"

namespace reprorl::app {

namespace fs = std::filesystem;

RunArtifact train_one(const ExperimentConfig& cfg, std::uint64_t seed, unsigned jobs) {
  RunArtifact run;
  run.algo = cfg.algo;
  run.seed = seed;
  run.policy_id = std::string(to_string(cfg.algo)) + "-seed" + std::to_string(seed);
  run.config = cfg;
  run.created_at = utc_timestamp();

  switch (cfg.algo) {
    case Algo::es:
    case Algo::res: {
      optim::TrainResult result = optim::train(cfg.effective_es(), cfg.env, cfg.noise, cfg.policy, seed, jobs);
      run.generations = result.state.generation;
      run.history = std::move(result.state.history);
      run.final_policy = std::move(result.final_policy);
      break;
    }
    case Algo::random:
      run.final_policy = optim::initial_policy(cfg.env, cfg.policy, seed);
      break;
    case Algo::scripted:
      if (cfg.scripted_action) {
        run.final_policy = constant_action_policy(cfg.env.state_dim, *cfg.scripted_action, cfg.env.action_box());
      } else {
        run.final_policy = goal_seeking_policy(cfg.env);
      }
      break;
  }
  return run;
}

namespace {

fs::path run_path(const fs::path& out, const RunArtifact& run, std::size_t n_seeds) {
  if (out.extension() == ".json") {
    if (n_seeds == 1) return out;
    return out.parent_path() / (out.stem().string() + "-seed" + std::to_string(run.seed) + ".json");
  }
  return out / ("run-" + std::string(to_string(run.algo)) + "-seed" + std::to_string(run.seed) + ".json");
}

}  // namespace

std::vector<fs::path> cmd_train(const fs::path& config_path, const fs::path& out, const CommandOptions& opts) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::vector<std::uint64_t> seeds = opts.seeds ? *opts.seeds : cfg.seeds;
  if (seeds.empty()) throw Error(Errc::invalid_config, "no seeds to train");

  std::vector<fs::path> written;
  for (std::uint64_t seed : seeds) {
    ExperimentConfig seeded = cfg;
    seeded.seeds = {seed};
    const RunArtifact run = train_one(seeded, seed, opts.jobs);
    const fs::path path = run_path(out, run, seeds.size());
    write_json_file(path, to_json(run));
    if (run.algo == Algo::es || run.algo == Algo::res) {
      fs::path csv = path;
      csv.replace_extension(".history.csv");
      write_text_file(csv, history_csv(run.history));
    }
    written.push_back(path);
  }
  return written;
}

EvalArtifact evaluate_run(const RunArtifact& run, const ExperimentConfig& cfg, unsigned jobs) {
  check_compatible(run.final_policy, cfg.env);
  EvalArtifact art;
  art.record = evaluate(run.final_policy, cfg.env, cfg.noise, cfg.eval, run.policy_id, jobs);
  art.algo = std::string(to_string(run.algo));
  art.train_seed = run.seed;
  art.config = cfg;
  art.created_at = utc_timestamp();
  return art;
}

fs::path cmd_evaluate(const fs::path& policy_path, const fs::path& config_path, const fs::path& out,
                      const CommandOptions& opts) {
  const RunArtifact run = read_run_artifact(policy_path);
  const ExperimentConfig cfg = load_config(config_path);
  EvalArtifact art;
  try {
    art = evaluate_run(run, cfg, opts.jobs);
  } catch (const Error& e) {
    throw Error(e.code(), policy_path.string() + " on " + config_path.string() + ": " + e.what());
  }
  write_json_file(out, to_json(art));
  return out;
}

std::vector<EvalArtifact> load_eval_artifacts(const std::string& eval_glob) {
  const std::vector<fs::path> paths = expand_glob(eval_glob);
  if (paths.empty()) throw Error(Errc::io, "no eval artifacts match '" + eval_glob + "'");
  std::vector<EvalArtifact> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(read_eval_artifact(p));
  return out;
}

Report cmd_report(const std::string& eval_glob, const ReportRequest& req, ReportFormat format, const fs::path& out) {
  const Report report = build_report(load_eval_artifacts(eval_glob), req);
  for (const auto& row : report.rows) {
    if (row.status == "missing") {
      std::cerr << "warning: no eval artifacts for env=" << row.env << " noise=" << row.noise << " algo=" << row.algo
                << "\n";
    }
  }
  if (format == ReportFormat::json) {
    write_json_file(out, render_json(report));
  } else {
    write_text_file(out, render_csv(report));
  }
  return report;
}

std::vector<ParetoRow> cmd_pareto(const std::string& eval_glob, const fs::path& out) {
  const std::vector<ParetoRow> rows = pareto_rows(load_eval_artifacts(eval_glob));
  write_text_file(out, render_pareto_csv(rows));
  return rows;
}

}  // namespace reprorl::app
