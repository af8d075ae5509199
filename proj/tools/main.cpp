#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reprorl/app/commands.hpp"
#include "reprorl/app/config.hpp"
#include "reprorl/app/report.hpp"
#include "reprorl/error.hpp"
#include "reprorl/metrics.hpp"

namespace app = reprorl::app;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

bool is_usage_error(const reprorl::Error& e) {
  return e.code() == reprorl::Errc::invalid_config || dynamic_cast<const app::ConfigError*>(&e) != nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Reproducibility measurement for RL policies under injected noise"};
  cli.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string policy_path;
  std::string seeds_text;
  unsigned jobs = 1;

  auto* train = cli.add_subcommand("train", "Train one policy per seed and write run artifacts");
  train->add_option("--config", config_path, "Experiment config (YAML)")->required();
  train->add_option("--out", out_path, "Output .json file or directory")->required();
  train->add_option("--seeds", seeds_text, "Comma list of seeds (overrides config)");
  train->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* evaluate = cli.add_subcommand("evaluate", "Roll out a trained policy and write an eval artifact");
  evaluate->add_option("--policy", policy_path, "Run artifact")->required();
  evaluate->add_option("--config", config_path, "Experiment config (YAML)")->required();
  evaluate->add_option("--out", out_path, "Output .json file")->required();
  evaluate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string eval_glob;
  std::string metric = "mad";
  std::string alphas_text = "0";
  std::string format_text = "csv";
  std::string perf = "mean";
  std::string disp = "mad";
  std::size_t resamples = reprorl::stats::default_bootstrap_resamples;
  double confidence = reprorl::stats::default_confidence;
  std::uint64_t report_seed = 0;

  auto* report = cli.add_subcommand("report", "Aggregate eval artifacts into a table");
  report->add_option("evals", eval_glob, "Glob or directory of eval artifacts")->required();
  report->add_option("--metric", metric, "mad, iqr, lcb, bmad, biqr or smad");
  report->add_option("--alphas", alphas_text, "Comma list of alphas (lcb only)");
  report->add_option("--format", format_text, "csv or json");
  report->add_option("--perf", perf, "LCB performance estimator: mean or median");
  report->add_option("--disp", disp, "LCB dispersion estimator: mad, iqr or std");
  report->add_option("--resamples", resamples, "Bootstrap resamples");
  report->add_option("--confidence", confidence, "Bootstrap confidence level");
  report->add_option("--seed", report_seed, "Bootstrap seed");
  report->add_option("--out", out_path, "Output file")->required();

  auto* pareto = cli.add_subcommand("pareto", "Expected return vs -MAD with front membership");
  pareto->add_option("evals", eval_glob, "Glob or directory of eval artifacts")->required();
  pareto->add_option("--out", out_path, "Output CSV")->required();

  auto* print_config = cli.add_subcommand("print-config", "Print the fully resolved config");
  print_config->add_option("--config", config_path, "Experiment config (defaults when omitted)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return exit_usage;
  }

  try {
    app::CommandOptions opts;
    opts.jobs = jobs;
    if (!seeds_text.empty()) opts.seeds = app::parse_seed_list(seeds_text);

    if (*train) {
      for (const auto& p : app::cmd_train(config_path, out_path, opts)) std::cout << p.string() << "\n";
    } else if (*evaluate) {
      std::cout << app::cmd_evaluate(policy_path, config_path, out_path, opts).string() << "\n";
    } else if (*report) {
      app::ReportRequest req;
      req.metric = app::report_metric_from_string(metric);
      req.alphas = app::parse_double_list(alphas_text);
      req.lcb.perf = reprorl::metrics::perf_estimator_from_string(perf);
      req.lcb.disp = reprorl::metrics::disp_estimator_from_string(disp);
      req.resamples = resamples;
      req.confidence = confidence;
      req.seed = report_seed;
      app::cmd_report(eval_glob, req, app::report_format_from_string(format_text), out_path);
      std::cout << out_path << "\n";
    } else if (*pareto) {
      app::cmd_pareto(eval_glob, out_path);
      std::cout << out_path << "\n";
    } else if (*print_config) {
      const app::ExperimentConfig cfg =
          config_path.empty() ? app::ExperimentConfig{} : app::load_config(config_path);
      cfg.validate();
      std::cout << app::emit_config_yaml(cfg);
    }
  } catch (const reprorl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage_error(e) ? exit_usage : exit_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_ok;
}
