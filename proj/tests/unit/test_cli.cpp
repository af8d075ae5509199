#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "reprorl/app/artifacts.hpp"
#include "reprorl/app/commands.hpp"
#include "reprorl/app/config.hpp"
#include "reprorl/app/report.hpp"
#include "reprorl/stats.hpp"

using namespace reprorl;
using namespace reprorl::app;
namespace fs = std::filesystem;
using testing::throws_code;

namespace {

// A scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("reprorl-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& leaf) const { return path / leaf; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

nlohmann::json without_timestamp(const fs::path& p) {
  nlohmann::json j = nlohmann::json::parse(slurp(p));
  j.erase("created_at");
  return j;
}

struct RunResult {
  int code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() / ("reprorl-cli-" + std::to_string(::getpid()) + "-" +
                                                    std::to_string(counter++) + ".log");
  const std::string cmd = std::string(REPRORL_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
  fs::remove(log);
  return r;
}

EvalArtifact artifact(const std::string& id, const std::string& algo, std::vector<double> returns,
                      NoiseKind kind = NoiseKind::none, EnvConfig env = EnvConfig::flat_mean_spread()) {
  EvalArtifact a;
  a.algo = algo;
  a.record.policy_id = id;
  a.record.env = env;
  a.record.noise = NoiseConfig::with_default_sigma(kind);
  a.record.n_evals = returns.size();
  a.record.descriptors = Matrix(returns.size(), 1, 0.0);
  a.record.returns = std::move(returns);
  a.created_at = "2000-01-01T00:00:00Z";
  return a;
}

const char* flat_scripted = R"(env:
  id: flat_mean_spread
algo: scripted
policy:
  scripted_action: [0]
eval:
  n_evals: 64
seeds: [0]
)";

}  // namespace

TEST_CASE("parse_config defaults and overrides") {
  const ExperimentConfig d = parse_config("");
  CHECK(d.env == EnvConfig::point_mass_nav());
  CHECK(d.noise.kind == NoiseKind::none);
  CHECK(d.algo == Algo::es);
  CHECK(d.eval.n_evals == 256);
  CHECK(d.seeds == std::vector<std::uint64_t>{0});
  CHECK(d.alphas == std::vector<double>{0, 0.1, 0.4, 1, 2});

  const ExperimentConfig c = parse_config(R"(
env:
  id: tradeoff_spread
  mean_slope: 12
noise:
  kind: reward
algo: res
es:
  pop_size: 16
  generations: 3
  reevals: 4
eval:
  n_evals: 32
  master_seed: 9
seeds: [1, 2, 3]
alphas: [0, 0.5]
lcb:
  perf: median
  disp: iqr
)");
  CHECK(c.env.id == EnvId::tradeoff_spread);
  CHECK(c.env.mean_slope == 12);
  CHECK(c.env.state_dim == 1);
  CHECK(c.noise.kind == NoiseKind::reward);
  CHECK(c.noise.sigma == 0.5);
  CHECK(c.algo == Algo::res);
  CHECK(c.effective_es().fitness == optim::FitnessKind::repro_weighted);
  CHECK(c.es.pop_size == 16);
  CHECK(c.es.reevals == 4);
  CHECK(c.eval.master_seed == 9);
  CHECK(c.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(c.lcb.perf == metrics::PerfEstimator::median);
  CHECK(c.lcb.disp == metrics::DispEstimator::iqr);
}

TEST_CASE("config errors are anchored to a line") {
  auto line_of = [](const std::string& yaml) -> std::optional<std::size_t> {
    try {
      parse_config(yaml, "exp.yaml");
    } catch (const ConfigError& e) {
      return e.line();
    }
    return std::nullopt;
  };
  CHECK(line_of("env:\n  id: point_mass_nav\nnoise:\n  kind: bogus\n") == 4u);
  CHECK(line_of("env:\n  id: point_mass_nav\n  speed: 3\n") == 3u);
  CHECK(line_of("es:\n  pop_size: 7\n") == 2u);
  CHECK(line_of("seeds: []\n").has_value());
  CHECK(line_of("alphas: [0.1, 1]\n") == 1u);
  CHECK(line_of("alphas: [0, -1]\n") == 1u);
  CHECK(line_of("eval:\n  n_evals: many\n") == 2u);
  CHECK(line_of("env: [1, 2\n").has_value());

  try {
    parse_config("noise:\n  kind: bogus\n", "exp.yaml");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.rfind("exp.yaml:2:", 0) == 0);
    CHECK(msg.find("init-state") != std::string::npos);
    CHECK(msg.find("dynamics") != std::string::npos);
  }
}

TEST_CASE("config round trips through YAML and JSON") {
  ExperimentConfig c = parse_config("env:\n  id: tradeoff_spread\nnoise:\n  kind: obs\n  sigma: 0.3\nalgo: scripted\n"
                                    "policy:\n  scripted_action: [0.25]\nseeds: [4, 5]\n");
  const nlohmann::json j = config_to_json(c);
  CHECK(config_to_json(parse_config(emit_config_yaml(c))) == j);
  CHECK(config_to_json(config_from_json(j)) == j);
  CHECK(config_to_json(parse_config(emit_config_yaml(ExperimentConfig{}))) == config_to_json(ExperimentConfig{}));
}

TEST_CASE("list parsing") {
  CHECK(parse_double_list("0,0.1, 2") == std::vector<double>{0, 0.1, 2});
  CHECK(parse_seed_list("3,1") == std::vector<std::uint64_t>{3, 1});
  CHECK(throws_code([] { parse_double_list("0,x"); }, Errc::invalid_config));
  CHECK(throws_code([] { parse_seed_list("-1"); }, Errc::invalid_config));
}

TEST_CASE("train with zero generations stores the initial policy") {
  TempDir dir("train0");
  spit(dir / "c.yaml", "env:\n  id: tradeoff_spread\nes:\n  generations: 0\nseeds: [6]\n");
  const auto paths = cmd_train(dir / "c.yaml", dir / "run.json");
  REQUIRE(paths.size() == 1);
  const RunArtifact run = read_run_artifact(paths[0]);
  CHECK(run.final_policy == optim::initial_policy(EnvConfig::tradeoff_spread(), optim::PolicyShape{}, 6));
  CHECK(run.generations == 0);
  CHECK(run.seed == 6);
}

TEST_CASE("train is deterministic and writes one artifact per seed") {
  TempDir dir("train");
  spit(dir / "c.yaml",
       "env:\n  id: tradeoff_spread\nalgo: res\nes:\n  pop_size: 8\n  generations: 3\n  reevals: 4\nseeds: [1, 2]\n");
  const auto a = cmd_train(dir / "c.yaml", dir / "a");
  const auto b = cmd_train(dir / "c.yaml", dir / "b");
  REQUIRE(a.size() == 2);
  CHECK(a[0].filename() == "run-res-seed1.json");
  CHECK(fs::exists(dir / "a" / "run-res-seed1.history.csv"));
  CHECK(slurp(dir / "a" / "run-res-seed1.history.csv").rfind("generation,mean_fitness,best_fitness", 0) == 0);
  for (std::size_t i = 0; i < 2; ++i) CHECK(without_timestamp(a[i]) == without_timestamp(b[i]));
  CHECK(without_timestamp(a[0]) != without_timestamp(a[1]));

  CommandOptions opts;
  opts.seeds = std::vector<std::uint64_t>{9};
  const auto c = cmd_train(dir / "c.yaml", dir / "c", opts);
  REQUIRE(c.size() == 1);
  CHECK(read_run_artifact(c[0]).seed == 9);

  const auto named = cmd_train(dir / "c.yaml", dir / "named.json");
  CHECK(named[0].filename() == "named-seed1.json");
}

TEST_CASE("evaluate") {
  TempDir dir("eval");
  spit(dir / "c.yaml", flat_scripted);
  const auto run = cmd_train(dir / "c.yaml", dir / "run.json");
  cmd_evaluate(run[0], dir / "c.yaml", dir / "e1.json");
  const EvalArtifact e = read_eval_artifact(dir / "e1.json");
  CHECK(e.record.n_evals == 64);
  for (double r : e.record.returns) CHECK(r == 60.0);
  CHECK(e.algo == "scripted");
  CHECK(e.train_seed == 0u);

  cmd_evaluate(run[0], dir / "c.yaml", dir / "e2.json");
  CHECK(without_timestamp(dir / "e1.json") == without_timestamp(dir / "e2.json"));

  std::string one = flat_scripted;
  one.replace(one.find("n_evals: 64"), 11, "n_evals: 1");
  spit(dir / "one.yaml", one);
  cmd_evaluate(run[0], dir / "one.yaml", dir / "e3.json");
  CHECK(read_eval_artifact(dir / "e3.json").record.returns.size() == 1);

  spit(dir / "nav.yaml", "env:\n  id: point_mass_nav\n");
  try {
    cmd_evaluate(run[0], dir / "nav.yaml", dir / "bad.json");
    FAIL("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::shape);
    CHECK(std::string(e.what()).find("point_mass_nav") != std::string::npos);
  }
}

TEST_CASE("evaluate on a noiseless env gives identical returns") {
  TempDir dir("eval256");
  spit(dir / "c.yaml", "env:\n  id: point_mass_nav\nalgo: random\nseeds: [2]\n");
  const auto run = cmd_train(dir / "c.yaml", dir / "run.json");
  cmd_evaluate(run[0], dir / "c.yaml", dir / "e.json");
  const EvalArtifact e = read_eval_artifact(dir / "e.json");
  REQUIRE(e.record.returns.size() == 256);
  for (double r : e.record.returns) REQUIRE(r == e.record.returns[0]);
}

TEST_CASE("report: constant single seed gives a zero MAD with a zero interval") {
  const Report r = build_report({artifact("a", "es", {7, 7, 7})}, ReportRequest{});
  REQUIRE(r.rows.size() == 1);
  const ReportValue v = r.rows[0].values.at(0);
  CHECK(v.point == 0);
  CHECK(v.lo == 0);
  CHECK(v.hi == 0);
  CHECK(r.rows[0].status == "ok");
  CHECK(r.rows[0].n_seeds == 1);
}

TEST_CASE("report: lcb at alpha 0 is the per-seed mean return aggregate") {
  std::vector<EvalArtifact> arts;
  std::vector<double> means;
  for (int s = 0; s < 6; ++s) {
    std::vector<double> ret{1.0 * s, 2.0 * s + 1, 10.0 - s};
    means.push_back(stats::mean(ret));
    arts.push_back(artifact("p" + std::to_string(s), "es", ret));
  }
  ReportRequest req;
  req.metric = ReportMetric::lcb;
  req.alphas = {0.0};
  const Report r = build_report(arts, req);
  CHECK(r.rows.at(0).aggregate == "iqm");
  CHECK(r.rows.at(0).values.at(0).point == stats::iqm(means));
  CHECK(r.rows.at(0).values.at(0).alpha == 0.0);

  arts.resize(2);
  means.resize(2);
  const Report small = build_report(arts, req);
  CHECK(small.rows.at(0).aggregate == "mean");
  CHECK(small.rows.at(0).values.at(0).point == stats::mean(means));
}

TEST_CASE("report: the quiet arm wins at alpha 1 on the flat bandit") {
  TempDir dir("arms");
  for (int a : {0, 1}) {
    std::string cfg = flat_scripted;
    cfg.replace(cfg.find("[0]"), 3, "[" + std::to_string(a) + "]");
    cfg.replace(cfg.find("n_evals: 64"), 11, "n_evals: 256");
    spit(dir / ("c" + std::to_string(a) + ".yaml"), cfg);
    const auto run = cmd_train(dir / ("c" + std::to_string(a) + ".yaml"), dir / ("r" + std::to_string(a) + ".json"));
    cmd_evaluate(run[0], dir / ("c" + std::to_string(a) + ".yaml"), dir / "evals" / ("e" + std::to_string(a) + ".json"));
  }
  // The two arms share a cell label, so give them distinct algo names.
  EvalArtifact quiet = read_eval_artifact(dir / "evals" / "e0.json");
  EvalArtifact loud = read_eval_artifact(dir / "evals" / "e1.json");
  quiet.algo = "arm0";
  loud.algo = "arm1";
  ReportRequest req;
  req.metric = ReportMetric::lcb;
  req.alphas = {1.0};
  const Report r = build_report({quiet, loud}, req);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].algo == "arm0");
  CHECK(r.rows[0].values[0].point > r.rows[1].values[0].point);
  CHECK(r.rows[0].values[0].point == 60.0);
}

TEST_CASE("report: missing cells are listed") {
  const Report r = build_report({artifact("a", "es", {1, 2}, NoiseKind::reward), artifact("b", "res", {1, 2}),
                                 artifact("c", "es", {3, 4})},
                                ReportRequest{});
  REQUIRE(r.rows.size() == 4);
  std::size_t missing = 0;
  for (const auto& row : r.rows) {
    if (row.status == "missing") {
      ++missing;
      CHECK(row.noise == "reward");
      CHECK(row.algo == "res");
      CHECK(row.values.empty());
    }
  }
  CHECK(missing == 1);
  const std::string csv = render_csv(r);
  CHECK(csv.find("flat_mean_spread,reward,0.5,res,0,,missing,,,") != std::string::npos);
}

TEST_CASE("report CSV layout and JSON round trip") {
  std::vector<EvalArtifact> arts{artifact("a", "es", {1, 2, 3}), artifact("b", "es", {2, 5, 9}),
                                 artifact("c", "res", {4, 4, 5})};
  ReportRequest req;
  req.metric = ReportMetric::lcb;
  req.alphas = {0, 0.1, 2};
  req.resamples = 200;
  const Report r = build_report(arts, req);
  const std::string csv = render_csv(r);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "env,noise,sigma,algo,n_seeds,aggregate,status,lcb_a0_point,lcb_a0_lo,lcb_a0_hi,lcb_a0.1_point,lcb_a0.1_lo,"
        "lcb_a0.1_hi,lcb_a2_point,lcb_a2_lo,lcb_a2_hi");
  CHECK(report_from_json(nlohmann::json::parse(render_json(r).dump())) == r);

  const Report m = build_report(arts, ReportRequest{});
  const std::string mcsv = render_csv(m);
  CHECK(mcsv.substr(0, mcsv.find('\n')) == "env,noise,sigma,algo,n_seeds,aggregate,status,mad_point,mad_lo,mad_hi");
  CHECK(report_from_json(render_json(m)) == m);
}

TEST_CASE("report metrics for behaviour and state marginals") {
  EvalArtifact a = artifact("a", "es", {1, 2, 3});
  a.record.descriptors = Matrix::from_rows({{0}, {1}, {3}});
  ReportRequest req;
  req.metric = ReportMetric::bmad;
  CHECK(metric_values(a.record, req) == std::vector<double>{1});
  req.metric = ReportMetric::biqr;
  CHECK(metric_values(a.record, req) == std::vector<double>{1});
  req.metric = ReportMetric::smad;
  CHECK(throws_code([&] { metric_values(a.record, req); }, Errc::misuse));
  a.record.state_marginals = Matrix::from_rows({{0, 0}, {0, 1}, {0, 2}});
  CHECK(metric_values(a.record, req) == std::vector<double>{0});
  req.metric = ReportMetric::iqr;
  CHECK(metric_values(a.record, req) == std::vector<double>{1});
}

TEST_CASE("pareto rows") {
  const auto one = pareto_rows({artifact("solo", "es", {1, 2, 3})});
  REQUIRE(one.size() == 1);
  CHECK(one[0].on_front);
  CHECK(one[0].expected_return == 2);
  CHECK(one[0].neg_mad == -1);

  const auto three = pareto_rows({artifact("a", "es", {4, 5, 6}), artifact("b", "es", {3.5, 4, 4.5}),
                                  artifact("c", "es", {1, 3, 5})});
  REQUIRE(three.size() == 3);
  CHECK(three[0].expected_return == 5);
  CHECK(three[1].neg_mad == -0.5);
  CHECK(three[0].on_front);
  CHECK(three[1].on_front);
  CHECK_FALSE(three[2].on_front);

  const auto dup = pareto_rows({artifact("a", "es", {1, 2, 3}), artifact("a", "es", {1, 2, 3})});
  CHECK(dup[0].on_front);
  CHECK(dup[1].on_front);
  CHECK(render_pareto_csv(three) ==
        "policy_id,expected_return,neg_mad,on_front\na,5,-1,true\nb,4,-0.5,true\nc,3,-2,false\n");
}

TEST_CASE("cli exit codes") {
  TempDir dir("exit");
  spit(dir / "bad.yaml", "noise:\n  kind: bogus\n");
  const RunResult bad = run_cli("train --config " + (dir / "bad.yaml").string() + " --out " + (dir / "r").string());
  CHECK(bad.code == 2);
  CHECK(bad.output.find("bad.yaml:2:") != std::string::npos);
  CHECK(bad.output.find("valid kinds") != std::string::npos);

  CHECK(run_cli("").code == 2);
  CHECK(run_cli("train --out x").code == 2);
  CHECK(run_cli("report " + dir.path.string() + " --metric nope --out z").code == 2);
  CHECK(run_cli("report " + (dir / "nothing-*.json").string() + " --out z").code == 1);
  CHECK(run_cli("print-config").code == 0);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli end to end: jobs do not change artifacts and reports are idempotent") {
  TempDir dir("e2e");
  spit(dir / "c.yaml", "env:\n  id: point_mass_nav\nnoise:\n  kind: action\nalgo: random\neval:\n  n_evals: 64\n"
                       "seeds: [3]\n");
  REQUIRE(run_cli("train --config " + (dir / "c.yaml").string() + " --out " + (dir / "run.json").string()).code == 0);
  const std::string base = "evaluate --policy " + (dir / "run.json").string() + " --config " + (dir / "c.yaml").string();
  REQUIRE(run_cli(base + " --jobs 1 --out " + (dir / "evals" / "j1.json").string()).code == 0);
  REQUIRE(run_cli(base + " --jobs 8 --out " + (dir / "j8.json").string()).code == 0);
  CHECK(without_timestamp(dir / "evals" / "j1.json") == without_timestamp(dir / "j8.json"));

  const std::string report = "report " + (dir / "evals").string() + " --metric lcb --alphas 0,1 --out ";
  REQUIRE(run_cli(report + (dir / "r1.csv").string()).code == 0);
  REQUIRE(run_cli(report + (dir / "r2.csv").string()).code == 0);
  CHECK(slurp(dir / "r1.csv") == slurp(dir / "r2.csv"));
  REQUIRE(run_cli("pareto " + (dir / "evals").string() + " --out " + (dir / "p.csv").string()).code == 0);
  CHECK(slurp(dir / "p.csv").find(",true\n") != std::string::npos);
}
