#include "reprorl/app/artifacts.hpp"

#include <glob.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "reprorl/app/format.hpp"
#include "reprorl/serialize.hpp"

namespace reprorl::app {

using nlohmann::json;

json to_json(const RunArtifact& a) {
  json history = json::array();
  for (const auto& row : a.history) history.push_back(row);
  return json{{"kind", "run"},
              {"format_version", artifact_format_version},
              {"created_at", a.created_at},
              {"policy_id", a.policy_id},
              {"algo", to_string(a.algo)},
              {"seed", a.seed},
              {"generations", a.generations},
              {"history", history},
              {"final_policy", a.final_policy},
              {"config", config_to_json(a.config)}};
}

RunArtifact run_artifact_from_json(const json& j) {
  if (j.value("kind", std::string()) != "run") {
    throw Error(Errc::invalid_config, "not a run artifact (kind != \"run\")");
  }
  RunArtifact a;
  a.policy_id = j.at("policy_id").get<std::string>();
  a.algo = algo_from_string(j.at("algo").get<std::string>());
  a.seed = j.at("seed").get<std::uint64_t>();
  a.generations = j.at("generations").get<std::size_t>();
  a.history = j.at("history").get<std::vector<optim::HistoryRow>>();
  a.final_policy = j.at("final_policy").get<PolicyParams>();
  a.config = config_from_json(j.at("config"));
  a.created_at = j.value("created_at", std::string());
  return a;
}

json to_json(const EvalArtifact& a) {
  json j = a.record;
  j["kind"] = "eval";
  j["format_version"] = artifact_format_version;
  j["created_at"] = a.created_at;
  j["algo"] = a.algo;
  if (a.train_seed) j["train_seed"] = *a.train_seed;
  if (a.config) j["config"] = config_to_json(*a.config);
  return j;
}

EvalArtifact eval_artifact_from_json(const json& j) {
  if (j.contains("kind") && j.at("kind") != "eval") {
    throw Error(Errc::invalid_config, "not an eval artifact (kind != \"eval\")");
  }
  EvalArtifact a;
  a.record = j.get<EvalRecord>();
  a.algo = j.value("algo", std::string("unknown"));
  if (j.contains("train_seed")) a.train_seed = j.at("train_seed").get<std::uint64_t>();
  if (j.contains("config")) a.config = config_from_json(j.at("config"));
  a.created_at = j.value("created_at", std::string());
  return a;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::io, path.string() + ": invalid JSON: " + e.what());
  }
}

namespace {

template <class T, class F>
T read_artifact(const std::filesystem::path& path, F&& parse) {
  const json j = read_json_file(path);
  try {
    return parse(j);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, path.string() + ": malformed artifact: " + e.what());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace

RunArtifact read_run_artifact(const std::filesystem::path& path) {
  return read_artifact<RunArtifact>(path, run_artifact_from_json);
}

EvalArtifact read_eval_artifact(const std::filesystem::path& path) {
  return read_artifact<EvalArtifact>(path, eval_artifact_from_json);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::string history_csv(const std::vector<optim::HistoryRow>& history) {
  std::string out = "generation,mean_fitness,best_fitness,theta_norm\n";
  for (const auto& r : history) {
    out += std::to_string(r.generation) + "," + format_double(r.mean_fitness) + "," + format_double(r.best_fitness) +
           "," + format_double(r.theta_norm) + "\n";
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  if (std::filesystem::is_directory(pattern)) {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(pattern)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::filesystem::path> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw Error(Errc::io, "glob failed for pattern " + pattern);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reprorl::app
