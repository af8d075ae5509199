#pragma once

// JSON mappings for the artifact schemas (nlohmann::json ADL hooks).
//
//   PolicyParams  {"arch": [..], "activation": "tanh", "theta": [..]}
//   NoiseConfig   {"kind": "init-state", "sigma": 0.1, "resample": "per_episode", ...}
//   EvalRecord    {"policy_id", "env", "noise", "master_seed", "n_evals",
//                  "returns", "descriptors", "state_marginals"?}

#include <nlohmann/json.hpp>

#include "reprorl/envs.hpp"
#include "reprorl/metrics.hpp"
#include "reprorl/noise.hpp"
#include "reprorl/optim.hpp"
#include "reprorl/policy.hpp"
#include "reprorl/rollout.hpp"

namespace reprorl {

void to_json(nlohmann::json& j, const PolicyParams& p);
void from_json(const nlohmann::json& j, PolicyParams& p);

void to_json(nlohmann::json& j, const EnvConfig& c);
void from_json(const nlohmann::json& j, EnvConfig& c);

void to_json(nlohmann::json& j, const NoiseConfig& c);
void from_json(const nlohmann::json& j, NoiseConfig& c);

void to_json(nlohmann::json& j, const EvalConfig& c);
void from_json(const nlohmann::json& j, EvalConfig& c);

void to_json(nlohmann::json& j, const EvalRecord& r);
void from_json(const nlohmann::json& j, EvalRecord& r);

namespace optim {
void to_json(nlohmann::json& j, const EsConfig& c);
void from_json(const nlohmann::json& j, EsConfig& c);
void to_json(nlohmann::json& j, const HistoryRow& r);
void from_json(const nlohmann::json& j, HistoryRow& r);
void to_json(nlohmann::json& j, const PolicyShape& s);
void from_json(const nlohmann::json& j, PolicyShape& s);
}  // namespace optim

namespace metrics {
void to_json(nlohmann::json& j, const LcbConfig& c);
void from_json(const nlohmann::json& j, LcbConfig& c);
}  // namespace metrics

}  // namespace reprorl
