#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "reprorl/app/artifacts.hpp"
#include "reprorl/metrics.hpp"
#include "reprorl/stats.hpp"

namespace reprorl::app {

enum class ReportMetric { mad, iqr, lcb, bmad, biqr, smad };
enum class ReportFormat { csv, json };

std::string_view to_string(ReportMetric m) noexcept;
ReportMetric report_metric_from_string(std::string_view name);
std::string_view to_string(ReportFormat f) noexcept;
ReportFormat report_format_from_string(std::string_view name);

struct ReportRequest {
  ReportMetric metric = ReportMetric::mad;
  std::vector<double> alphas{0.0};
  metrics::LcbConfig lcb;
  std::size_t resamples = stats::default_bootstrap_resamples;
  double confidence = stats::default_confidence;
  std::uint64_t seed = 0;
};

struct ReportValue {
  std::optional<double> alpha;  // set for lcb columns only
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const ReportValue&, const ReportValue&) = default;
};

// One (env, noise, sigma, algo) cell. Per-seed metric values are aggregated by
// IQM (mean when fewer than 4 seeds) with a stratified bootstrap interval.
struct ReportRow {
  std::string env;
  std::string noise;
  double sigma = 0.0;
  std::string algo;
  std::size_t n_seeds = 0;
  std::string aggregate;
  std::string status;  // "ok" or "missing"
  std::vector<ReportValue> values;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  ReportMetric metric = ReportMetric::mad;
  std::vector<double> alphas;
  metrics::LcbConfig lcb;
  std::size_t resamples = 0;
  double confidence = 0.0;
  std::vector<ReportRow> rows;

  friend bool operator==(const Report& a, const Report& b) {
    return a.metric == b.metric && a.alphas == b.alphas && a.lcb.perf == b.lcb.perf && a.lcb.disp == b.lcb.disp &&
           a.resamples == b.resamples && a.confidence == b.confidence && a.rows == b.rows;
  }
};

// Per-artifact metric values: one entry, or one per alpha for lcb.
std::vector<double> metric_values(const EvalRecord& record, const ReportRequest& req);

// Rows cover the full grid of observed (env, noise, sigma) x observed algos, sorted;
// absent combinations appear with status "missing".
Report build_report(const std::vector<EvalArtifact>& artifacts, const ReportRequest& req);

// Header: env,noise,sigma,algo,n_seeds,aggregate,status, then
// <metric>_point,<metric>_lo,<metric>_hi (or lcb_a<alpha>_{point,lo,hi} per alpha).
std::string render_csv(const Report& report);
nlohmann::json render_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

// Pareto rows for `pareto`: expected return vs -MAD of each artifact.
struct ParetoRow {
  std::string policy_id;
  double expected_return = 0.0;
  double neg_mad = 0.0;
  bool on_front = false;
};

std::vector<ParetoRow> pareto_rows(const std::vector<EvalArtifact>& artifacts);
// Header: policy_id,expected_return,neg_mad,on_front
std::string render_pareto_csv(const std::vector<ParetoRow>& rows);

}  // namespace reprorl::app
