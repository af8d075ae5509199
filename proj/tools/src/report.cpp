#include "reprorl/app/report.hpp"

#include <map>
#include <set>
#include <tuple>

#include "reprorl/app/format.hpp"
#include "reprorl/error.hpp"
#include "reprorl/serialize.hpp"

namespace reprorl::app {

using nlohmann::json;

std::string_view to_string(ReportMetric m) noexcept {
  switch (m) {
    case ReportMetric::mad: return "mad";
    case ReportMetric::iqr: return "iqr";
    case ReportMetric::lcb: return "lcb";
    case ReportMetric::bmad: return "bmad";
    case ReportMetric::biqr: return "biqr";
    case ReportMetric::smad: return "smad";
  }
  return "mad";
}

ReportMetric report_metric_from_string(std::string_view name) {
  for (ReportMetric m : {ReportMetric::mad, ReportMetric::iqr, ReportMetric::lcb, ReportMetric::bmad,
                         ReportMetric::biqr, ReportMetric::smad}) {
    if (name == to_string(m)) return m;
  }
  throw Error(Errc::invalid_config,
              "unknown metric '" + std::string(name) + "' (valid: mad, iqr, lcb, bmad, biqr, smad)");
}

std::string_view to_string(ReportFormat f) noexcept { return f == ReportFormat::json ? "json" : "csv"; }

ReportFormat report_format_from_string(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw Error(Errc::invalid_config, "unknown format '" + std::string(name) + "' (valid: csv, json)");
}

std::vector<double> metric_values(const EvalRecord& record, const ReportRequest& req) {
  switch (req.metric) {
    case ReportMetric::mad: return {stats::mad(record.returns)};
    case ReportMetric::iqr: return {stats::iqr(record.returns)};
    case ReportMetric::bmad: return {metrics::behavioural_mad(record.descriptors)};
    case ReportMetric::biqr: return {metrics::behavioural_iqr(record.descriptors)};
    case ReportMetric::smad: return {metrics::state_marginal_repro(record).mad};
    case ReportMetric::lcb: {
      const metrics::ReproSummary s = metrics::lcb_sweep(record.returns, req.alphas, req.lcb);
      std::vector<double> out;
      out.reserve(req.alphas.size());
      for (double a : req.alphas) out.push_back(s.lcb_by_alpha.at(a));
      return out;
    }
  }
  return {};
}

namespace {

using CellKey = std::tuple<std::string, std::string, double, std::string>;
using GroupKey = std::tuple<std::string, std::string, double>;

std::size_t column_count(const ReportRequest& req) {
  return req.metric == ReportMetric::lcb ? req.alphas.size() : 1;
}

}  // namespace

Report build_report(const std::vector<EvalArtifact>& artifacts, const ReportRequest& req) {
  if (req.metric == ReportMetric::lcb) {
    if (req.alphas.empty()) throw Error(Errc::invalid_config, "lcb report needs at least one alpha");
    for (double a : req.alphas) {
      if (!(a >= 0.0) || !std::isfinite(a)) throw Error(Errc::invalid_config, "alphas must be finite and >= 0");
    }
  }

  // cell -> per-seed rows of metric values (one column per alpha for lcb)
  std::map<CellKey, std::vector<std::vector<double>>> cells;
  std::set<GroupKey> groups;
  std::set<std::string> algos;
  for (const auto& art : artifacts) {
    const EvalRecord& rec = art.record;
    const std::string env(to_string(rec.env.id));
    const std::string noise(to_string(rec.noise.kind));
    const double sigma = rec.noise.kind == NoiseKind::none ? 0.0 : rec.noise.sigma;
    std::vector<double> values;
    try {
      values = metric_values(rec, req);
    } catch (const Error& e) {
      throw Error(e.code(), "policy '" + rec.policy_id + "': " + e.what());
    }
    cells[{env, noise, sigma, art.algo}].push_back(std::move(values));
    groups.insert({env, noise, sigma});
    algos.insert(art.algo);
  }

  Report report;
  report.metric = req.metric;
  report.alphas = req.metric == ReportMetric::lcb ? req.alphas : std::vector<double>{};
  report.lcb = req.lcb;
  report.resamples = req.resamples;
  report.confidence = req.confidence;

  const std::size_t ncols = column_count(req);
  std::size_t cell_index = 0;
  for (const auto& [env, noise, sigma] : groups) {
    for (const auto& algo : algos) {
      ReportRow row;
      row.env = env;
      row.noise = noise;
      row.sigma = sigma;
      row.algo = algo;
      const auto it = cells.find({env, noise, sigma, algo});
      if (it == cells.end()) {
        row.status = "missing";
        row.aggregate = "";
        report.rows.push_back(std::move(row));
        ++cell_index;
        continue;
      }
      const auto& per_seed = it->second;
      row.status = "ok";
      row.n_seeds = per_seed.size();
      const stats::Aggregate agg = per_seed.size() >= 4 ? stats::Aggregate::iqm : stats::Aggregate::mean;
      row.aggregate = std::string(stats::to_string(agg));
      for (std::size_t c = 0; c < ncols; ++c) {
        std::vector<double> column;
        column.reserve(per_seed.size());
        for (const auto& v : per_seed) column.push_back(v[c]);
        RngStream stream = derive_stream(req.seed, "bootstrap", cell_index * ncols + c);
        const stats::BootstrapCI ci = stats::stratified_bootstrap({column}, agg, req.resamples, req.confidence, stream);
        ReportValue value;
        if (req.metric == ReportMetric::lcb) value.alpha = req.alphas[c];
        value.point = ci.point;
        value.lo = ci.lo;
        value.hi = ci.hi;
        row.values.push_back(value);
      }
      report.rows.push_back(std::move(row));
      ++cell_index;
    }
  }
  return report;
}

std::string render_csv(const Report& report) {
  std::string out = "env,noise,sigma,algo,n_seeds,aggregate,status";
  std::vector<std::string> prefixes;
  if (report.metric == ReportMetric::lcb) {
    for (double a : report.alphas) prefixes.push_back("lcb_a" + format_double(a));
  } else {
    prefixes.emplace_back(to_string(report.metric));
  }
  for (const auto& p : prefixes) out += "," + p + "_point," + p + "_lo," + p + "_hi";
  out += "\n";

  for (const auto& row : report.rows) {
    out += row.env + "," + row.noise + "," + format_double(row.sigma) + "," + row.algo + "," +
           std::to_string(row.n_seeds) + "," + row.aggregate + "," + row.status;
    for (std::size_t c = 0; c < prefixes.size(); ++c) {
      if (c < row.values.size()) {
        const auto& v = row.values[c];
        out += "," + format_double(v.point) + "," + format_double(v.lo) + "," + format_double(v.hi);
      } else {
        out += ",,,";
      }
    }
    out += "\n";
  }
  return out;
}

json render_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json values = json::array();
    for (const auto& v : row.values) {
      json jv{{"point", v.point}, {"lo", v.lo}, {"hi", v.hi}};
      if (v.alpha) jv["alpha"] = *v.alpha;
      values.push_back(std::move(jv));
    }
    rows.push_back(json{{"env", row.env},
                        {"noise", row.noise},
                        {"sigma", row.sigma},
                        {"algo", row.algo},
                        {"n_seeds", row.n_seeds},
                        {"aggregate", row.aggregate},
                        {"status", row.status},
                        {"values", std::move(values)}});
  }
  return json{{"metric", to_string(report.metric)},
              {"alphas", report.alphas},
              {"lcb", report.lcb},
              {"bootstrap_resamples", report.resamples},
              {"confidence", report.confidence},
              {"rows", std::move(rows)}};
}

Report report_from_json(const json& j) {
  Report r;
  r.metric = report_metric_from_string(j.at("metric").get<std::string>());
  r.alphas = j.at("alphas").get<std::vector<double>>();
  r.lcb = j.at("lcb").get<metrics::LcbConfig>();
  r.resamples = j.at("bootstrap_resamples").get<std::size_t>();
  r.confidence = j.at("confidence").get<double>();
  for (const auto& jr : j.at("rows")) {
    ReportRow row;
    row.env = jr.at("env").get<std::string>();
    row.noise = jr.at("noise").get<std::string>();
    row.sigma = jr.at("sigma").get<double>();
    row.algo = jr.at("algo").get<std::string>();
    row.n_seeds = jr.at("n_seeds").get<std::size_t>();
    row.aggregate = jr.at("aggregate").get<std::string>();
    row.status = jr.at("status").get<std::string>();
    for (const auto& jv : jr.at("values")) {
      ReportValue v;
      if (jv.contains("alpha")) v.alpha = jv.at("alpha").get<double>();
      v.point = jv.at("point").get<double>();
      v.lo = jv.at("lo").get<double>();
      v.hi = jv.at("hi").get<double>();
      row.values.push_back(v);
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::vector<ParetoRow> pareto_rows(const std::vector<EvalArtifact>& artifacts) {
  std::vector<metrics::ParetoPoint> points;
  points.reserve(artifacts.size());
  for (const auto& a : artifacts) {
    points.push_back({a.record.policy_id, stats::mean(a.record.returns), 0.0 - stats::mad(a.record.returns)});
  }
  const std::vector<bool> on = metrics::pareto_mask(points);
  std::vector<ParetoRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows.push_back({points[i].policy_id, points[i].perf, points[i].repro, on[i]});
  }
  return rows;
}

std::string render_pareto_csv(const std::vector<ParetoRow>& rows) {
  std::string out = "policy_id,expected_return,neg_mad,on_front\n";
  for (const auto& r : rows) {
    out += r.policy_id + "," + format_double(r.expected_return) + "," + format_double(r.neg_mad) + "," +
           (r.on_front ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace reprorl::app
