#include "reprorl/metrics.hpp"

#include <cmath>
#include <string>

#include "reprorl/error.hpp"
#include "reprorl/stats.hpp"

namespace reprorl::metrics {

std::string_view to_string(PerfEstimator e) noexcept { return e == PerfEstimator::median ? "median" : "mean"; }

std::string_view to_string(DispEstimator e) noexcept {
  switch (e) {
    case DispEstimator::mad: return "mad";
    case DispEstimator::iqr: return "iqr";
    case DispEstimator::std: return "std";
  }
  return "mad";
}

PerfEstimator perf_estimator_from_string(std::string_view name) {
  if (name == "mean") return PerfEstimator::mean;
  if (name == "median") return PerfEstimator::median;
  throw Error(Errc::invalid_config, "unknown performance estimator '" + std::string(name) + "' (valid: mean, median)");
}

DispEstimator disp_estimator_from_string(std::string_view name) {
  if (name == "mad") return DispEstimator::mad;
  if (name == "iqr") return DispEstimator::iqr;
  if (name == "std") return DispEstimator::std;
  throw Error(Errc::invalid_config, "unknown dispersion estimator '" + std::string(name) + "' (valid: mad, iqr, std)");
}

void LcbConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(Errc::invalid_config, "alpha must be finite and >= 0");
}

double performance(std::span<const double> returns, PerfEstimator e) {
  return e == PerfEstimator::median ? stats::median(returns) : stats::mean(returns);
}

double dispersion(std::span<const double> returns, DispEstimator e) {
  switch (e) {
    case DispEstimator::mad: return stats::mad(returns);
    case DispEstimator::iqr: return stats::iqr(returns);
    case DispEstimator::std: return stats::sample_std(returns);
  }
  return stats::mad(returns);
}

double lcb(std::span<const double> returns, const LcbConfig& cfg) {
  cfg.validate();
  if (returns.empty()) throw Error(Errc::empty_input, "lcb: no returns");
  const double p = performance(returns, cfg.perf);
  const double s = dispersion(returns, cfg.disp);
  return p - cfg.alpha * s;
}

double lcb(const EvalRecord& record, const LcbConfig& cfg) { return lcb(record.returns, cfg); }

ReproSummary lcb_sweep(std::span<const double> returns, std::span<const double> alphas, const LcbConfig& cfg) {
  if (returns.empty()) throw Error(Errc::empty_input, "lcb_sweep: no returns");
  ReproSummary out;
  out.perf = performance(returns, cfg.perf);
  out.dispersion = dispersion(returns, cfg.disp);
  out.n_evals = returns.size();
  out.perf_estimator = cfg.perf;
  out.disp_estimator = cfg.disp;
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw Error(Errc::invalid_config, "lcb_sweep: alphas must be finite and >= 0");
    out.lcb_by_alpha[a] = out.perf - a * out.dispersion;
  }
  return out;
}

ReproSummary lcb_sweep(const EvalRecord& record, std::span<const double> alphas, const LcbConfig& cfg) {
  return lcb_sweep(record.returns, alphas, cfg);
}

std::vector<double> pairwise_distances(const Matrix& rows) {
  const std::size_t n = rows.rows();
  if (n < 2) throw Error(Errc::insufficient_data, "pairwise_distances: need at least 2 rows");
  std::vector<double> d;
  d.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = rows.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = rows.row(j);
      double ss = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) ss += (a[k] - b[k]) * (a[k] - b[k]);
      d.push_back(std::sqrt(ss));
    }
  }
  return d;
}

double behavioural_mad(const Matrix& descriptors) { return stats::mad(pairwise_distances(descriptors)); }

double behavioural_iqr(const Matrix& descriptors) { return stats::iqr(pairwise_distances(descriptors)); }

Dispersion state_marginal_repro(const EvalRecord& record) {
  if (!record.state_marginals) {
    throw Error(Errc::misuse, "eval record for '" + record.policy_id + "' carries no state marginals");
  }
  const std::vector<double> d = pairwise_distances(*record.state_marginals);
  return {stats::mad(d), stats::iqr(d)};
}

bool dominates(const ParetoPoint& p, const ParetoPoint& q) noexcept {
  return p.perf >= q.perf && p.repro >= q.repro && (p.perf > q.perf || p.repro > q.repro);
}

std::vector<bool> pareto_mask(std::span<const ParetoPoint> points) {
  std::vector<bool> on(points.size(), true);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size() && on[i]; ++j) {
      if (j != i && dominates(points[j], points[i])) on[i] = false;
    }
  }
  return on;
}

std::vector<ParetoPoint> pareto_front(std::span<const ParetoPoint> points) {
  const std::vector<bool> on = pareto_mask(points);
  std::vector<ParetoPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (on[i]) out.push_back(points[i]);
  }
  return out;
}

}  // namespace reprorl::metrics
