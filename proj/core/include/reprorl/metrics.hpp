#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reprorl/matrix.hpp"
#include "reprorl/rollout.hpp"

namespace reprorl::metrics {

enum class PerfEstimator { mean, median };
enum class DispEstimator { mad, iqr, std };

std::string_view to_string(PerfEstimator e) noexcept;
std::string_view to_string(DispEstimator e) noexcept;
PerfEstimator perf_estimator_from_string(std::string_view name);
DispEstimator disp_estimator_from_string(std::string_view name);

// LCB(pi) = P - alpha * sigma with pluggable estimators for P and sigma.
// Defaults: P = mean return, sigma = MAD of the returns.
struct LcbConfig {
  double alpha = 0.0;
  PerfEstimator perf = PerfEstimator::mean;
  DispEstimator disp = DispEstimator::mad;

  void validate() const;
};

double performance(std::span<const double> returns, PerfEstimator e);
double dispersion(std::span<const double> returns, DispEstimator e);

double lcb(std::span<const double> returns, const LcbConfig& cfg);
double lcb(const EvalRecord& record, const LcbConfig& cfg);

struct ReproSummary {
  double perf = 0.0;
  double dispersion = 0.0;
  std::map<double, double> lcb_by_alpha;
  std::size_t n_evals = 0;
  PerfEstimator perf_estimator = PerfEstimator::mean;
  DispEstimator disp_estimator = DispEstimator::mad;
};

// LCB at every alpha, sharing one estimate of P and sigma. cfg.alpha is ignored.
ReproSummary lcb_sweep(std::span<const double> returns, std::span<const double> alphas,
                       const LcbConfig& cfg);
ReproSummary lcb_sweep(const EvalRecord& record, std::span<const double> alphas, const LcbConfig& cfg);

// Euclidean distances over unordered pairs i < j, in (0,1), (0,2), ..., (1,2), ... order.
// Throws Errc::insufficient_data for fewer than two rows.
std::vector<double> pairwise_distances(const Matrix& rows);

double behavioural_mad(const Matrix& descriptors);
double behavioural_iqr(const Matrix& descriptors);

struct Dispersion {
  double mad = 0.0;
  double iqr = 0.0;
};

// Behavioural MAD/IQR over the flattened state marginals. Throws Errc::misuse if
// the record carries none.
Dispersion state_marginal_repro(const EvalRecord& record);

struct ParetoPoint {
  std::string policy_id;
  double perf = 0.0;   // expected return
  double repro = 0.0;  // -MAD, higher is more reproducible

  friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

// p dominates q iff p is no worse on both axes and strictly better on one.
bool dominates(const ParetoPoint& p, const ParetoPoint& q) noexcept;

// Membership flag per input point.
std::vector<bool> pareto_mask(std::span<const ParetoPoint> points);

// The non-dominated points, in input order. Duplicates are all kept.
std::vector<ParetoPoint> pareto_front(std::span<const ParetoPoint> points);

}  // namespace reprorl::metrics
