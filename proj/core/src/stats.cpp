#include "reprorl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reprorl/error.hpp"

namespace reprorl::stats {
namespace {

void require_nonempty(std::span<const double> xs, const char* who) {
  if (xs.empty()) throw Error(Errc::empty_input, std::string(who) + ": empty input");
}

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

double median_of_sorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  return n % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double quantile_of_sorted(const std::vector<double>& v, double p) {
  const double h = static_cast<double>(v.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return v[lo];
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

double mean(std::span<const double> xs) {
  require_nonempty(xs, "mean");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) throw Error(Errc::insufficient_data, "sample_std: need at least 2 values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double median(std::span<const double> xs) {
  require_nonempty(xs, "median");
  return median_of_sorted(sorted_copy(xs));
}

double mad(std::span<const double> xs) {
  require_nonempty(xs, "mad");
  const double med = median(xs);
  std::vector<double> dev(xs.size());
  std::transform(xs.begin(), xs.end(), dev.begin(), [med](double x) { return std::fabs(x - med); });
  std::sort(dev.begin(), dev.end());
  return median_of_sorted(dev);
}

double quantile(std::span<const double> xs, double p) {
  require_nonempty(xs, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_config, "quantile: p must lie in [0, 1]");
  return quantile_of_sorted(sorted_copy(xs), p);
}

Quartiles quartiles(std::span<const double> xs) {
  require_nonempty(xs, "quartiles");
  const std::vector<double> v = sorted_copy(xs);
  return {quantile_of_sorted(v, 0.25), quantile_of_sorted(v, 0.5), quantile_of_sorted(v, 0.75)};
}

double iqr(std::span<const double> xs) {
  const Quartiles q = quartiles(xs);
  return q.q3 - q.q1;
}

double iqm(std::span<const double> xs) {
  require_nonempty(xs, "iqm");
  if (xs.size() < 4) {
    throw Error(Errc::insufficient_data, "iqm: need at least 4 values, got " + std::to_string(xs.size()));
  }
  const std::vector<double> v = sorted_copy(xs);
  const std::size_t cut = v.size() / 4;
  double sum = 0.0;
  for (std::size_t i = cut; i < v.size() - cut; ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 2 * cut);
}

std::string_view to_string(Aggregate a) noexcept {
  switch (a) {
    case Aggregate::iqm: return "iqm";
    case Aggregate::mean: return "mean";
    case Aggregate::median: return "median";
  }
  return "iqm";
}

Aggregate aggregate_from_string(std::string_view name) {
  if (name == "iqm") return Aggregate::iqm;
  if (name == "mean") return Aggregate::mean;
  if (name == "median") return Aggregate::median;
  throw Error(Errc::invalid_config, "unknown aggregate '" + std::string(name) + "' (valid: iqm, mean, median)");
}

double aggregate(std::span<const double> xs, Aggregate kind) {
  switch (kind) {
    case Aggregate::iqm: return iqm(xs);
    case Aggregate::mean: return mean(xs);
    case Aggregate::median: return median(xs);
  }
  return mean(xs);
}

BootstrapCI stratified_bootstrap(const std::vector<std::vector<double>>& strata, Aggregate kind,
                                 std::size_t n_resamples, double confidence, RngStream& stream) {
  if (strata.empty()) throw Error(Errc::empty_input, "stratified_bootstrap: no strata");
  for (const auto& s : strata) {
    if (s.empty()) throw Error(Errc::empty_input, "stratified_bootstrap: empty stratum");
  }
  if (n_resamples < 100) throw Error(Errc::invalid_config, "stratified_bootstrap: need at least 100 resamples");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(Errc::invalid_config, "stratified_bootstrap: confidence must lie in (0, 1)");
  }

  std::vector<double> pooled;
  for (const auto& s : strata) pooled.insert(pooled.end(), s.begin(), s.end());

  BootstrapCI ci;
  ci.point = aggregate(pooled, kind);
  ci.n_resamples = n_resamples;
  ci.confidence = confidence;

  std::vector<double> stats(n_resamples);
  std::vector<double> resample(pooled.size());
  for (std::size_t r = 0; r < n_resamples; ++r) {
    std::size_t k = 0;
    for (const auto& s : strata) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        resample[k++] = s[stream.next_u64() % s.size()];
      }
    }
    stats[r] = aggregate(resample, kind);
  }
  std::sort(stats.begin(), stats.end());
  ci.lo = quantile_of_sorted(stats, 0.5 * (1.0 - confidence));
  ci.hi = quantile_of_sorted(stats, 0.5 * (1.0 + confidence));
  return ci;
}

}  // namespace reprorl::stats
