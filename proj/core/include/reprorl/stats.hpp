#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "reprorl/rng.hpp"

namespace reprorl::stats {

// Robust summary statistics. All functions take the sample by span and never
// modify it. Empty input throws Errc::empty_input.

double mean(std::span<const double> xs);

// Sample standard deviation (divisor n - 1). Throws Errc::insufficient_data for n < 2.
double sample_std(std::span<const double> xs);

// Middle order statistic; mean of the two central values for even n.
double median(std::span<const double> xs);

// median(|x - median(x)|). Unscaled: no 1.4826 consistency factor.
double mad(std::span<const double> xs);

// Quantile by linear interpolation between closest ranks at h = (n - 1) * p.
double quantile(std::span<const double> xs, double p);

struct Quartiles {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

Quartiles quartiles(std::span<const double> xs);
double iqr(std::span<const double> xs);

// Inter-quartile mean: drop floor(n/4) values from each end of the sorted
// sample and average the rest. Throws Errc::insufficient_data for n < 4.
double iqm(std::span<const double> xs);

enum class Aggregate { iqm, mean, median };

std::string_view to_string(Aggregate a) noexcept;
Aggregate aggregate_from_string(std::string_view name);
double aggregate(std::span<const double> xs, Aggregate kind);

struct BootstrapCI {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n_resamples = 0;
  double confidence = 0.95;
};

inline constexpr std::size_t default_bootstrap_resamples = 2000;
inline constexpr double default_confidence = 0.95;

// Stratified percentile bootstrap. Each resample redraws |stratum| values with
// replacement inside every stratum, pools them, and aggregates. The interval is
// the (1 -/+ confidence)/2 quantiles of the resampled aggregates; `point` is the
// aggregate of the original pooled data.
//
// Throws Errc::empty_input for an empty stratum (or no strata),
// Errc::invalid_config for n_resamples < 100 or confidence outside (0, 1).
BootstrapCI stratified_bootstrap(const std::vector<std::vector<double>>& strata, Aggregate aggregate,
                                 std::size_t n_resamples, double confidence, RngStream& stream);

}  // namespace reprorl::stats
