#pragma once

#include <cstddef>
#include <span>

#include "fairscope/data.hpp"

namespace fairscope {

struct EffectSizeReport {
  double d_true = 0.0;
  double d_pred = 0.0;
  double diff_true_minus_pred = 0.0;
  double mean_a_true = 0.0;
  double mean_b_true = 0.0;
  double mean_a_pred = 0.0;
  double mean_b_pred = 0.0;
  double pooled_sd_true = 0.0;
  double pooled_sd_pred = 0.0;
  double sd_ratio_pred_over_true = 0.0;

  bool operator==(const EffectSizeReport&) const = default;
};

struct RangeRestriction {
  double min_true = 0.0;
  double max_true = 0.0;
  double min_pred = 0.0;
  double max_pred = 0.0;
  double sd_true = 0.0;
  double sd_pred = 0.0;
  double sd_ratio = 0.0;

  bool operator==(const RangeRestriction&) const = default;
};

/// Sample mean and (n-1) variance, accumulated in index order.
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
};
Moments sample_moments(std::span<const double> x);

/// Pooled standard deviation of two samples (n-1 weighted variances).
double pooled_sd(std::span<const double> a, std::span<const double> b);

/// (mean_a - mean_b) / pooled SD. Throws TooFewSamples when a group has fewer
/// than two values and ZeroPooledVariance when the pooled SD is zero.
double cohens_d(std::span<const double> a, std::span<const double> b);

/// Report holding only the two effect sizes and their difference.
EffectSizeReport summarize_effect_sizes(double d_true, double d_pred);

EffectSizeReport effect_size_difference(const AuditTable& table, const GroupPartition& part);

/// Extremes and spread of both score columns over every row of the table.
RangeRestriction range_restriction(const AuditTable& table);

}  // namespace fairscope
