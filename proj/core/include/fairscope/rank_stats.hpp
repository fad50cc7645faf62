#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fairscope/data.hpp"

namespace fairscope {

/// Per-group rank-order accuracy of predictions against ground truth.
struct CorrelationReport {
  double rho_all = 0.0;
  double rho_a = 0.0;
  double rho_b = 0.0;
  double diff_a_minus_b = 0.0;
  /// Fisher z statistic for rho_a vs rho_b; present only when both groups have n > 10.
  std::optional<double> z_stat;
  std::size_t n_a = 0;
  std::size_t n_b = 0;

  bool operator==(const CorrelationReport&) const = default;
};

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> fractional_ranks(std::span<const double> x);

/// Pearson correlation of the fractional ranks. Requires equal lengths,
/// n >= 3 and neither input constant (DegenerateInput otherwise).
double spearman(std::span<const double> x, std::span<const double> y);

/// Two-sided comparison of two independent Spearman coefficients on the
/// Fisher z scale, using the 1.06/(n-3) variance for rank correlations.
/// Returns nullopt unless both n > 10. |rho| is capped at 1 - 1e-12.
std::optional<double> fisher_z_difference(double rho_a, std::size_t n_a, double rho_b, std::size_t n_b);

/// Fills the derived fields (difference and z statistic) from per-group values.
CorrelationReport summarize_correlations(double rho_all, double rho_a, std::size_t n_a, double rho_b,
                                         std::size_t n_b);

CorrelationReport correlational_accuracy(const AuditTable& table, const GroupPartition& part);

}  // namespace fairscope
