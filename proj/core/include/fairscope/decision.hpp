#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairscope/data.hpp"
#include "fairscope/decision_spec.hpp"
#include "fairscope/metric.hpp"

namespace fairscope {

enum class ScoreColumn { Truth, Pred };

struct AdverseImpactResult {
  double sr_a = 0.0;
  double sr_b = 0.0;
  /// min(sr_a/sr_b, sr_b/sr_a); nullopt when neither group has a selection.
  std::optional<double> ai_ratio;
  bool four_fifths_violation = false;
  std::size_t selected_a = 0;
  std::size_t selected_b = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::string note;

  bool operator==(const AdverseImpactResult&) const = default;
};

/// Ratio of two selection ratios: min(a/b, b/a), 0 when exactly one is 0,
/// nullopt when both are 0.
std::optional<double> adverse_impact_ratio(double sr_a, double sr_b);

/// Four-fifths rule on a ratio: violated iff ai < 0.8 (0.8 itself complies).
bool violates_four_fifths(double ai_ratio);

/// Builds the result from selection counts. The violation flag is decided in
/// integer arithmetic (5 * min_cross < 4 * max_cross), so the 0.8 boundary is
/// exact.
AdverseImpactResult adverse_impact_from_counts(std::size_t selected_a, std::size_t n_a, std::size_t selected_b,
                                               std::size_t n_b, const std::string& label_a = "A",
                                               const std::string& label_b = "B");

/// Applies `rule` to the chosen column over all partitioned rows (k counted
/// on that population) and compares per-group selection ratios.
AdverseImpactResult adverse_impact(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                                   ScoreColumn column);

struct SweepPoint {
  double rate = 0.0;
  std::size_t k = 0;
  AdverseImpactResult pred;
  AdverseImpactResult truth;
};

/// Top-k adverse impact on predictions and on ground truth for each rate, in
/// input order. Throws InvalidRule for a rate outside (0, 1].
std::vector<SweepPoint> ai_sweep(const AuditTable& table, const GroupPartition& part,
                                 const std::vector<double>& rates);

struct StratumGap {
  std::string stratum;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double sr_a = 0.0;
  double sr_b = 0.0;
  double gap = 0.0;
};

struct ConditionalParityResult {
  std::string strata_column;
  std::vector<StratumGap> strata;
  /// Strata lacking members of one group; not included in max_gap.
  std::vector<std::string> excluded_strata;
  /// Rows with a missing stratum value.
  std::size_t missing_rows = 0;
  std::optional<double> max_gap;
};

/// Selection-rate gaps of the prediction decisions within each stratum of a
/// categorical feature column. Strata are ordered by ascending value.
ConditionalParityResult conditional_demographic_parity(const AuditTable& table, const GroupPartition& part,
                                                       const DecisionSpec& rule, const std::string& strata_column);

/// Satisfied unless some group-specific rule differs from the global rule.
MetricResult single_threshold_check(const DecisionSpec& rule,
                                    const std::map<std::string, DecisionSpec>& per_group_overrides,
                                    const std::string& construct = "");

}  // namespace fairscope
