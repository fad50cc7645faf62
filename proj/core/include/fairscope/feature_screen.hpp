#pragma once

#include <string>
#include <vector>

#include "fairscope/data.hpp"
#include "fairscope/metric.hpp"

namespace fairscope {

struct LeakageReport {
  std::string feature_name;
  /// P(value in B > value in A), ties counted 1/2.
  double raw_auc = 0.5;
  /// max(raw_auc, 1 - raw_auc), in [0.5, 1].
  double separability_auc = 0.5;
  /// Label of the group with higher values, or empty when raw_auc == 0.5.
  std::string direction;
  bool flagged = false;
  std::string note;

  bool operator==(const LeakageReport&) const = default;
};

/// Satisfied when none of `forbidden_columns` is among the table's features.
MetricResult unawareness_check(const AuditTable& table, const std::vector<std::string>& forbidden_columns);

/// How well each feature alone separates the two groups. Sorted by
/// separability descending, then feature name ascending. Diagnostic only.
std::vector<LeakageReport> leakage_screen(const AuditTable& table, const GroupPartition& part,
                                          double flag_threshold = 0.65);

}  // namespace fairscope
