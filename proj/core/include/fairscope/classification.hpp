#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairscope/data.hpp"
#include "fairscope/decision_spec.hpp"
#include "fairscope/metric.hpp"

namespace fairscope {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Rates derived from a confusion matrix; absent when the denominator is 0.
struct GroupRates {
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> ppv;
  std::optional<double> accuracy;
  std::optional<double> positive_rate;
  std::optional<double> fn_fp_ratio;

  bool operator==(const GroupRates&) const = default;
};

GroupRates rates(const ConfusionMatrix& cm);

struct GroupConfusion {
  ConfusionMatrix a;
  ConfusionMatrix b;
};

/// Tallies predicted vs reference decisions (both indexed by table row) over
/// the rows of each group.
GroupConfusion confusion_by_group(const std::vector<bool>& decisions_pred, const std::vector<bool>& decisions_true,
                                  const GroupPartition& part);

struct FamilyOptions {
  /// Default tolerance for every absolute gap.
  double epsilon = 0.05;
  /// Per-metric tolerance keyed by metric name (e.g. "treatment_equality").
  std::map<std::string, double> epsilon_by_metric;
  std::string label_a = "A";
  std::string label_b = "B";
  std::string construct;

  double epsilon_for(const std::string& metric) const;
};

/// Names emitted by fairness_family, in emission order.
const std::vector<std::string>& fairness_family_metrics();

/// Equalized odds, equal opportunity, predictive equality, overall accuracy
/// equality, treatment equality, predictive parity (equal PPV) and
/// statistical parity. A metric is satisfied when every gap it uses is
/// <= its tolerance; missing rates make it Undefined with the reason.
std::vector<MetricResult> fairness_family(const GroupRates& rates_a, const GroupRates& rates_b,
                                          const FamilyOptions& opts);

/// Probability that a random positive outranks a random negative, ties
/// counted as one half (rank-sum form). Throws SingleClass.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

/// AUC of y_pred per group, with reference labels obtained by applying `rule`
/// to y_true over all partitioned rows. Gap is |auc_a - auc_b|.
MetricResult auc_parity(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                        double epsilon = 0.05);

/// Decisions of `rule` applied to one score column over the partitioned rows;
/// returned vector is indexed by table row (rows outside the partition false).
std::vector<bool> partition_decisions(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                                      bool use_truth);

}  // namespace fairscope
