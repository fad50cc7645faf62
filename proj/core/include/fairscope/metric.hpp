#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairscope {

/// Pipeline region whose inputs a metric reads. Declaration order is the
/// report order.
enum class Stage { GroundTruth, Feature, Prediction, Decision };

/// Severity. `Violation` is reserved for legally anchored checks (the
/// four-fifths rule); effect-size and tolerance checks raise `Suspect`.
enum class Flag { Ok, Suspect, Violation, Undefined };

std::string_view to_string(Stage s);
std::string_view to_string(Flag f);
Stage parse_stage(std::string_view s);
Flag parse_flag(std::string_view s);

/// 0 for ok, 1 suspect, 2 violation; undefined is -1 (not comparable).
int severity(Flag f);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct MetricResult {
  std::string metric;
  Stage stage = Stage::Prediction;
  std::string construct;
  /// Distinguishes several results of one metric, e.g. a rater id, a feature
  /// name or a sweep rate. Empty for single-valued metrics.
  std::string qualifier;
  NamedValues values;
  NamedValues per_group;
  Flag flag = Flag::Ok;
  std::string rationale;
  std::optional<double> threshold_used;
  std::vector<std::string> notes;

  std::optional<double> value(std::string_view name) const;
  std::optional<double> group_value(std::string_view name) const;

  bool operator==(const MetricResult&) const = default;
};

/// Flagging thresholds. Defaults follow the conventions of the audit: small
/// effect sizes (|rho diff| > .1, |d| > .2) are suspect, AI below .8 is a
/// four-fifths violation.
struct Thresholds {
  double rho_diff = 0.1;
  double effect_size = 0.2;
  double adverse_impact = 0.8;
  double rate_gap = 0.05;
  double icc_gate = 0.60;
  double icc_reference = 0.67;
  double leakage = 0.65;
  double sd_ratio = 0.8;
  double dif = 0.1;

  /// Throws InvalidConfig unless every threshold is positive.
  void validate() const;
  bool operator==(const Thresholds&) const = default;
};

enum class Check {
  CorrelationDifference,  // |value| > rho_diff
  EffectSizeDifference,   // |value| > effect_size
  PredictedEffectSize,    // |value| > effect_size
  AdverseImpact,          // value < adverse_impact
  RateGap,                // |value| > rate_gap
};

/// Flag for one check; nullopt values are Undefined.
Flag flag(Check check, std::optional<double> value, const Thresholds& t);

}  // namespace fairscope
