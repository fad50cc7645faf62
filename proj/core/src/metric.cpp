#include "fairscope/metric.hpp"

#include <cmath>

#include "fairscope/error.hpp"

namespace fairscope {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::GroundTruth: return "ground_truth";
    case Stage::Feature: return "feature";
    case Stage::Prediction: return "prediction";
    case Stage::Decision: return "decision";
  }
  return "?";
}

std::string_view to_string(Flag f) {
  switch (f) {
    case Flag::Ok: return "ok";
    case Flag::Suspect: return "suspect";
    case Flag::Violation: return "violation";
    case Flag::Undefined: return "undefined";
  }
  return "?";
}

Stage parse_stage(std::string_view s) {
  for (Stage st : {Stage::GroundTruth, Stage::Feature, Stage::Prediction, Stage::Decision}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorKind::InvalidReport, "unknown stage '" + std::string(s) + "'");
}

Flag parse_flag(std::string_view s) {
  for (Flag f : {Flag::Ok, Flag::Suspect, Flag::Violation, Flag::Undefined}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorKind::InvalidReport, "unknown flag '" + std::string(s) + "'");
}

int severity(Flag f) {
  switch (f) {
    case Flag::Ok: return 0;
    case Flag::Suspect: return 1;
    case Flag::Violation: return 2;
    case Flag::Undefined: return -1;
  }
  return -1;
}

namespace {

std::optional<double> lookup(const NamedValues& values, std::string_view name) {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> MetricResult::value(std::string_view name) const { return lookup(values, name); }
std::optional<double> MetricResult::group_value(std::string_view name) const { return lookup(per_group, name); }

void Thresholds::validate() const {
  const std::pair<const char*, double> all[] = {
      {"rho_diff_threshold", rho_diff}, {"d_threshold", effect_size},   {"ai_threshold", adverse_impact},
      {"rate_gap_epsilon", rate_gap},   {"icc_gate", icc_gate},         {"icc_reference", icc_reference},
      {"leakage_threshold", leakage},   {"sd_ratio_threshold", sd_ratio}, {"dif_threshold", dif},
  };
  for (const auto& [name, v] : all) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidConfig, std::string(name) + " must be a positive number");
    }
  }
}

Flag flag(Check check, std::optional<double> value, const Thresholds& t) {
  if (!value || !std::isfinite(*value)) return Flag::Undefined;
  const double v = *value;
  switch (check) {
    case Check::CorrelationDifference: return std::fabs(v) > t.rho_diff ? Flag::Suspect : Flag::Ok;
    case Check::EffectSizeDifference:
    case Check::PredictedEffectSize: return std::fabs(v) > t.effect_size ? Flag::Suspect : Flag::Ok;
    case Check::AdverseImpact: return v < t.adverse_impact ? Flag::Violation : Flag::Ok;
    case Check::RateGap: return std::fabs(v) > t.rate_gap ? Flag::Suspect : Flag::Ok;
  }
  return Flag::Undefined;
}

}  // namespace fairscope
