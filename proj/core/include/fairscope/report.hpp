#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairscope/config.hpp"
#include "fairscope/decision.hpp"
#include "fairscope/effect_size.hpp"
#include "fairscope/feature_screen.hpp"
#include "fairscope/metric.hpp"
#include "fairscope/rank_stats.hpp"
#include "fairscope/reliability.hpp"

namespace fairscope {

inline constexpr std::string_view kAuditSchema = "fairscope.audit/1";
inline constexpr std::string_view kSweepSchema = "fairscope.sweep/1";

/// Library version baked in at build time.
std::string_view tool_version();

struct TableSummary {
  std::size_t n_rows = 0;
  std::string group_column;
  std::string group_a;
  std::string group_b;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::size_t excluded = 0;
  /// Constructs in report order.
  std::vector<std::string> constructs;
  std::vector<std::string> notes;

  bool operator==(const TableSummary&) const = default;
};

struct IccGate {
  std::string construct;
  double icc = 0.0;
  double gate = 0.60;
  double reference = 0.67;
  bool passed = false;
  std::size_t n_targets = 0;
  std::size_t n_raters = 0;
  std::size_t dropped = 0;

  bool operator==(const IccGate&) const = default;
};

struct AuditReport {
  std::string command = "audit";
  std::string version{tool_version()};
  TableSummary table;
  std::vector<IccGate> icc;
  std::vector<MetricResult> results;
  KeyValueList config;

  /// Mean ICC over constructs; nullopt without ratings.
  std::optional<double> icc_mean() const;
  bool has_violation() const;

  bool operator==(const AuditReport&) const = default;
};

/// Canonical order: stage (pipeline order), metric, construct, qualifier.
void sort_results(std::vector<MetricResult>& results);

// Builders turning module outputs into flagged MetricResults.
MetricResult correlation_metric(const CorrelationReport& rep, const std::string& label_a, const std::string& label_b,
                                const std::string& construct, const Thresholds& t);
MetricResult effect_size_metric(const EffectSizeReport& rep, const std::string& construct, const Thresholds& t);
MetricResult predicted_effect_size_metric(const EffectSizeReport& rep, const std::string& construct,
                                          const Thresholds& t);
MetricResult range_restriction_metric(const RangeRestriction& rr, const std::string& construct, const Thresholds& t);
/// `which` is "true" or "pred"; the metric is named adverse_impact_<which>.
MetricResult adverse_impact_metric(const AdverseImpactResult& ai, const std::string& which,
                                   const std::string& label_a, const std::string& label_b,
                                   const std::string& construct, const Thresholds& t);
MetricResult icc_metric(const IccGate& gate);
std::vector<MetricResult> dif_metrics(const std::vector<ItemRestRecord>& records, const std::string& construct,
                                      const Thresholds& t);
std::vector<MetricResult> leakage_metrics(const std::vector<LeakageReport>& reports, const std::string& construct,
                                          const Thresholds& t);
MetricResult conditional_parity_metric(const ConditionalParityResult& res, const std::string& construct,
                                       double epsilon);
/// Result for a metric that could not be computed.
MetricResult undefined_metric(const std::string& metric, Stage stage, const std::string& construct,
                              const std::string& reason);

std::string render_json(const AuditReport& report);
std::string render_markdown(const AuditReport& report);
std::string render(const AuditReport& report, OutputFormat format);

/// Inverse of render_json. Throws InvalidReport.
AuditReport parse_report_json(std::string_view text);

/// Table-style number: two decimals without the leading zero (".43", "-.01", "1.0").
std::string table_number(double v);

struct SweepReport {
  std::string version{tool_version()};
  TableSummary table;
  std::vector<SweepPoint> points;
  KeyValueList config;
};

std::string render_json(const SweepReport& report);
std::string render_markdown(const SweepReport& report);
std::string render(const SweepReport& report, OutputFormat format);

}  // namespace fairscope
