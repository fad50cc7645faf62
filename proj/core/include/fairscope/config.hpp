#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairscope/data.hpp"
#include "fairscope/decision_spec.hpp"
#include "fairscope/metric.hpp"

namespace fairscope {

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

/// Parses the flat configuration format:
///
///   # comment
///   key = value
///
/// Blank lines and lines starting with '#' are ignored, keys and values are
/// trimmed, a key may appear once. Text whose first non-blank character is
/// '{' is read as a JSON object with the same keys; its strings, numbers and
/// booleans map to values and arrays become comma-separated lists.
KeyValueList parse_key_values(std::string_view text);

/// Splits "a, b ,c" into trimmed non-empty items.
std::vector<std::string> split_list(std::string_view text);

enum class OutputFormat { Json, Markdown };

struct AuditConfig {
  std::string input;
  std::string construct = "construct";
  ColumnSchema columns;
  ScoreScale scale;
  /// Reference group A and focal group B. Unset: the two labels of the
  /// table in byte order (an error when the table has other labels).
  std::optional<std::pair<std::string, std::string>> groups;
  DecisionSpec decision = DecisionSpec::top_k_rate(0.1);
  std::vector<double> sweep_rates = {0.05, 0.1, 0.2, 0.3, 0.5, 1.0};
  Thresholds thresholds;
  std::map<std::string, double> epsilon_by_metric;
  std::string strata_column;
  /// Unset: the group column alone.
  std::optional<std::vector<std::string>> forbidden_columns;
  std::map<std::string, DecisionSpec> group_overrides;
  OutputFormat format = OutputFormat::Json;
  bool gate = false;

  /// Applies one key. Throws InvalidConfig for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Applies every pair in order, rejecting a file that sets both
  /// `select_rate` and `threshold`.
  void apply(const KeyValueList& kv);

  /// Throws InvalidConfig when the configuration is inconsistent.
  void validate() const;

  std::vector<std::string> effective_forbidden_columns() const;

  /// Every effective setting as key/value text, sorted by key. Feeding the
  /// echo back through apply() reproduces the configuration.
  KeyValueList echo() const;

  static const std::vector<std::string>& known_keys();
};

AuditConfig load_audit_config(std::string_view text);

}  // namespace fairscope
