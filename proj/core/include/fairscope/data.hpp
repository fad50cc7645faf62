#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairscope {

/// Bounds of the score scale shared by ground truth, predictions and ratings.
struct ScoreScale {
  double min = 1.0;
  double max = 7.0;
  bool higher_is_better = true;

  bool contains(double v) const { return v >= min && v <= max; }
  void validate() const;
  bool operator==(const ScoreScale&) const = default;
};

/// Maps CSV columns to audit roles. Rater and feature columns are matched by
/// prefix; explicit feature columns are added on top of the prefix matches.
struct ColumnSchema {
  std::string subject_column = "subject_id";
  std::string group_column = "group";
  std::string truth_column = "y_true";
  std::string pred_column = "y_pred";
  std::string rater_prefix = "rater_";
  std::string feature_prefix = "f_";
  std::vector<std::string> extra_feature_columns;

  bool operator==(const ColumnSchema&) const = default;
};

struct SubjectRecord {
  std::string subject_id;
  std::string group;
  double y_true = 0.0;
  double y_pred = 0.0;
  /// One entry per table rater, in AuditTable::rater_ids order.
  std::vector<std::optional<double>> ratings;
  /// One entry per table feature, in AuditTable::feature_names order.
  std::vector<std::optional<double>> features;

  bool operator==(const SubjectRecord&) const = default;
};

/// Validated, immutable-after-load dataset for one construct.
struct AuditTable {
  std::vector<SubjectRecord> records;
  ScoreScale scale;
  ColumnSchema schema;
  std::string construct_name;
  std::vector<std::string> rater_ids;
  std::vector<std::string> feature_names;

  std::size_t size() const { return records.size(); }
  const std::string& group_column_name() const { return schema.group_column; }

  /// Distinct group labels, sorted (byte order, case-sensitive).
  std::vector<std::string> group_labels() const;
  std::optional<std::size_t> feature_index(std::string_view name) const;

  std::vector<double> truth_column() const;
  std::vector<double> pred_column() const;

  bool operator==(const AuditTable&) const = default;
};

/// Two-group view of a table. Rows carrying any other label are excluded.
struct GroupPartition {
  std::string group_a_label;
  std::string group_b_label;
  std::vector<std::size_t> idx_a;
  std::vector<std::size_t> idx_b;
  std::size_t excluded = 0;

  std::size_t n_a() const { return idx_a.size(); }
  std::size_t n_b() const { return idx_b.size(); }
  std::size_t n_included() const { return idx_a.size() + idx_b.size(); }
  /// Rows of both groups in ascending row order.
  std::vector<std::size_t> included_rows() const;

  bool operator==(const GroupPartition&) const = default;
};

AuditTable load_audit_table(std::istream& source, const ColumnSchema& schema, const ScoreScale& scale,
                            std::string construct_name = "construct");
AuditTable load_audit_table(std::string_view csv_text, const ColumnSchema& schema,
                            const ScoreScale& scale, std::string construct_name = "construct");

/// Writes the table in the CSV interchange format using the table's schema.
/// Reals are written in shortest round-trip form so a reload is exact.
void write_audit_csv(std::ostream& out, const AuditTable& table);

GroupPartition partition(const AuditTable& table, std::string_view group_a, std::string_view group_b);

/// Values of `column` gathered at `rows`, in the given order.
std::vector<double> gather(std::span<const double> column, std::span<const std::size_t> rows);

/// Shortest decimal string that parses back to the same double.
std::string format_real(double v);

/// Strict full-string parse of a finite real; surrounding blanks are allowed.
std::optional<double> parse_real(std::string_view text);

}  // namespace fairscope
