#include "fairscope/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fairscope/csv.hpp"
#include "fairscope/error.hpp"

namespace fairscope {

void ScoreScale::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw Error(ErrorKind::InvalidConfig,
                "score scale requires finite min < max, got [" + format_real(min) + ", " + format_real(max) + "]");
  }
}

std::vector<std::string> AuditTable::group_labels() const {
  std::set<std::string> labels;
  for (const auto& r : records) labels.insert(r.group);
  return {labels.begin(), labels.end()};
}

std::optional<std::size_t> AuditTable::feature_index(std::string_view name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names.begin());
}

std::vector<double> AuditTable::truth_column() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.y_true);
  return out;
}

std::vector<double> AuditTable::pred_column() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.y_pred);
  return out;
}

std::vector<std::size_t> GroupPartition::included_rows() const {
  std::vector<std::size_t> rows;
  rows.reserve(n_included());
  std::merge(idx_a.begin(), idx_a.end(), idx_b.begin(), idx_b.end(), std::back_inserter(rows));
  return rows;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::optional<double> parse_real(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return !prefix.empty() && s.substr(0, prefix.size()) == prefix;
}

bool is_blank_record(const csv::Row& row) { return row.size() == 1 && row[0].empty(); }

double parse_score(const std::string& cell, std::size_t row, const std::string& column,
                   const ScoreScale& scale) {
  auto v = parse_real(cell);
  if (!v) {
    throw CellError(ErrorKind::NonNumericScore, row, column,
                    cell.empty() ? "missing score" : "not a number: '" + cell + "'");
  }
  if (!scale.contains(*v)) {
    throw CellError(ErrorKind::OutOfScale, row, column,
                    format_real(*v) + " outside [" + format_real(scale.min) + ", " + format_real(scale.max) + "]");
  }
  return *v;
}

}  // namespace

AuditTable load_audit_table(std::string_view csv_text, const ColumnSchema& schema, const ScoreScale& scale,
                            std::string construct_name) {
  scale.validate();
  std::vector<csv::Row> rows = csv::parse(csv_text);
  rows.erase(std::remove_if(rows.begin(), rows.end(), is_blank_record), rows.end());
  if (rows.empty()) throw Error(ErrorKind::MalformedCsv, "no header row");

  const csv::Row& header = rows.front();
  std::unordered_map<std::string, std::size_t> column_of;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!column_of.emplace(header[c], c).second) {
      throw Error(ErrorKind::MalformedCsv, "duplicate header column '" + header[c] + "'");
    }
  }
  auto require = [&](const std::string& name) {
    auto it = column_of.find(name);
    if (it == column_of.end()) throw Error(ErrorKind::MissingColumn, "column '" + name + "' not found in header");
    return it->second;
  };
  const std::size_t id_col = require(schema.subject_column);
  const std::size_t group_col = require(schema.group_column);
  const std::size_t truth_col = require(schema.truth_column);
  const std::size_t pred_col = require(schema.pred_column);
  for (const auto& extra : schema.extra_feature_columns) require(extra);

  const std::unordered_set<std::string> extras(schema.extra_feature_columns.begin(),
                                               schema.extra_feature_columns.end());
  AuditTable table;
  table.scale = scale;
  table.schema = schema;
  table.construct_name = std::move(construct_name);
  std::vector<std::size_t> rater_cols;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == id_col || c == truth_col || c == pred_col) continue;
    const std::string& name = header[c];
    if (starts_with(name, schema.rater_prefix) && c != group_col) {
      rater_cols.push_back(c);
      table.rater_ids.push_back(name);
    } else if (starts_with(name, schema.feature_prefix) || extras.count(name)) {
      feature_cols.push_back(c);
      table.feature_names.push_back(name);
    }
  }

  std::unordered_set<std::string> seen_ids;
  table.records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& cells = rows[r];
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::MalformedCsv, "row " + std::to_string(r) + ": expected " +
                                               std::to_string(header.size()) + " fields, found " +
                                               std::to_string(cells.size()));
    }
    SubjectRecord rec;
    rec.subject_id = cells[id_col];
    if (rec.subject_id.empty()) throw CellError(ErrorKind::MalformedCsv, r, header[id_col], "empty subject id");
    if (!seen_ids.insert(rec.subject_id).second) {
      throw Error(ErrorKind::DuplicateSubjectId, "subject id '" + rec.subject_id + "' repeated at row " +
                                                     std::to_string(r));
    }
    rec.group = cells[group_col];
    if (rec.group.empty()) throw CellError(ErrorKind::MalformedCsv, r, header[group_col], "empty group label");
    rec.y_true = parse_score(cells[truth_col], r, header[truth_col], scale);
    rec.y_pred = parse_score(cells[pred_col], r, header[pred_col], scale);
    rec.ratings.reserve(rater_cols.size());
    for (std::size_t c : rater_cols) {
      if (cells[c].empty()) {
        rec.ratings.emplace_back(std::nullopt);
      } else {
        rec.ratings.emplace_back(parse_score(cells[c], r, header[c], scale));
      }
    }
    rec.features.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      if (cells[c].empty()) {
        rec.features.emplace_back(std::nullopt);
        continue;
      }
      auto v = parse_real(cells[c]);
      if (!v) throw CellError(ErrorKind::NonNumericScore, r, header[c], "not a number: '" + cells[c] + "'");
      rec.features.emplace_back(*v);
    }
    table.records.push_back(std::move(rec));
  }
  return table;
}

AuditTable load_audit_table(std::istream& source, const ColumnSchema& schema, const ScoreScale& scale,
                            std::string construct_name) {
  const std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return load_audit_table(std::string_view(text), schema, scale, std::move(construct_name));
}

void write_audit_csv(std::ostream& out, const AuditTable& table) {
  csv::Row header{table.schema.subject_column, table.schema.group_column, table.schema.truth_column,
                  table.schema.pred_column};
  header.insert(header.end(), table.rater_ids.begin(), table.rater_ids.end());
  header.insert(header.end(), table.feature_names.begin(), table.feature_names.end());
  csv::write_row(out, header);
  auto cell = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const auto& rec : table.records) {
    csv::Row row{rec.subject_id, rec.group, format_real(rec.y_true), format_real(rec.y_pred)};
    for (const auto& v : rec.ratings) row.push_back(cell(v));
    for (const auto& v : rec.features) row.push_back(cell(v));
    csv::write_row(out, row);
  }
}

GroupPartition partition(const AuditTable& table, std::string_view group_a, std::string_view group_b) {
  if (group_a == group_b) {
    throw Error(ErrorKind::UnknownGroupLabel, "group labels must differ, both are '" + std::string(group_a) + "'");
  }
  GroupPartition part;
  part.group_a_label = std::string(group_a);
  part.group_b_label = std::string(group_b);
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const std::string& g = table.records[i].group;
    if (g == group_a) {
      part.idx_a.push_back(i);
    } else if (g == group_b) {
      part.idx_b.push_back(i);
    } else {
      ++part.excluded;
    }
  }
  if (part.idx_a.empty()) throw Error(ErrorKind::UnknownGroupLabel, "label '" + std::string(group_a) + "' not present");
  if (part.idx_b.empty()) throw Error(ErrorKind::UnknownGroupLabel, "label '" + std::string(group_b) + "' not present");
  return part;
}

std::vector<double> gather(std::span<const double> column, std::span<const std::size_t> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(column[r]);
  return out;
}

}  // namespace fairscope
