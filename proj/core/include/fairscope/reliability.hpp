#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairscope/data.hpp"

namespace fairscope {

/// Targets x raters grid with an explicit missing mask (nullopt cells).
class AnnotationMatrix {
 public:
  AnnotationMatrix() = default;
  /// `values` is row-major, targets.size() * raters.size() cells.
  /// `source_rows` maps each target to its AuditTable row; defaults to 0..n-1.
  AnnotationMatrix(std::vector<std::string> target_ids, std::vector<std::string> rater_ids,
                   std::vector<std::optional<double>> values, std::vector<std::size_t> source_rows = {});

  /// Complete-data convenience constructor; ids are generated ("t1", "r1", ...).
  static AnnotationMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n_targets() const { return target_ids_.size(); }
  std::size_t n_raters() const { return rater_ids_.size(); }
  const std::optional<double>& at(std::size_t target, std::size_t rater) const {
    return values_[target * rater_ids_.size() + rater];
  }
  const std::vector<std::string>& target_ids() const { return target_ids_; }
  const std::vector<std::string>& rater_ids() const { return rater_ids_; }
  const std::vector<std::size_t>& source_rows() const { return source_rows_; }
  bool is_complete() const;

 private:
  std::vector<std::string> target_ids_;
  std::vector<std::string> rater_ids_;
  std::vector<std::optional<double>> values_;
  std::vector<std::size_t> source_rows_;
};

/// Builds the matrix from the table's rater columns. Rater columns with no
/// ratings at all are dropped, then targets with fewer than two present
/// ratings. Throws DegenerateInput when fewer than two raters remain.
AnnotationMatrix annotation_matrix(const AuditTable& table);

struct CompleteCases {
  AnnotationMatrix matrix;
  std::size_t dropped = 0;
};
/// Listwise deletion of targets with any missing rating.
CompleteCases complete_cases(const AnnotationMatrix& m);

/// One-way random, average-measures ICC: (MS_between - MS_within) / MS_between.
/// Requires a complete matrix with n >= 2 targets and k >= 2 raters.
double icc_1k(const AnnotationMatrix& m);

struct IccResult {
  double icc = 0.0;
  std::size_t n_targets = 0;
  std::size_t n_raters = 0;
  std::size_t dropped = 0;
};
/// Listwise deletion followed by icc_1k.
IccResult icc_1k_listwise(const AnnotationMatrix& m);

struct ItemRestRecord {
  std::string rater_id;
  double r_a = 0.0;
  double r_b = 0.0;
  double diff = 0.0;
  bool flagged = false;
};

/// For every rater: Spearman correlation between the rater's scores and the
/// mean of the other present raters, separately in each group; flagged when
/// |r_a - r_b| > threshold. Targets are assigned to groups through
/// m.source_rows() and `part`.
std::vector<ItemRestRecord> item_total_dif(const AnnotationMatrix& m, const GroupPartition& part,
                                           double threshold);

}  // namespace fairscope
