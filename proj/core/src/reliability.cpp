#include "fairscope/reliability.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "fairscope/error.hpp"
#include "fairscope/rank_stats.hpp"

namespace fairscope {

AnnotationMatrix::AnnotationMatrix(std::vector<std::string> target_ids, std::vector<std::string> rater_ids,
                                   std::vector<std::optional<double>> values, std::vector<std::size_t> source_rows)
    : target_ids_(std::move(target_ids)),
      rater_ids_(std::move(rater_ids)),
      values_(std::move(values)),
      source_rows_(std::move(source_rows)) {
  if (values_.size() != target_ids_.size() * rater_ids_.size()) {
    throw Error(ErrorKind::LengthMismatch, "annotation grid has " + std::to_string(values_.size()) +
                                               " cells, expected " +
                                               std::to_string(target_ids_.size() * rater_ids_.size()));
  }
  if (source_rows_.empty()) {
    source_rows_.resize(target_ids_.size());
    std::iota(source_rows_.begin(), source_rows_.end(), std::size_t{0});
  } else if (source_rows_.size() != target_ids_.size()) {
    throw Error(ErrorKind::LengthMismatch, "source row map does not match target count");
  }
}

AnnotationMatrix AnnotationMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.empty() ? 0 : rows.front().size();
  std::vector<std::string> targets;
  std::vector<std::string> raters;
  std::vector<std::optional<double>> values;
  for (std::size_t j = 0; j < k; ++j) raters.push_back("r" + std::to_string(j + 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != k) throw Error(ErrorKind::LengthMismatch, "ragged annotation rows");
    targets.push_back("t" + std::to_string(i + 1));
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return AnnotationMatrix(std::move(targets), std::move(raters), std::move(values));
}

bool AnnotationMatrix::is_complete() const {
  for (const auto& v : values_) {
    if (!v) return false;
  }
  return true;
}

AnnotationMatrix annotation_matrix(const AuditTable& table) {
  const std::size_t k_all = table.rater_ids.size();
  std::vector<std::size_t> keep_cols;
  for (std::size_t j = 0; j < k_all; ++j) {
    for (const auto& rec : table.records) {
      if (rec.ratings[j]) {
        keep_cols.push_back(j);
        break;
      }
    }
  }
  if (keep_cols.size() < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "need at least 2 rater columns with ratings, found " + std::to_string(keep_cols.size()));
  }
  std::vector<std::string> raters;
  for (std::size_t j : keep_cols) raters.push_back(table.rater_ids[j]);

  std::vector<std::string> targets;
  std::vector<std::optional<double>> values;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const auto& rec = table.records[i];
    std::size_t present = 0;
    for (std::size_t j : keep_cols) present += rec.ratings[j].has_value();
    if (present < 2) continue;
    targets.push_back(rec.subject_id);
    rows.push_back(i);
    for (std::size_t j : keep_cols) values.push_back(rec.ratings[j]);
  }
  if (targets.empty()) throw Error(ErrorKind::DegenerateInput, "no target has two or more ratings");
  return AnnotationMatrix(std::move(targets), std::move(raters), std::move(values), std::move(rows));
}

CompleteCases complete_cases(const AnnotationMatrix& m) {
  std::vector<std::string> targets;
  std::vector<std::optional<double>> values;
  std::vector<std::size_t> rows;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < m.n_targets(); ++i) {
    bool complete = true;
    for (std::size_t j = 0; j < m.n_raters(); ++j) complete = complete && m.at(i, j).has_value();
    if (!complete) {
      ++dropped;
      continue;
    }
    targets.push_back(m.target_ids()[i]);
    rows.push_back(m.source_rows()[i]);
    for (std::size_t j = 0; j < m.n_raters(); ++j) values.push_back(m.at(i, j));
  }
  if (targets.empty()) {
    return {AnnotationMatrix({}, m.rater_ids(), {}), dropped};
  }
  return {AnnotationMatrix(std::move(targets), m.rater_ids(), std::move(values), std::move(rows)), dropped};
}

double icc_1k(const AnnotationMatrix& m) {
  if (!m.is_complete()) throw Error(ErrorKind::IncompleteMatrix, "ICC(1,k) requires a complete ratings grid");
  const std::size_t n = m.n_targets();
  const std::size_t k = m.n_raters();
  if (n < 2 || k < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "ICC(1,k) needs >= 2 targets and >= 2 raters, got " + std::to_string(n) + "x" + std::to_string(k));
  }
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += *m.at(i, j);
    row_mean[i] = s / static_cast<double>(k);
    grand += s;
  }
  grand /= static_cast<double>(n * k);

  double ss_between = 0.0;
  double ss_within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = row_mean[i] - grand;
    ss_between += d * d;
    for (std::size_t j = 0; j < k; ++j) {
      const double e = *m.at(i, j) - row_mean[i];
      ss_within += e * e;
    }
  }
  const double ms_between = static_cast<double>(k) * ss_between / static_cast<double>(n - 1);
  const double ms_within = ss_within / static_cast<double>(n * (k - 1));
  if (!(ms_between > 0.0)) throw Error(ErrorKind::NoBetweenTargetVariance, "targets do not differ (MS_B = 0)");
  return (ms_between - ms_within) / ms_between;
}

IccResult icc_1k_listwise(const AnnotationMatrix& m) {
  const CompleteCases cc = complete_cases(m);
  IccResult res;
  res.icc = icc_1k(cc.matrix);
  res.n_targets = cc.matrix.n_targets();
  res.n_raters = cc.matrix.n_raters();
  res.dropped = cc.dropped;
  return res;
}

std::vector<ItemRestRecord> item_total_dif(const AnnotationMatrix& m, const GroupPartition& part,
                                           double threshold) {
  std::unordered_map<std::size_t, int> group_of;  // 0 = A, 1 = B
  for (std::size_t r : part.idx_a) group_of[r] = 0;
  for (std::size_t r : part.idx_b) group_of[r] = 1;
  const std::string* labels[2] = {&part.group_a_label, &part.group_b_label};

  std::vector<ItemRestRecord> out;
  out.reserve(m.n_raters());
  for (std::size_t j = 0; j < m.n_raters(); ++j) {
    std::vector<double> item[2];
    std::vector<double> rest[2];
    for (std::size_t i = 0; i < m.n_targets(); ++i) {
      auto g = group_of.find(m.source_rows()[i]);
      if (g == group_of.end() || !m.at(i, j)) continue;
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t o = 0; o < m.n_raters(); ++o) {
        if (o == j || !m.at(i, o)) continue;
        sum += *m.at(i, o);
        ++cnt;
      }
      if (cnt == 0) continue;
      item[g->second].push_back(*m.at(i, j));
      rest[g->second].push_back(sum / static_cast<double>(cnt));
    }
    double r[2];
    for (int g = 0; g < 2; ++g) {
      try {
        r[g] = spearman(item[g], rest[g]);
      } catch (const Error& e) {
        throw Error(e.kind(), "rater '" + m.rater_ids()[j] + "', group '" + *labels[g] + "': " + e.detail());
      }
    }
    ItemRestRecord rec;
    rec.rater_id = m.rater_ids()[j];
    rec.r_a = r[0];
    rec.r_b = r[1];
    rec.diff = r[0] - r[1];
    rec.flagged = std::fabs(rec.diff) > threshold;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace fairscope
