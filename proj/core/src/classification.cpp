#include "fairscope/classification.hpp"

#include <cmath>
#include <unordered_map>

#include "fairscope/error.hpp"
#include "fairscope/rank_stats.hpp"

namespace fairscope {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

GroupRates rates(const ConfusionMatrix& cm) {
  GroupRates r;
  r.tpr = ratio(cm.tp, cm.tp + cm.fn);
  r.fpr = ratio(cm.fp, cm.fp + cm.tn);
  r.ppv = ratio(cm.tp, cm.tp + cm.fp);
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  r.positive_rate = ratio(cm.tp + cm.fp, cm.total());
  r.fn_fp_ratio = ratio(cm.fn, cm.fp);
  return r;
}

GroupConfusion confusion_by_group(const std::vector<bool>& decisions_pred, const std::vector<bool>& decisions_true,
                                  const GroupPartition& part) {
  if (decisions_pred.size() != decisions_true.size()) {
    throw Error(ErrorKind::LengthMismatch, "predicted and reference decisions differ in length");
  }
  auto tally = [&](const std::vector<std::size_t>& rows) {
    ConfusionMatrix cm;
    for (std::size_t r : rows) {
      if (r >= decisions_pred.size()) throw Error(ErrorKind::LengthMismatch, "partition row beyond decision vector");
      const bool p = decisions_pred[r];
      const bool t = decisions_true[r];
      if (p && t) ++cm.tp;
      else if (p) ++cm.fp;
      else if (t) ++cm.fn;
      else ++cm.tn;
    }
    return cm;
  };
  return {tally(part.idx_a), tally(part.idx_b)};
}

double FamilyOptions::epsilon_for(const std::string& metric) const {
  auto it = epsilon_by_metric.find(metric);
  return it == epsilon_by_metric.end() ? epsilon : it->second;
}

const std::vector<std::string>& fairness_family_metrics() {
  static const std::vector<std::string> names = {
      "equalized_odds",     "equal_opportunity",  "predictive_equality", "overall_accuracy_equality",
      "treatment_equality", "predictive_parity", "statistical_parity",
  };
  return names;
}

namespace {

struct RateRef {
  const char* key;
  std::optional<double> GroupRates::*member;
  const char* missing_reason;
};

const RateRef kTpr{"tpr", &GroupRates::tpr, "no reference positives"};
const RateRef kFpr{"fpr", &GroupRates::fpr, "no reference negatives"};
const RateRef kPpv{"ppv", &GroupRates::ppv, "no predicted positives"};
const RateRef kAcc{"accuracy", &GroupRates::accuracy, "empty group"};
const RateRef kPos{"positive_rate", &GroupRates::positive_rate, "empty group"};
const RateRef kFnFp{"fn_fp_ratio", &GroupRates::fn_fp_ratio, "zero false positives"};

MetricResult gap_metric(const std::string& name, const std::vector<RateRef>& refs, const GroupRates& a,
                        const GroupRates& b, const FamilyOptions& opts) {
  MetricResult res;
  res.metric = name;
  res.stage = Stage::Decision;
  res.construct = opts.construct;
  const double eps = opts.epsilon_for(name);
  res.threshold_used = eps;

  std::string missing;
  for (const auto& ref : refs) {
    const auto& va = a.*(ref.member);
    const auto& vb = b.*(ref.member);
    if (va) res.per_group.emplace_back(opts.label_a + "." + ref.key, *va);
    if (vb) res.per_group.emplace_back(opts.label_b + "." + ref.key, *vb);
    if (!va && missing.empty()) missing = std::string(ref.missing_reason) + " in " + opts.label_a;
    if (!vb && missing.empty()) missing = std::string(ref.missing_reason) + " in " + opts.label_b;
  }
  if (!missing.empty()) {
    res.flag = Flag::Undefined;
    res.rationale = "undefined (" + missing + ")";
    return res;
  }

  bool satisfied = true;
  double worst = 0.0;
  for (const auto& ref : refs) {
    const double g = std::fabs(*(a.*(ref.member)) - *(b.*(ref.member)));
    if (refs.size() > 1) res.values.emplace_back(std::string(ref.key) + "_gap", g);
    worst = std::max(worst, g);
    satisfied = satisfied && g <= eps;
  }
  res.values.emplace_back("gap", worst);
  res.flag = satisfied ? Flag::Ok : Flag::Suspect;
  res.rationale = satisfied ? "all group gaps within tolerance" : "group gap exceeds tolerance";
  return res;
}

}  // namespace

std::vector<MetricResult> fairness_family(const GroupRates& rates_a, const GroupRates& rates_b,
                                          const FamilyOptions& opts) {
  std::vector<MetricResult> out;
  out.push_back(gap_metric("equalized_odds", {kTpr, kFpr}, rates_a, rates_b, opts));
  out.push_back(gap_metric("equal_opportunity", {kTpr}, rates_a, rates_b, opts));
  out.push_back(gap_metric("predictive_equality", {kFpr}, rates_a, rates_b, opts));
  out.push_back(gap_metric("overall_accuracy_equality", {kAcc}, rates_a, rates_b, opts));
  out.push_back(gap_metric("treatment_equality", {kFnFp}, rates_a, rates_b, opts));
  auto pp = gap_metric("predictive_parity", {kPpv}, rates_a, rates_b, opts);
  pp.notes.push_back("implemented as equal positive predictive value across groups");
  out.push_back(std::move(pp));
  out.push_back(gap_metric("statistical_parity", {kPos}, rates_a, rates_b, opts));
  return out;
}

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw Error(ErrorKind::LengthMismatch, "scores and labels differ in length");
  std::size_t n_pos = 0;
  for (bool l : labels) n_pos += l;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorKind::SingleClass, "AUC needs both classes (positives " + std::to_string(n_pos) +
                                            ", negatives " + std::to_string(n_neg) + ")");
  }
  const auto ranks = fractional_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (labels[i]) rank_sum += ranks[i];
  }
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

std::vector<bool> partition_decisions(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                                      bool use_truth) {
  const auto rows = part.included_rows();
  std::vector<double> scores;
  std::vector<std::string> ids;
  scores.reserve(rows.size());
  ids.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto& rec = table.records[r];
    scores.push_back(use_truth ? rec.y_true : rec.y_pred);
    ids.push_back(rec.subject_id);
  }
  const auto sub = binarize(scores, ids, rule, table.scale.higher_is_better);
  std::vector<bool> out(table.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) out[rows[i]] = sub[i];
  return out;
}

MetricResult auc_parity(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                        double epsilon) {
  const auto labels = partition_decisions(table, part, rule, /*use_truth=*/true);
  auto group_auc = [&](const std::vector<std::size_t>& rows, const std::string& label) {
    std::vector<double> s;
    std::vector<bool> l;
    for (std::size_t r : rows) {
      // Lower-is-better scales rank in the opposite direction.
      const double p = table.records[r].y_pred;
      s.push_back(table.scale.higher_is_better ? p : -p);
      l.push_back(labels[r]);
    }
    try {
      return auc(s, l);
    } catch (const Error& e) {
      throw Error(e.kind(), "group '" + label + "': " + e.detail());
    }
  };
  const double auc_a = group_auc(part.idx_a, part.group_a_label);
  const double auc_b = group_auc(part.idx_b, part.group_b_label);

  MetricResult res;
  res.metric = "auc_parity";
  res.stage = Stage::Prediction;
  res.construct = table.construct_name;
  res.per_group = {{part.group_a_label + ".auc", auc_a}, {part.group_b_label + ".auc", auc_b}};
  const double gap = std::fabs(auc_a - auc_b);
  res.values = {{"gap", gap}};
  res.threshold_used = epsilon;
  res.flag = gap <= epsilon ? Flag::Ok : Flag::Suspect;
  res.rationale = gap <= epsilon ? "AUC gap within tolerance" : "AUC gap exceeds tolerance";
  res.notes.push_back("reference labels: " + rule.to_string() + " applied to ground truth");
  return res;
}

}  // namespace fairscope
