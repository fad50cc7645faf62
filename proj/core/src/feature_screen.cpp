#include "fairscope/feature_screen.hpp"

#include <algorithm>
#include <set>

#include "fairscope/classification.hpp"

namespace fairscope {

MetricResult unawareness_check(const AuditTable& table, const std::vector<std::string>& forbidden_columns) {
  MetricResult res;
  res.metric = "fairness_through_unawareness";
  res.stage = Stage::Feature;
  res.construct = table.construct_name;
  if (forbidden_columns.empty()) {
    res.flag = Flag::Ok;
    res.rationale = "no forbidden columns declared";
    res.values = {{"forbidden_features_used", 0.0}};
    return res;
  }
  const std::set<std::string> features(table.feature_names.begin(), table.feature_names.end());
  std::vector<std::string> used;
  for (const auto& col : forbidden_columns) {
    if (features.count(col) && std::find(used.begin(), used.end(), col) == used.end()) used.push_back(col);
  }
  res.values = {{"forbidden_features_used", static_cast<double>(used.size())}};
  if (used.empty()) {
    res.flag = Flag::Ok;
    res.rationale = "no forbidden column among features";
  } else {
    res.flag = Flag::Suspect;
    std::string list;
    for (const auto& u : used) list += (list.empty() ? "" : ", ") + u;
    res.rationale = "forbidden columns used as features: " + list;
    res.notes = used;
  }
  return res;
}

std::vector<LeakageReport> leakage_screen(const AuditTable& table, const GroupPartition& part,
                                          double flag_threshold) {
  std::vector<LeakageReport> out;
  out.reserve(table.feature_names.size());
  for (std::size_t f = 0; f < table.feature_names.size(); ++f) {
    LeakageReport rep;
    rep.feature_name = table.feature_names[f];
    std::vector<double> values;
    std::vector<bool> is_b;
    std::size_t present[2] = {0, 0};
    auto collect = [&](const std::vector<std::size_t>& rows, bool b) {
      for (std::size_t r : rows) {
        const auto& v = table.records[r].features[f];
        if (!v) continue;
        values.push_back(*v);
        is_b.push_back(b);
        ++present[b ? 1 : 0];
      }
    };
    collect(part.idx_a, false);
    collect(part.idx_b, true);

    const bool constant = std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
    if (present[0] == 0 || present[1] == 0) {
      rep.note = "no values in one group";
    } else if (constant) {
      rep.note = "constant feature";
    } else {
      rep.raw_auc = auc(values, is_b);
      rep.separability_auc = std::max(rep.raw_auc, 1.0 - rep.raw_auc);
      if (rep.raw_auc > 0.5) rep.direction = part.group_b_label;
      if (rep.raw_auc < 0.5) rep.direction = part.group_a_label;
    }
    rep.flagged = rep.separability_auc >= flag_threshold;
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), [](const LeakageReport& x, const LeakageReport& y) {
    if (x.separability_auc != y.separability_auc) return x.separability_auc > y.separability_auc;
    return x.feature_name < y.feature_name;
  });
  return out;
}

}  // namespace fairscope
