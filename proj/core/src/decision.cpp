#include "fairscope/decision.hpp"

#include <algorithm>
#include <cmath>

#include "fairscope/classification.hpp"
#include "fairscope/error.hpp"

namespace fairscope {

std::optional<double> adverse_impact_ratio(double sr_a, double sr_b) {
  if (sr_a == 0.0 && sr_b == 0.0) return std::nullopt;
  if (sr_a == 0.0 || sr_b == 0.0) return 0.0;
  return std::min(sr_a / sr_b, sr_b / sr_a);
}

bool violates_four_fifths(double ai_ratio) { return ai_ratio < 0.8; }

AdverseImpactResult adverse_impact_from_counts(std::size_t selected_a, std::size_t n_a, std::size_t selected_b,
                                               std::size_t n_b, const std::string& label_a,
                                               const std::string& label_b) {
  if (n_a == 0 || n_b == 0) throw Error(ErrorKind::DegenerateInput, "adverse impact needs non-empty groups");
  if (selected_a > n_a || selected_b > n_b) throw Error(ErrorKind::DegenerateInput, "more selections than members");
  AdverseImpactResult res;
  res.selected_a = selected_a;
  res.selected_b = selected_b;
  res.n_a = n_a;
  res.n_b = n_b;
  res.sr_a = static_cast<double>(selected_a) / static_cast<double>(n_a);
  res.sr_b = static_cast<double>(selected_b) / static_cast<double>(n_b);
  if (selected_a == 0 && selected_b == 0) {
    res.note = "undefined: no selections";
    return res;
  }
  // sr_a / sr_b == (sel_a * n_b) / (sel_b * n_a)
  __extension__ typedef unsigned __int128 wide;
  const wide cross_a = static_cast<wide>(selected_a) * n_b;
  const wide cross_b = static_cast<wide>(selected_b) * n_a;
  const wide lo = std::min(cross_a, cross_b);
  const wide hi = std::max(cross_a, cross_b);
  res.ai_ratio = static_cast<double>(lo) / static_cast<double>(hi);
  res.four_fifths_violation = 5 * lo < 4 * hi;
  if (selected_a == 0) res.note = "zero selections in group " + label_a;
  if (selected_b == 0) res.note = "zero selections in group " + label_b;
  return res;
}

AdverseImpactResult adverse_impact(const AuditTable& table, const GroupPartition& part, const DecisionSpec& rule,
                                   ScoreColumn column) {
  if (rule.mode() == DecisionSpec::Mode::TopKRate && rule.k_for(part.n_included()) == 0) {
    throw Error(ErrorKind::InvalidK, "selection rate " + format_real(rule.rate()) + " selects nobody out of " +
                                         std::to_string(part.n_included()));
  }
  const auto decisions = partition_decisions(table, part, rule, column == ScoreColumn::Truth);
  std::size_t sel_a = 0;
  std::size_t sel_b = 0;
  for (std::size_t r : part.idx_a) sel_a += decisions[r];
  for (std::size_t r : part.idx_b) sel_b += decisions[r];
  return adverse_impact_from_counts(sel_a, part.n_a(), sel_b, part.n_b(), part.group_a_label, part.group_b_label);
}

std::vector<SweepPoint> ai_sweep(const AuditTable& table, const GroupPartition& part,
                                 const std::vector<double>& rates) {
  std::vector<SweepPoint> out;
  out.reserve(rates.size());
  for (double rate : rates) {
    const auto rule = DecisionSpec::top_k_rate(rate);
    SweepPoint p;
    p.rate = rate;
    p.k = rule.k_for(part.n_included());
    p.pred = adverse_impact(table, part, rule, ScoreColumn::Pred);
    p.truth = adverse_impact(table, part, rule, ScoreColumn::Truth);
    out.push_back(std::move(p));
  }
  return out;
}

ConditionalParityResult conditional_demographic_parity(const AuditTable& table, const GroupPartition& part,
                                                       const DecisionSpec& rule, const std::string& strata_column) {
  const auto fidx = table.feature_index(strata_column);
  if (!fidx) throw Error(ErrorKind::UnknownColumn, "strata column '" + strata_column + "' is not a feature column");
  const auto decisions = partition_decisions(table, part, rule, /*use_truth=*/false);

  struct Cell {
    std::size_t n[2] = {0, 0};
    std::size_t sel[2] = {0, 0};
  };
  std::map<double, Cell> cells;
  ConditionalParityResult res;
  res.strata_column = strata_column;
  auto visit = [&](const std::vector<std::size_t>& rows, int g) {
    for (std::size_t r : rows) {
      const auto& v = table.records[r].features[*fidx];
      if (!v) {
        ++res.missing_rows;
        continue;
      }
      Cell& c = cells[*v];
      ++c.n[g];
      c.sel[g] += decisions[r];
    }
  };
  visit(part.idx_a, 0);
  visit(part.idx_b, 1);

  for (const auto& [value, c] : cells) {
    const std::string name = format_real(value);
    if (c.n[0] == 0 || c.n[1] == 0) {
      res.excluded_strata.push_back(name);
      continue;
    }
    StratumGap s;
    s.stratum = name;
    s.n_a = c.n[0];
    s.n_b = c.n[1];
    s.sr_a = static_cast<double>(c.sel[0]) / static_cast<double>(c.n[0]);
    s.sr_b = static_cast<double>(c.sel[1]) / static_cast<double>(c.n[1]);
    s.gap = std::fabs(s.sr_a - s.sr_b);
    res.max_gap = std::max(res.max_gap.value_or(0.0), s.gap);
    res.strata.push_back(std::move(s));
  }
  return res;
}

MetricResult single_threshold_check(const DecisionSpec& rule,
                                    const std::map<std::string, DecisionSpec>& per_group_overrides,
                                    const std::string& construct) {
  MetricResult res;
  res.metric = "single_threshold";
  res.stage = Stage::Decision;
  res.construct = construct;
  res.notes.push_back("global rule " + rule.to_string());
  std::vector<std::string> differing;
  bool redundant = false;
  for (const auto& [group, spec] : per_group_overrides) {
    if (spec == rule) {
      redundant = true;
    } else {
      differing.push_back(group);
      res.notes.push_back("group " + group + " uses " + spec.to_string());
    }
  }
  res.values = {{"group_specific_rules", static_cast<double>(differing.size())}};
  if (differing.empty()) {
    res.flag = Flag::Ok;
    res.rationale = redundant ? "single rule for everyone (redundant overrides)" : "single rule for everyone";
  } else {
    res.flag = Flag::Suspect;
    std::string list;
    for (const auto& g : differing) list += (list.empty() ? "" : ", ") + g;
    res.rationale = "group-specific decision rules: " + list;
  }
  return res;
}

}  // namespace fairscope
