#include "fairscope/audit.hpp"

#include <fstream>
#include <functional>

#include "fairscope/classification.hpp"
#include "fairscope/decision.hpp"
#include "fairscope/effect_size.hpp"
#include "fairscope/error.hpp"
#include "fairscope/feature_screen.hpp"
#include "fairscope/rank_stats.hpp"
#include "fairscope/reliability.hpp"

namespace fairscope {

namespace {

std::string reason_of(const Error& e) { return e.what(); }

void guarded(std::vector<MetricResult>& out, const std::string& metric, Stage stage, const std::string& construct,
             const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    out.push_back(undefined_metric(metric, stage, construct, reason_of(e)));
  }
}

TableSummary summarize(const AuditTable& table, const GroupPartition& part, const AuditConfig& cfg) {
  TableSummary s;
  s.n_rows = table.size();
  s.group_column = table.group_column_name();
  s.group_a = part.group_a_label;
  s.group_b = part.group_b_label;
  s.n_a = part.n_a();
  s.n_b = part.n_b();
  s.excluded = part.excluded;
  s.constructs = {table.construct_name};
  s.notes.push_back("metrics use the " + std::to_string(part.n_included()) + " rows of groups " + part.group_a_label +
                    " and " + part.group_b_label);
  const auto& rule = cfg.decision;
  if (rule.mode() == DecisionSpec::Mode::TopKRate) {
    s.notes.push_back("decision rule " + rule.to_string() + ": k = floor(rate * n_included) = " +
                      std::to_string(rule.k_for(part.n_included())));
  } else {
    s.notes.push_back("decision rule " + rule.to_string());
  }
  s.notes.push_back(std::string("scores ") + (table.scale.higher_is_better ? "higher" : "lower") + " is better");
  return s;
}

void ground_truth_stage(const AuditTable& table, const GroupPartition& part, const AuditConfig& cfg,
                        AuditReport& rep) {
  if (table.rater_ids.empty()) return;
  const auto& c = table.construct_name;
  AnnotationMatrix m;
  guarded(rep.results, "icc_1k", Stage::GroundTruth, c, [&] {
    m = annotation_matrix(table);
    const IccResult r = icc_1k_listwise(m);
    IccGate gate;
    gate.construct = c;
    gate.icc = r.icc;
    gate.gate = cfg.thresholds.icc_gate;
    gate.reference = cfg.thresholds.icc_reference;
    gate.passed = r.icc >= gate.gate;
    gate.n_targets = r.n_targets;
    gate.n_raters = r.n_raters;
    gate.dropped = r.dropped;
    rep.icc.push_back(gate);
    rep.results.push_back(icc_metric(gate));
  });
  if (m.n_raters() < 2) return;
  guarded(rep.results, "differential_item_functioning", Stage::GroundTruth, c, [&] {
    for (auto& r : dif_metrics(item_total_dif(m, part, cfg.thresholds.dif), c, cfg.thresholds)) {
      rep.results.push_back(std::move(r));
    }
  });
}

void feature_stage(const AuditTable& table, const GroupPartition& part, const AuditConfig& cfg,
                   std::vector<MetricResult>& out) {
  const auto& c = table.construct_name;
  out.push_back(unawareness_check(table, cfg.effective_forbidden_columns()));
  if (table.feature_names.empty()) return;
  guarded(out, "feature_leakage", Stage::Feature, c, [&] {
    for (auto& r : leakage_metrics(leakage_screen(table, part, cfg.thresholds.leakage), c, cfg.thresholds)) {
      out.push_back(std::move(r));
    }
  });
}

double epsilon_for(const AuditConfig& cfg, const std::string& metric) {
  auto it = cfg.epsilon_by_metric.find(metric);
  return it == cfg.epsilon_by_metric.end() ? cfg.thresholds.rate_gap : it->second;
}

void prediction_stage(const AuditTable& table, const GroupPartition& part, const AuditConfig& cfg,
                      std::vector<MetricResult>& out) {
  const auto& c = table.construct_name;
  const auto& t = cfg.thresholds;
  guarded(out, "correlational_accuracy", Stage::Prediction, c, [&] {
    out.push_back(correlation_metric(correlational_accuracy(table, part), part.group_a_label, part.group_b_label, c, t));
  });
  try {
    const EffectSizeReport es = effect_size_difference(table, part);
    out.push_back(effect_size_metric(es, c, t));
    out.push_back(predicted_effect_size_metric(es, c, t));
  } catch (const Error& e) {
    out.push_back(undefined_metric("effect_size_difference", Stage::Prediction, c, reason_of(e)));
    out.push_back(undefined_metric("predicted_effect_size", Stage::Prediction, c, reason_of(e)));
  }
  guarded(out, "range_restriction", Stage::Prediction, c,
          [&] { out.push_back(range_restriction_metric(range_restriction(table), c, t)); });
  guarded(out, "auc_parity", Stage::Prediction, c, [&] {
    MetricResult r = auc_parity(table, part, cfg.decision, epsilon_for(cfg, "auc_parity"));
    r.construct = c;
    out.push_back(std::move(r));
  });
}

void decision_stage(const AuditTable& table, const GroupPartition& part, const AuditConfig& cfg,
                    std::vector<MetricResult>& out) {
  const auto& c = table.construct_name;
  const auto& t = cfg.thresholds;
  const auto& la = part.group_a_label;
  const auto& lb = part.group_b_label;
  guarded(out, "adverse_impact_true", Stage::Decision, c, [&] {
    out.push_back(adverse_impact_metric(adverse_impact(table, part, cfg.decision, ScoreColumn::Truth), "true", la, lb,
                                        c, t));
  });
  guarded(out, "adverse_impact_pred", Stage::Decision, c, [&] {
    out.push_back(adverse_impact_metric(adverse_impact(table, part, cfg.decision, ScoreColumn::Pred), "pred", la, lb,
                                        c, t));
  });
  try {
    const auto pred = partition_decisions(table, part, cfg.decision, false);
    const auto truth = partition_decisions(table, part, cfg.decision, true);
    const GroupConfusion cm = confusion_by_group(pred, truth, part);
    FamilyOptions opts;
    opts.epsilon = t.rate_gap;
    opts.epsilon_by_metric = cfg.epsilon_by_metric;
    opts.label_a = la;
    opts.label_b = lb;
    opts.construct = c;
    for (auto& r : fairness_family(rates(cm.a), rates(cm.b), opts)) out.push_back(std::move(r));
  } catch (const Error& e) {
    for (const auto& name : fairness_family_metrics()) {
      out.push_back(undefined_metric(name, Stage::Decision, c, reason_of(e)));
    }
  }
  if (!cfg.strata_column.empty()) {
    guarded(out, "conditional_demographic_parity", Stage::Decision, c, [&] {
      out.push_back(conditional_parity_metric(
          conditional_demographic_parity(table, part, cfg.decision, cfg.strata_column), c,
          epsilon_for(cfg, "conditional_demographic_parity")));
    });
  }
  out.push_back(single_threshold_check(cfg.decision, cfg.group_overrides, c));
}

}  // namespace

AuditTable load_input(const AuditConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::InvalidConfig, "no input file given");
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw Error(ErrorKind::InputUnavailable, "cannot open '" + cfg.input + "'");
  return load_audit_table(in, cfg.columns, cfg.scale, cfg.construct);
}

GroupPartition resolve_partition(const AuditTable& table, const AuditConfig& cfg) {
  if (cfg.groups) return partition(table, cfg.groups->first, cfg.groups->second);
  const auto labels = table.group_labels();
  if (labels.size() != 2) {
    throw Error(ErrorKind::UnknownGroupLabel, "table has " + std::to_string(labels.size()) +
                                                  " group labels; choose two with groups = A,B");
  }
  return partition(table, labels[0], labels[1]);
}

AuditReport run_audit(const AuditTable& table, const AuditConfig& cfg) {
  cfg.validate();
  const GroupPartition part = resolve_partition(table, cfg);
  AuditReport rep;
  rep.command = "audit";
  rep.table = summarize(table, part, cfg);
  rep.config = cfg.echo();
  ground_truth_stage(table, part, cfg, rep);
  feature_stage(table, part, cfg, rep.results);
  prediction_stage(table, part, cfg, rep.results);
  decision_stage(table, part, cfg, rep.results);
  sort_results(rep.results);
  return rep;
}

SweepReport run_sweep(const AuditTable& table, const AuditConfig& cfg) {
  cfg.validate();
  const GroupPartition part = resolve_partition(table, cfg);
  SweepReport rep;
  rep.table = summarize(table, part, cfg);
  rep.table.notes.erase(rep.table.notes.begin() + 1);
  rep.table.notes.insert(rep.table.notes.begin() + 1, "top-k at each rate: k = floor(rate * n_included)");
  rep.points = ai_sweep(table, part, cfg.sweep_rates);
  rep.config = cfg.echo();
  return rep;
}

AuditReport run_screen(const AuditTable& table, const AuditConfig& cfg) {
  cfg.validate();
  const GroupPartition part = resolve_partition(table, cfg);
  AuditReport rep;
  rep.command = "screen";
  rep.table = summarize(table, part, cfg);
  rep.config = cfg.echo();
  feature_stage(table, part, cfg, rep.results);
  sort_results(rep.results);
  return rep;
}

}  // namespace fairscope
