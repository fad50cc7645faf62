#include "fairscope/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "fairscope/error.hpp"

#ifndef FAIRSCOPE_VERSION_STRING
#define FAIRSCOPE_VERSION_STRING "0.0.0"
#endif

namespace fairscope {

using ojson = nlohmann::ordered_json;

std::string_view tool_version() { return FAIRSCOPE_VERSION_STRING; }

std::optional<double> AuditReport::icc_mean() const {
  if (icc.empty()) return std::nullopt;
  double s = 0.0;
  for (const auto& g : icc) s += g.icc;
  return s / static_cast<double>(icc.size());
}

bool AuditReport::has_violation() const {
  return std::any_of(results.begin(), results.end(), [](const MetricResult& r) { return r.flag == Flag::Violation; });
}

void sort_results(std::vector<MetricResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const MetricResult& x, const MetricResult& y) {
    return std::tie(x.stage, x.metric, x.construct, x.qualifier) < std::tie(y.stage, y.metric, y.construct, y.qualifier);
  });
}

// ---------------------------------------------------------------------------
// Builders

MetricResult correlation_metric(const CorrelationReport& rep, const std::string& label_a, const std::string& label_b,
                                const std::string& construct, const Thresholds& t) {
  MetricResult m;
  m.metric = "correlational_accuracy";
  m.stage = Stage::Prediction;
  m.construct = construct;
  m.values = {{"rho_all", rep.rho_all}, {"rho_a", rep.rho_a}, {"rho_b", rep.rho_b},
              {"diff_a_minus_b", rep.diff_a_minus_b}};
  if (rep.z_stat) m.values.emplace_back("z_stat", *rep.z_stat);
  m.per_group = {{label_a + ".rho", rep.rho_a},
                 {label_a + ".n", static_cast<double>(rep.n_a)},
                 {label_b + ".rho", rep.rho_b},
                 {label_b + ".n", static_cast<double>(rep.n_b)}};
  m.threshold_used = t.rho_diff;
  m.flag = flag(Check::CorrelationDifference, rep.diff_a_minus_b, t);
  m.rationale = m.flag == Flag::Suspect ? "|rho_a - rho_b| exceeds threshold" : "rank accuracy similar across groups";
  if (!rep.z_stat) m.notes.push_back("z statistic omitted: needs n > 10 in both groups");
  return m;
}

MetricResult effect_size_metric(const EffectSizeReport& rep, const std::string& construct, const Thresholds& t) {
  MetricResult m;
  m.metric = "effect_size_difference";
  m.stage = Stage::Prediction;
  m.construct = construct;
  m.values = {{"d_true", rep.d_true}, {"d_pred", rep.d_pred}, {"diff_true_minus_pred", rep.diff_true_minus_pred}};
  if (rep.pooled_sd_true > 0.0) {
    m.values.emplace_back("pooled_sd_true", rep.pooled_sd_true);
    m.values.emplace_back("pooled_sd_pred", rep.pooled_sd_pred);
    m.values.emplace_back("sd_ratio_pred_over_true", rep.sd_ratio_pred_over_true);
    m.per_group = {{"a.mean_true", rep.mean_a_true},
                   {"a.mean_pred", rep.mean_a_pred},
                   {"b.mean_true", rep.mean_b_true},
                   {"b.mean_pred", rep.mean_b_pred}};
  }
  m.threshold_used = t.effect_size;
  m.flag = flag(Check::EffectSizeDifference, rep.diff_true_minus_pred, t);
  m.rationale = m.flag == Flag::Suspect ? "|d_true - d_pred| exceeds threshold"
                                        : "group effect size preserved by predictions";
  return m;
}

MetricResult predicted_effect_size_metric(const EffectSizeReport& rep, const std::string& construct,
                                          const Thresholds& t) {
  MetricResult m;
  m.metric = "predicted_effect_size";
  m.stage = Stage::Prediction;
  m.construct = construct;
  m.values = {{"d_pred", rep.d_pred}, {"d_true", rep.d_true}};
  m.threshold_used = t.effect_size;
  m.flag = flag(Check::PredictedEffectSize, rep.d_pred, t);
  m.rationale = m.flag == Flag::Suspect ? "|d_pred| exceeds threshold" : "predicted group difference small";
  return m;
}

MetricResult range_restriction_metric(const RangeRestriction& rr, const std::string& construct, const Thresholds& t) {
  MetricResult m;
  m.metric = "range_restriction";
  m.stage = Stage::Prediction;
  m.construct = construct;
  m.values = {{"min_true", rr.min_true}, {"max_true", rr.max_true}, {"min_pred", rr.min_pred},
              {"max_pred", rr.max_pred}, {"sd_true", rr.sd_true},   {"sd_pred", rr.sd_pred},
              {"sd_ratio", rr.sd_ratio}};
  m.threshold_used = t.sd_ratio;
  m.flag = rr.sd_ratio < t.sd_ratio ? Flag::Suspect : Flag::Ok;
  m.rationale = m.flag == Flag::Suspect ? "possible range restriction (sd_pred / sd_true below threshold)"
                                        : "prediction spread comparable to ground truth";
  return m;
}

MetricResult adverse_impact_metric(const AdverseImpactResult& ai, const std::string& which,
                                   const std::string& label_a, const std::string& label_b,
                                   const std::string& construct, const Thresholds& t) {
  MetricResult m;
  m.metric = "adverse_impact_" + which;
  m.stage = Stage::Decision;
  m.construct = construct;
  if (ai.ai_ratio) m.values.emplace_back("ai_ratio", *ai.ai_ratio);
  m.values.emplace_back("sr_a", ai.sr_a);
  m.values.emplace_back("sr_b", ai.sr_b);
  m.per_group = {{label_a + ".selected", static_cast<double>(ai.selected_a)},
                 {label_a + ".n", static_cast<double>(ai.n_a)},
                 {label_b + ".selected", static_cast<double>(ai.selected_b)},
                 {label_b + ".n", static_cast<double>(ai.n_b)}};
  m.threshold_used = t.adverse_impact;
  if (!ai.ai_ratio) {
    m.flag = Flag::Undefined;
    m.rationale = ai.note.empty() ? "undefined: no selections" : ai.note;
    return m;
  }
  // At the statutory 0.8 the integer-exact decision is authoritative.
  const bool violated = t.adverse_impact == 0.8 ? ai.four_fifths_violation : *ai.ai_ratio < t.adverse_impact;
  m.flag = violated ? Flag::Violation : Flag::Ok;
  m.rationale = violated ? "four-fifths rule violated (AI below threshold)" : "selection ratios within four-fifths";
  if (!ai.note.empty()) m.notes.push_back(ai.note);
  return m;
}

MetricResult icc_metric(const IccGate& gate) {
  MetricResult m;
  m.metric = "icc_1k";
  m.stage = Stage::GroundTruth;
  m.construct = gate.construct;
  m.values = {{"icc", gate.icc},
              {"reference", gate.reference},
              {"n_targets", static_cast<double>(gate.n_targets)},
              {"n_raters", static_cast<double>(gate.n_raters)},
              {"dropped", static_cast<double>(gate.dropped)}};
  m.threshold_used = gate.gate;
  m.flag = gate.passed ? Flag::Ok : Flag::Suspect;
  m.rationale = gate.passed ? "annotator panel reliability meets the gate" : "annotator panel reliability below gate";
  if (gate.dropped > 0) m.notes.push_back(std::to_string(gate.dropped) + " targets with missing ratings dropped");
  return m;
}

std::vector<MetricResult> dif_metrics(const std::vector<ItemRestRecord>& records, const std::string& construct,
                                      const Thresholds& t) {
  std::vector<MetricResult> out;
  for (const auto& rec : records) {
    MetricResult m;
    m.metric = "differential_item_functioning";
    m.stage = Stage::GroundTruth;
    m.construct = construct;
    m.qualifier = rec.rater_id;
    m.values = {{"r_a", rec.r_a}, {"r_b", rec.r_b}, {"diff", rec.diff}};
    m.threshold_used = t.dif;
    m.flag = rec.flagged ? Flag::Suspect : Flag::Ok;
    m.rationale = rec.flagged ? "item-rest correlation differs across groups" : "item-rest correlation consistent";
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MetricResult> leakage_metrics(const std::vector<LeakageReport>& reports, const std::string& construct,
                                          const Thresholds& t) {
  std::vector<MetricResult> out;
  for (const auto& rep : reports) {
    MetricResult m;
    m.metric = "feature_leakage";
    m.stage = Stage::Feature;
    m.construct = construct;
    m.qualifier = rep.feature_name;
    m.values = {{"separability_auc", rep.separability_auc}, {"raw_auc", rep.raw_auc}};
    m.threshold_used = t.leakage;
    m.flag = rep.flagged ? Flag::Suspect : Flag::Ok;
    m.rationale = rep.flagged ? "feature separates groups" : "feature carries little group information";
    if (!rep.direction.empty()) m.notes.push_back("higher in " + rep.direction);
    if (!rep.note.empty()) m.notes.push_back(rep.note);
    out.push_back(std::move(m));
  }
  return out;
}

MetricResult conditional_parity_metric(const ConditionalParityResult& res, const std::string& construct,
                                       double epsilon) {
  MetricResult m;
  m.metric = "conditional_demographic_parity";
  m.stage = Stage::Decision;
  m.construct = construct;
  m.qualifier = res.strata_column;
  m.threshold_used = epsilon;
  for (const auto& s : res.strata) m.per_group.emplace_back("stratum " + s.stratum + ".gap", s.gap);
  for (const auto& s : res.excluded_strata) m.notes.push_back("stratum " + s + " excluded: one group absent");
  if (res.missing_rows) m.notes.push_back(std::to_string(res.missing_rows) + " rows without a stratum value");
  if (!res.max_gap) {
    m.flag = Flag::Undefined;
    m.rationale = "undefined (no stratum contains both groups)";
    return m;
  }
  m.values = {{"max_gap", *res.max_gap}, {"strata", static_cast<double>(res.strata.size())}};
  m.flag = *res.max_gap <= epsilon ? Flag::Ok : Flag::Suspect;
  m.rationale = m.flag == Flag::Ok ? "selection rates match within every stratum"
                                   : "selection-rate gap within a stratum exceeds tolerance";
  return m;
}

MetricResult undefined_metric(const std::string& metric, Stage stage, const std::string& construct,
                              const std::string& reason) {
  MetricResult m;
  m.metric = metric;
  m.stage = stage;
  m.construct = construct;
  m.flag = Flag::Undefined;
  m.rationale = "undefined (" + reason + ")";
  return m;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ojson named_to_json(const NamedValues& values) {
  ojson obj = ojson::object();
  for (const auto& [k, v] : values) obj[k] = v;
  return obj;
}

ojson table_to_json(const TableSummary& t) {
  ojson j;
  j["n_rows"] = t.n_rows;
  j["group_column"] = t.group_column;
  j["group_a"] = t.group_a;
  j["group_b"] = t.group_b;
  j["n_a"] = t.n_a;
  j["n_b"] = t.n_b;
  j["excluded"] = t.excluded;
  j["constructs"] = t.constructs;
  j["notes"] = t.notes;
  return j;
}

ojson config_to_json(const KeyValueList& config) {
  ojson obj = ojson::object();
  for (const auto& [k, v] : config) obj[k] = v;
  return obj;
}

ojson result_to_json(const MetricResult& r) {
  ojson j;
  j["metric"] = r.metric;
  j["stage"] = std::string(to_string(r.stage));
  j["construct"] = r.construct;
  j["qualifier"] = r.qualifier;
  j["values"] = named_to_json(r.values);
  j["per_group"] = named_to_json(r.per_group);
  j["flag"] = std::string(to_string(r.flag));
  j["rationale"] = r.rationale;
  j["threshold_used"] = r.threshold_used ? ojson(*r.threshold_used) : ojson(nullptr);
  j["notes"] = r.notes;
  return j;
}

template <typename T>
T field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidReport, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidReport, std::string("field '") + key + "': " + e.what());
  }
}

NamedValues named_from_json(const ojson& j, const char* key) {
  NamedValues out;
  const auto& obj = j.at(key);
  if (!obj.is_object()) throw Error(ErrorKind::InvalidReport, std::string("field '") + key + "' must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!v.is_number()) throw Error(ErrorKind::InvalidReport, "value '" + k + "' is not a number");
    out.emplace_back(k, v.get<double>());
  }
  return out;
}

TableSummary table_from_json(const ojson& j) {
  TableSummary t;
  t.n_rows = field<std::size_t>(j, "n_rows");
  t.group_column = field<std::string>(j, "group_column");
  t.group_a = field<std::string>(j, "group_a");
  t.group_b = field<std::string>(j, "group_b");
  t.n_a = field<std::size_t>(j, "n_a");
  t.n_b = field<std::size_t>(j, "n_b");
  t.excluded = field<std::size_t>(j, "excluded");
  t.constructs = field<std::vector<std::string>>(j, "constructs");
  t.notes = field<std::vector<std::string>>(j, "notes");
  return t;
}

KeyValueList config_from_json(const ojson& j) {
  KeyValueList out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::InvalidReport, "config value '" + k + "' is not a string");
    out.emplace_back(k, v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string render_json(const AuditReport& report) {
  ojson j;
  j["schema"] = std::string(kAuditSchema);
  j["tool"] = {{"name", "fairscope"}, {"version", report.version}};
  j["command"] = report.command;
  j["table"] = table_to_json(report.table);
  ojson icc = ojson::array();
  for (const auto& g : report.icc) {
    icc.push_back({{"construct", g.construct},
                   {"icc", g.icc},
                   {"gate", g.gate},
                   {"reference", g.reference},
                   {"passed", g.passed},
                   {"n_targets", g.n_targets},
                   {"n_raters", g.n_raters},
                   {"dropped", g.dropped}});
  }
  j["icc_gate"] = icc;
  const auto mean = report.icc_mean();
  j["icc_mean"] = mean ? ojson(*mean) : ojson(nullptr);
  ojson results = ojson::array();
  for (const auto& r : report.results) results.push_back(result_to_json(r));
  j["results"] = results;
  j["config"] = config_to_json(report.config);
  return j.dump(2) + "\n";
}

AuditReport parse_report_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidReport, e.what());
  }
  if (field<std::string>(j, "schema") != kAuditSchema) {
    throw Error(ErrorKind::InvalidReport, "unsupported schema '" + field<std::string>(j, "schema") + "'");
  }
  AuditReport rep;
  rep.version = field<std::string>(j.at("tool"), "version");
  rep.command = field<std::string>(j, "command");
  rep.table = table_from_json(j.at("table"));
  for (const auto& g : j.at("icc_gate")) {
    IccGate gate;
    gate.construct = field<std::string>(g, "construct");
    gate.icc = field<double>(g, "icc");
    gate.gate = field<double>(g, "gate");
    gate.reference = field<double>(g, "reference");
    gate.passed = field<bool>(g, "passed");
    gate.n_targets = field<std::size_t>(g, "n_targets");
    gate.n_raters = field<std::size_t>(g, "n_raters");
    gate.dropped = field<std::size_t>(g, "dropped");
    rep.icc.push_back(std::move(gate));
  }
  for (const auto& r : j.at("results")) {
    MetricResult m;
    m.metric = field<std::string>(r, "metric");
    m.stage = parse_stage(field<std::string>(r, "stage"));
    m.construct = field<std::string>(r, "construct");
    m.qualifier = field<std::string>(r, "qualifier");
    m.values = named_from_json(r, "values");
    m.per_group = named_from_json(r, "per_group");
    m.flag = parse_flag(field<std::string>(r, "flag"));
    m.rationale = field<std::string>(r, "rationale");
    if (!r.at("threshold_used").is_null()) m.threshold_used = field<double>(r, "threshold_used");
    m.notes = field<std::vector<std::string>>(r, "notes");
    rep.results.push_back(std::move(m));
  }
  rep.config = config_from_json(j.at("config"));
  return rep;
}

// ---------------------------------------------------------------------------
// Markdown

std::string table_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  if (s == "1.00" || s == "-1.00") return s.substr(0, s.size() - 1);
  if (s.rfind("0.", 0) == 0) return s.substr(1);
  if (s.rfind("-0.", 0) == 0) return "-" + s.substr(2);
  return s;
}

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string s(buf);
  return s == "-0.0000" ? "0.0000" : s;
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string bold_if(const std::string& text, bool bold) { return bold ? "**" + text + "**" : text; }

bool flagged(Flag f) { return f == Flag::Suspect || f == Flag::Violation; }

const MetricResult* find_metric(const std::vector<MetricResult>& results, std::string_view metric,
                                std::string_view construct) {
  for (const auto& r : results) {
    if (r.metric == metric && r.construct == construct) return &r;
  }
  return nullptr;
}

std::string cell(const MetricResult* m, std::string_view key, bool bold_on_flag) {
  if (!m) return "n/a";
  const auto v = m->value(key);
  if (!v) return "n/a";
  return bold_if(table_number(*v), bold_on_flag && flagged(m->flag));
}

bool is_count(const std::string& key) {
  return key.rfind("n_", 0) == 0 || key == "dropped" || key == "strata" || key == "forbidden_features_used" ||
         key == "group_specific_rules";
}

std::string values_text(const NamedValues& values) {
  std::string out;
  for (const auto& [k, v] : values) {
    out += (out.empty() ? "" : "; ") + k + " = " + (is_count(k) ? format_real(v) : fixed4(v));
  }
  return out.empty() ? "-" : out;
}

void write_summary_table(std::ostringstream& md, const AuditReport& report) {
  const std::string a = md_escape(report.table.group_a);
  const std::string b = md_escape(report.table.group_b);
  md << "| Construct | Spearman All | Spearman " << a << " | Spearman " << b << " | " << a << "-" << b
     << " | d True | d Pred | d True-Pred | AI True | AI Pred |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& c : report.table.constructs) {
    const auto* rho = find_metric(report.results, "correlational_accuracy", c);
    const auto* d = find_metric(report.results, "effect_size_difference", c);
    const auto* ai_t = find_metric(report.results, "adverse_impact_true", c);
    const auto* ai_p = find_metric(report.results, "adverse_impact_pred", c);
    md << "| " << md_escape(c) << " | " << cell(rho, "rho_all", false) << " | " << cell(rho, "rho_a", false) << " | "
       << cell(rho, "rho_b", false) << " | " << cell(rho, "diff_a_minus_b", true) << " | " << cell(d, "d_true", false)
       << " | " << cell(d, "d_pred", false) << " | " << cell(d, "diff_true_minus_pred", true) << " | "
       << cell(ai_t, "ai_ratio", true) << " | " << cell(ai_p, "ai_ratio", true) << " |\n";
  }
}

}  // namespace

std::string render_markdown(const AuditReport& report) {
  std::ostringstream md;
  md << "# Fairness audit report\n\n";
  md << "- tool: fairscope " << report.version << " (" << kAuditSchema << ")\n";
  md << "- command: " << report.command << "\n";
  const auto& t = report.table;
  md << "- rows: " << t.n_rows << "; group column: `" << md_escape(t.group_column) << "`\n";
  md << "- reference group A: `" << md_escape(t.group_a) << "` (n = " << t.n_a << "); focal group B: `"
     << md_escape(t.group_b) << "` (n = " << t.n_b << "); excluded rows: " << t.excluded << "\n";
  md << "- differences are A - B; bold marks suspect or violation flags\n";
  for (const auto& note : t.notes) md << "- " << md_escape(note) << "\n";
  md << "\n";

  if (!report.icc.empty()) {
    md << "## Ground-truth reliability\n\n";
    md << "| Construct | ICC(1,k) | Gate | Reference | Targets | Raters | Dropped | Status |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& g : report.icc) {
      md << "| " << md_escape(g.construct) << " | " << fixed4(g.icc) << " | " << fixed4(g.gate) << " | "
         << fixed4(g.reference) << " | " << g.n_targets << " | " << g.n_raters << " | " << g.dropped << " | "
         << bold_if(g.passed ? "pass" : "below gate", !g.passed) << " |\n";
    }
    md << "\nMean ICC(1,k) over constructs: " << fixed4(*report.icc_mean()) << "\n\n";
  }

  const bool has_summary = std::any_of(report.results.begin(), report.results.end(), [](const MetricResult& r) {
    return r.metric == "correlational_accuracy" || r.metric == "effect_size_difference" ||
           r.metric.rfind("adverse_impact_", 0) == 0;
  });
  if (has_summary && !t.constructs.empty()) {
    md << "## Summary\n\n";
    write_summary_table(md, report);
    md << "\n";
  }

  md << "## Results\n";
  if (report.results.empty()) md << "\nNo metrics computed.\n";
  for (Stage stage : {Stage::GroundTruth, Stage::Feature, Stage::Prediction, Stage::Decision}) {
    bool header = false;
    for (const auto& r : report.results) {
      if (r.stage != stage) continue;
      if (!header) {
        md << "\n### Stage: " << to_string(stage) << "\n\n";
        md << "| Metric | Construct | Scope | Values | Flag | Rationale |\n";
        md << "|---|---|---|---|---|---|\n";
        header = true;
      }
      std::string rationale = r.rationale;
      for (const auto& n : r.notes) rationale += "; " + n;
      md << "| " << md_escape(r.metric) << " | " << md_escape(r.construct) << " | "
         << (r.qualifier.empty() ? "-" : md_escape(r.qualifier)) << " | " << values_text(r.values) << " | "
         << bold_if(std::string(to_string(r.flag)), flagged(r.flag)) << " | " << md_escape(rationale) << " |\n";
    }
  }

  md << "\n## Configuration\n\n| Key | Value |\n|---|---|\n";
  for (const auto& [k, v] : report.config) md << "| " << md_escape(k) << " | " << md_escape(v) << " |\n";
  return md.str();
}

std::string render(const AuditReport& report, OutputFormat format) {
  return format == OutputFormat::Json ? render_json(report) : render_markdown(report);
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

ojson ai_to_json(const AdverseImpactResult& ai) {
  ojson j;
  j["sr_a"] = ai.sr_a;
  j["sr_b"] = ai.sr_b;
  j["ai_ratio"] = ai.ai_ratio ? ojson(*ai.ai_ratio) : ojson(nullptr);
  j["four_fifths_violation"] = ai.four_fifths_violation;
  j["selected_a"] = ai.selected_a;
  j["selected_b"] = ai.selected_b;
  j["n_a"] = ai.n_a;
  j["n_b"] = ai.n_b;
  j["note"] = ai.note;
  return j;
}

std::string ai_cell(const AdverseImpactResult& ai) {
  if (!ai.ai_ratio) return "n/a";
  return bold_if(fixed4(*ai.ai_ratio), ai.four_fifths_violation);
}

}  // namespace

std::string render_json(const SweepReport& report) {
  ojson j;
  j["schema"] = std::string(kSweepSchema);
  j["tool"] = {{"name", "fairscope"}, {"version", report.version}};
  j["table"] = table_to_json(report.table);
  ojson points = ojson::array();
  for (const auto& p : report.points) {
    points.push_back({{"rate", p.rate}, {"k", p.k}, {"pred", ai_to_json(p.pred)}, {"truth", ai_to_json(p.truth)}});
  }
  j["points"] = points;
  j["config"] = config_to_json(report.config);
  return j.dump(2) + "\n";
}

std::string render_markdown(const SweepReport& report) {
  std::ostringstream md;
  const auto& t = report.table;
  md << "# Adverse impact sensitivity sweep\n\n";
  md << "- tool: fairscope " << report.version << " (" << kSweepSchema << ")\n";
  md << "- reference group A: `" << md_escape(t.group_a) << "` (n = " << t.n_a << "); focal group B: `"
     << md_escape(t.group_b) << "` (n = " << t.n_b << "); excluded rows: " << t.excluded << "\n";
  for (const auto& note : t.notes) md << "- " << md_escape(note) << "\n";
  md << "\n| Rate | k | SR A (pred) | SR B (pred) | AI Pred | SR A (true) | SR B (true) | AI True |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& p : report.points) {
    md << "| " << format_real(p.rate) << " | " << p.k << " | " << fixed4(p.pred.sr_a) << " | " << fixed4(p.pred.sr_b)
       << " | " << ai_cell(p.pred) << " | " << fixed4(p.truth.sr_a) << " | " << fixed4(p.truth.sr_b) << " | "
       << ai_cell(p.truth) << " |\n";
  }
  md << "\n## Configuration\n\n| Key | Value |\n|---|---|\n";
  for (const auto& [k, v] : report.config) md << "| " << md_escape(k) << " | " << md_escape(v) << " |\n";
  return md.str();
}

std::string render(const SweepReport& report, OutputFormat format) {
  return format == OutputFormat::Json ? render_json(report) : render_markdown(report);
}

}  // namespace fairscope
