#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fairscope/audit.hpp"
#include "fairscope/error.hpp"
#include "fairscope/synth.hpp"

using namespace fairscope;

namespace {

ErrorKind config_error(const std::string& text) {
  try {
    load_audit_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidReport;
}

const MetricResult* find(const AuditReport& rep, const std::string& metric, const std::string& qualifier = "") {
  for (const auto& r : rep.results) {
    if (r.metric == metric && r.qualifier == qualifier) return &r;
  }
  return nullptr;
}

}  // namespace

TEST(KeyValues, GrammarAndErrors) {
  const auto kv = parse_key_values("# comment\n\n  groups = w , m  \nselect_rate=0.2\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"groups", "w , m"}));
  EXPECT_THROW(parse_key_values("a = 1\na = 2\n"), Error);
  EXPECT_THROW(parse_key_values("novalue\n"), Error);
}

TEST(KeyValues, JsonEncoding) {
  const auto a = load_audit_config("{\"groups\": [\"w\", \"m\"], \"select_rate\": 0.2, \"gate\": true}");
  const auto b = load_audit_config("groups = w,m\nselect_rate = 0.2\ngate = true\n");
  EXPECT_EQ(a.echo(), b.echo());
}

TEST(AuditConfig, Defaults) {
  const AuditConfig c;
  EXPECT_EQ(c.decision, DecisionSpec::top_k_rate(0.1));
  EXPECT_EQ(c.effective_forbidden_columns(), (std::vector<std::string>{"group"}));
  EXPECT_FALSE(c.gate);
  EXPECT_EQ(c.format, OutputFormat::Json);
}

TEST(AuditConfig, RejectsUnknownAndConflicting) {
  EXPECT_EQ(config_error("colour = red"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("select_rate = 0.1\nthreshold = 4"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("select_rate = 2"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("d_threshold = -1"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("epsilon_nonsense = 0.1"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("format = pdf"), ErrorKind::InvalidConfig);
  EXPECT_EQ(config_error("groups = a,a"), ErrorKind::InvalidConfig);
}

TEST(AuditConfig, EchoReproducesConfiguration) {
  const auto c = load_audit_config(
      "groups = w,m\nthreshold = 4.5\nrates = 0.1,0.5\nepsilon_treatment_equality = 0.2\n"
      "group_overrides = m=top_k_rate:0.2\nstrata_col = f_s\nforbidden_columns = group,f_pitch\n"
      "format = markdown\nscale_min = 0\nscale_max = 10\nhigher_is_better = false\n");
  const auto echo = c.echo();
  EXPECT_TRUE(std::is_sorted(echo.begin(), echo.end()));
  AuditConfig again;
  again.apply(echo);
  EXPECT_EQ(again.echo(), echo);
  EXPECT_EQ(again.decision, c.decision);
  EXPECT_EQ(again.groups, c.groups);
  EXPECT_EQ(again.group_overrides, c.group_overrides);
  EXPECT_EQ(again.scale, c.scale);

  AuditConfig defaults;
  AuditConfig d2;
  d2.apply(defaults.echo());
  EXPECT_EQ(d2.echo(), defaults.echo());
  EXPECT_FALSE(d2.groups);
}

namespace {

AuditTable null_table(std::uint64_t seed = 3) {
  SynthSpec s;
  s.seed = seed;
  s.construct = "hireability";
  s.n_strata = 3;
  return generate(s);
}

}  // namespace

TEST(RunAudit, StagesAndDefaults) {
  AuditConfig cfg;
  cfg.construct = "hireability";
  const auto rep = run_audit(null_table(), cfg);
  EXPECT_EQ(rep.table.group_a, "a");
  EXPECT_EQ(rep.table.group_b, "b");
  EXPECT_EQ(rep.icc.size(), 1u);
  for (const char* m : {"icc_1k", "fairness_through_unawareness", "correlational_accuracy", "effect_size_difference",
                        "predicted_effect_size", "range_restriction", "auc_parity", "adverse_impact_true",
                        "adverse_impact_pred", "equalized_odds", "statistical_parity", "single_threshold"}) {
    EXPECT_TRUE(find(rep, m)) << m;
  }
  EXPECT_TRUE(find(rep, "differential_item_functioning", "rater_1"));
  EXPECT_TRUE(find(rep, "feature_leakage", "f_stratum"));
  EXPECT_FALSE(find(rep, "conditional_demographic_parity", "f_stratum"));
  auto sorted = rep.results;
  sort_results(sorted);
  EXPECT_EQ(sorted, rep.results);
}

TEST(RunAudit, UndefinedInsteadOfFailure) {
  AuditTable tab = null_table();
  for (auto& r : tab.records) r.y_pred = 4.0;
  AuditConfig cfg;
  const auto rep = run_audit(tab, cfg);
  const auto* corr = find(rep, "correlational_accuracy");
  ASSERT_TRUE(corr);
  EXPECT_EQ(corr->flag, Flag::Undefined);
  EXPECT_NE(corr->rationale.find("DegenerateInput"), std::string::npos);
}

TEST(RunAudit, GroupsRequiredForManyLabels) {
  AuditTable tab = null_table();
  tab.records[0].group = "c";
  AuditConfig cfg;
  EXPECT_THROW(run_audit(tab, cfg), Error);
  cfg.groups = std::make_pair(std::string("b"), std::string("a"));
  const auto rep = run_audit(tab, cfg);
  EXPECT_EQ(rep.table.excluded, 1u);
  EXPECT_EQ(rep.table.group_a, "b");
}

TEST(RunAudit, GroupSwapMirrorsStatistics) {
  SynthSpec s;
  s.seed = 8;
  s.contamination_shift_b = -0.4;
  s.deficiency_attenuation_b = 0.7;
  const auto tab = generate(s);
  AuditConfig ab, ba;
  ab.groups = std::make_pair(std::string("a"), std::string("b"));
  ba.groups = std::make_pair(std::string("b"), std::string("a"));
  const auto r1 = run_audit(tab, ab);
  const auto r2 = run_audit(tab, ba);
  const auto* c1 = find(r1, "correlational_accuracy");
  const auto* c2 = find(r2, "correlational_accuracy");
  EXPECT_EQ(*c1->value("diff_a_minus_b"), -*c2->value("diff_a_minus_b"));
  const auto* e1 = find(r1, "effect_size_difference");
  const auto* e2 = find(r2, "effect_size_difference");
  EXPECT_NEAR(*e1->value("diff_true_minus_pred"), -*e2->value("diff_true_minus_pred"), 1e-12);
  EXPECT_EQ(find(r1, "adverse_impact_pred")->value("ai_ratio"), find(r2, "adverse_impact_pred")->value("ai_ratio"));
}

TEST(RunAudit, DeterministicRendering) {
  AuditConfig cfg;
  cfg.strata_column = "f_stratum";
  const auto tab = null_table();
  EXPECT_EQ(render_json(run_audit(tab, cfg)), render_json(run_audit(tab, cfg)));
  EXPECT_EQ(render_markdown(run_audit(tab, cfg)), render_markdown(run_audit(tab, cfg)));
  EXPECT_EQ(parse_report_json(render_json(run_audit(tab, cfg))), run_audit(tab, cfg));
}

TEST(RunSweep, ContaminationLowersPredictedAi) {
  SynthSpec s;
  s.seed = 3;
  s.contamination_shift_b = -0.5;
  const auto tab = generate(s);
  AuditConfig cfg;
  const auto sweep = run_sweep(tab, cfg);
  ASSERT_EQ(sweep.points.size(), cfg.sweep_rates.size());
  const auto& at10 = sweep.points[1];
  EXPECT_EQ(at10.rate, 0.1);
  EXPECT_LT(*at10.pred.ai_ratio, *at10.truth.ai_ratio);
  EXPECT_EQ(*sweep.points.back().pred.ai_ratio, 1.0);
}

TEST(RunScreen, FeatureStageOnly) {
  SynthSpec s;
  s.leaky_feature_weight = 3.0;
  const auto rep = run_screen(generate(s), AuditConfig{});
  EXPECT_EQ(rep.command, "screen");
  for (const auto& r : rep.results) EXPECT_EQ(r.stage, Stage::Feature);
  EXPECT_EQ(find(rep, "feature_leakage", "f_1")->flag, Flag::Suspect);
  EXPECT_EQ(find(rep, "feature_leakage", "f_2")->flag, Flag::Ok);
}
