#include <gtest/gtest.h>

#include <random>

#include "fairscope/decision.hpp"
#include "fairscope/error.hpp"

using namespace fairscope;

namespace {

AuditTable make_table(const std::vector<std::string>& groups, const std::vector<double>& t,
                      const std::vector<double>& p, const std::vector<std::optional<double>>& strata = {}) {
  AuditTable tab;
  tab.scale = ScoreScale{-1e9, 1e9, true};
  if (!strata.empty()) tab.feature_names = {"f_stratum"};
  for (std::size_t i = 0; i < t.size(); ++i) {
    SubjectRecord r;
    char id[16];
    std::snprintf(id, sizeof(id), "s%04zu", i);
    r.subject_id = id;
    r.group = groups[i];
    r.y_true = t[i];
    r.y_pred = p[i];
    if (!strata.empty()) r.features = {strata[i]};
    tab.records.push_back(r);
  }
  return tab;
}

}  // namespace

TEST(AdverseImpact, EqualSelectionRatios) {
  const auto r = adverse_impact_from_counts(10, 100, 10, 100);
  EXPECT_EQ(r.sr_a, 0.10);
  EXPECT_EQ(r.sr_b, 0.10);
  EXPECT_EQ(*r.ai_ratio, 1.0);
  EXPECT_FALSE(r.four_fifths_violation);
}

TEST(AdverseImpact, UnequalSelectionRatios) {
  const auto r = adverse_impact_from_counts(11, 100, 8, 100);
  EXPECT_NEAR(*r.ai_ratio, 0.08 / 0.11, 1e-12);
  EXPECT_NEAR(*r.ai_ratio, 0.727, 0.001);
  EXPECT_TRUE(r.four_fifths_violation);
}

TEST(AdverseImpact, ZeroAndEmptySelections) {
  const auto zero_b = adverse_impact_from_counts(10, 100, 0, 100, "A", "B");
  EXPECT_EQ(*zero_b.ai_ratio, 0.0);
  EXPECT_TRUE(zero_b.four_fifths_violation);
  EXPECT_EQ(zero_b.note, "zero selections in group B");

  const auto none = adverse_impact_from_counts(0, 100, 0, 100);
  EXPECT_FALSE(none.ai_ratio);
  EXPECT_FALSE(none.four_fifths_violation);
  EXPECT_EQ(none.note, "undefined: no selections");
  EXPECT_FALSE(adverse_impact_ratio(0, 0));
}

TEST(AdverseImpact, BoundaryIsExact) {
  // 8/100 vs 10/100 is exactly four fifths and complies; one selection fewer does not.
  EXPECT_FALSE(adverse_impact_from_counts(10, 100, 8, 100).four_fifths_violation);
  EXPECT_TRUE(adverse_impact_from_counts(10, 100, 7, 100).four_fifths_violation);
  EXPECT_FALSE(adverse_impact_from_counts(4, 30, 16, 150).four_fifths_violation);
  EXPECT_FALSE(violates_four_fifths(0.8));
  EXPECT_TRUE(violates_four_fifths(std::nextafter(0.8, 0.0)));
}

TEST(AdverseImpact, RangeSymmetryAndReplication) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t na = 1 + gen() % 200, nb = 1 + gen() % 200;
    const std::size_t sa = gen() % (na + 1), sb = gen() % (nb + 1);
    const auto r = adverse_impact_from_counts(sa, na, sb, nb);
    const auto s = adverse_impact_from_counts(sb, nb, sa, na);
    EXPECT_EQ(r.ai_ratio, s.ai_ratio);
    EXPECT_EQ(r.four_fifths_violation, s.four_fifths_violation);
    if (r.ai_ratio) {
      EXPECT_GE(*r.ai_ratio, 0.0);
      EXPECT_LE(*r.ai_ratio, 1.0);
      const std::size_t lo = std::min(sa * nb, sb * na), hi = std::max(sa * nb, sb * na);
      EXPECT_EQ(r.four_fifths_violation, 5 * lo < 4 * hi);
      if (5 * lo != 4 * hi) EXPECT_EQ(r.four_fifths_violation, *r.ai_ratio < 0.8);
    }
    const std::size_t m = 1 + gen() % 7;
    const auto rep = adverse_impact_from_counts(sa * m, na * m, sb * m, nb * m);
    EXPECT_EQ(rep.ai_ratio, r.ai_ratio);
    EXPECT_EQ(rep.four_fifths_violation, r.four_fifths_violation);
  }
}

TEST(AdverseImpact, FromTableTopK) {
  std::vector<std::string> g;
  std::vector<double> t, p;
  for (int i = 0; i < 20; ++i) {
    g.push_back(i < 10 ? "a" : "b");
    t.push_back(i % 10);
    p.push_back(i < 10 ? i : i - 10 - 0.5);
  }
  const auto tab = make_table(g, t, p);
  const auto part = partition(tab, "a", "b");
  const auto rule = DecisionSpec::top_k_rate(0.2);
  const auto truth = adverse_impact(tab, part, rule, ScoreColumn::Truth);
  EXPECT_EQ(truth.selected_a + truth.selected_b, 4u);
  EXPECT_EQ(*truth.ai_ratio, 1.0);
  const auto pred = adverse_impact(tab, part, rule, ScoreColumn::Pred);
  EXPECT_EQ(pred.selected_a, 2u);
  EXPECT_EQ(pred.selected_b, 2u);
  EXPECT_THROW(adverse_impact(tab, part, DecisionSpec::top_k_rate(0.01), ScoreColumn::Pred), Error);
}

TEST(AdverseImpact, ThresholdModeReplication) {
  std::mt19937_64 gen(62);
  std::normal_distribution<double> nd;
  std::vector<std::string> g;
  std::vector<double> t, p;
  for (int i = 0; i < 50; ++i) {
    g.push_back(i % 3 ? "a" : "b");
    t.push_back(nd(gen));
    p.push_back(nd(gen));
  }
  std::vector<std::string> g3;
  std::vector<double> t3, p3;
  for (int rep = 0; rep < 3; ++rep) {
    g3.insert(g3.end(), g.begin(), g.end());
    t3.insert(t3.end(), t.begin(), t.end());
    p3.insert(p3.end(), p.begin(), p.end());
  }
  const auto rule = DecisionSpec::threshold(0.3);
  const auto one = make_table(g, t, p);
  const auto three = make_table(g3, t3, p3);
  const auto r1 = adverse_impact(one, partition(one, "a", "b"), rule, ScoreColumn::Pred);
  const auto r3 = adverse_impact(three, partition(three, "a", "b"), rule, ScoreColumn::Pred);
  EXPECT_EQ(r1.sr_a, r3.sr_a);
  EXPECT_EQ(r1.sr_b, r3.sr_b);
  EXPECT_EQ(r1.ai_ratio, r3.ai_ratio);
}

TEST(AiSweep, FullSelectionAndIdenticalColumns) {
  std::vector<std::string> g;
  std::vector<double> t;
  for (int i = 0; i < 40; ++i) {
    g.push_back(i % 4 ? "a" : "b");
    t.push_back((i * 7) % 13);
  }
  const auto tab = make_table(g, t, t);
  const auto pts = ai_sweep(tab, partition(tab, "a", "b"), {0.1, 0.25, 0.5, 1.0});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(*pts[3].pred.ai_ratio, 1.0);
  EXPECT_EQ(*pts[3].truth.ai_ratio, 1.0);
  for (const auto& pt : pts) EXPECT_EQ(pt.pred, pt.truth);
  EXPECT_EQ(pts[0].k, 4u);
  EXPECT_THROW(ai_sweep(tab, partition(tab, "a", "b"), {0.0}), Error);
}

TEST(ConditionalParity, SingleStratumIsStatisticalParity) {
  std::vector<std::string> g;
  std::vector<double> t, p;
  std::vector<std::optional<double>> s;
  for (int i = 0; i < 30; ++i) {
    g.push_back(i % 2 ? "a" : "b");
    t.push_back(i);
    p.push_back((i * 11) % 30);
    s.push_back(1.0);
  }
  const auto tab = make_table(g, t, p, s);
  const auto part = partition(tab, "a", "b");
  const auto rule = DecisionSpec::top_k_rate(0.3);
  const auto cdp = conditional_demographic_parity(tab, part, rule, "f_stratum");
  const auto ai = adverse_impact(tab, part, rule, ScoreColumn::Pred);
  ASSERT_EQ(cdp.strata.size(), 1u);
  EXPECT_EQ(*cdp.max_gap, std::abs(ai.sr_a - ai.sr_b));
}

TEST(ConditionalParity, TallyAndStratumRule) {
  // Stratum 0: a selects 2/3, b 1/3. Stratum 1: a 0/2, b 0/2. Threshold 5.
  const auto tab = make_table({"a", "a", "a", "b", "b", "b", "a", "a", "b", "b", "b"},
                              {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {6, 7, 1, 9, 2, 3, 1, 2, 1, 2, 9},
                              {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, std::nullopt});
  const auto cdp =
      conditional_demographic_parity(tab, partition(tab, "a", "b"), DecisionSpec::threshold(5), "f_stratum");
  ASSERT_EQ(cdp.strata.size(), 2u);
  EXPECT_NEAR(cdp.strata[0].gap, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(cdp.strata[1].gap, 0.0);
  EXPECT_EQ(cdp.missing_rows, 1u);
  EXPECT_NEAR(*cdp.max_gap, 1.0 / 3.0, 1e-12);
  EXPECT_THROW(conditional_demographic_parity(tab, partition(tab, "a", "b"), DecisionSpec::threshold(5), "f_nope"),
               Error);
}

TEST(ConditionalParity, OneSidedStratumExcluded) {
  const auto tab = make_table({"a", "b", "a"}, {0, 0, 0}, {1, 2, 3}, {0.0, 0.0, 2.0});
  const auto cdp =
      conditional_demographic_parity(tab, partition(tab, "a", "b"), DecisionSpec::threshold(1.5), "f_stratum");
  EXPECT_EQ(cdp.strata.size(), 1u);
  EXPECT_EQ(cdp.excluded_strata.size(), 1u);
}

TEST(SingleThreshold, Cases) {
  const auto rule = DecisionSpec::top_k_rate(0.1);
  const auto none = single_threshold_check(rule, {});
  EXPECT_EQ(none.flag, Flag::Ok);

  const auto one = single_threshold_check(rule, {{"b", DecisionSpec::top_k_rate(0.2)}});
  EXPECT_NE(one.flag, Flag::Ok);
  EXPECT_NE(one.rationale.find("b"), std::string::npos);

  const auto same = single_threshold_check(rule, {{"b", DecisionSpec::top_k_rate(0.1)}});
  EXPECT_EQ(same.flag, Flag::Ok);
  EXPECT_NE(same.rationale.find("redundant overrides"), std::string::npos);
}
