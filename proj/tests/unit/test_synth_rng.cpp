#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fairscope/effect_size.hpp"
#include "fairscope/error.hpp"
#include "fairscope/rank_stats.hpp"
#include "fairscope/rng.hpp"
#include "fairscope/synth.hpp"
#include "oracles.hpp"

using namespace fairscope;

TEST(CounterRng, ReferenceVector) {
  CounterRng rng(1234567);
  const std::uint64_t expect[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL,
                                  4593380528125082431ULL, 16408922859458223821ULL};
  for (auto e : expect) EXPECT_EQ(rng.next(), e);
  EXPECT_EQ(CounterRng(0).at(0), 0xe220a8397b1dcdafULL);
}

TEST(CounterRng, MatchesSequentialSplitMix) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    std::uint64_t state = seed;
    CounterRng rng(seed);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(rng.next(), oracle::splitmix64(state));
    EXPECT_EQ(rng.at(500), CounterRng(seed).at(500));
  }
}

TEST(CounterRng, UniformAndNormalRanges) {
  CounterRng rng(9);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

namespace {

std::string csv_of(const SynthSpec& spec) {
  std::ostringstream out;
  write_audit_csv(out, generate(spec));
  return out.str();
}

}  // namespace

TEST(Synth, Deterministic) {
  SynthSpec s;
  s.n_a = s.n_b = 200;
  EXPECT_EQ(csv_of(s), csv_of(s));
  SynthSpec t = s;
  t.seed = 2;
  EXPECT_NE(csv_of(s), csv_of(t));
}

TEST(Synth, ReloadsExactly) {
  SynthSpec s;
  s.n_a = 150;
  s.n_b = 90;
  s.n_strata = 4;
  const auto tab = generate(s);
  std::ostringstream out;
  write_audit_csv(out, tab);
  auto back = load_audit_table(out.str(), ColumnSchema{}, s.scale, s.construct);
  EXPECT_EQ(back.records, tab.records);
  EXPECT_EQ(back.rater_ids, tab.rater_ids);
  EXPECT_EQ(back.feature_names, tab.feature_names);
}

TEST(Synth, ValidatesSpec) {
  SynthSpec s;
  s.noise_sd = 0;
  EXPECT_THROW(generate(s), Error);
  s = SynthSpec{};
  s.deficiency_attenuation_b = 1.5;
  EXPECT_THROW(s.validate(), Error);
  EXPECT_THROW(parse_synth_spec("bogus = 1"), Error);
  EXPECT_EQ(parse_synth_spec("seed = 18446744073709551615\nn_per_group = 5").seed, 18446744073709551615ULL);
}

TEST(Synth, ContaminationShiftsPredictedEffectSize) {
  SynthSpec s;
  s.seed = 5;
  s.contamination_shift_b = -0.5;
  const auto tab = generate(s);
  const auto es = effect_size_difference(tab, partition(tab, "a", "b"));
  // Prediction SD on the latent scale is sqrt(1 + pred_noise_sd^2).
  const double expected = 0.5 / std::sqrt(1.0 + 0.25);
  EXPECT_NEAR(es.d_pred - es.d_true, expected, 0.1);
}

TEST(Synth, DeficiencyLowersCorrelationInB) {
  SynthSpec s;
  s.seed = 6;
  s.deficiency_attenuation_b = 0.5;
  const auto tab = generate(s);
  const auto rep = correlational_accuracy(tab, partition(tab, "a", "b"));
  EXPECT_GT(rep.rho_a, rep.rho_b);
}

TEST(Synth, LeakyFeatureSeparates) {
  SynthSpec s;
  s.leaky_feature_weight = 2.0;
  const auto tab = generate(s);
  EXPECT_EQ(tab.feature_names[0], "f_1");
  double mean_a = 0, mean_b = 0;
  for (const auto& r : tab.records) (r.group == "a" ? mean_a : mean_b) += *r.features[0];
  EXPECT_GT(mean_b / s.n_b - mean_a / s.n_a, 1.5);
}

TEST(Fnv1a, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}
