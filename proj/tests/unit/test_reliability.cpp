#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fairscope/data.hpp"
#include "fairscope/error.hpp"
#include "fairscope/reliability.hpp"
#include "oracles.hpp"

using namespace fairscope;

namespace {

GroupPartition split(std::size_t n_a, std::size_t n_b) {
  GroupPartition p;
  p.group_a_label = "a";
  p.group_b_label = "b";
  for (std::size_t i = 0; i < n_a; ++i) p.idx_a.push_back(i);
  for (std::size_t i = 0; i < n_b; ++i) p.idx_b.push_back(n_a + i);
  return p;
}

ErrorKind icc_error(const std::vector<std::vector<double>>& rows) {
  try {
    icc_1k(AnnotationMatrix::from_rows(rows));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidReport;
}

}  // namespace

TEST(Icc1k, Examples) {
  EXPECT_EQ(icc_1k(AnnotationMatrix::from_rows({{1, 1}, {3, 3}})), 1.0);
  EXPECT_EQ(icc_1k(AnnotationMatrix::from_rows({{1, 2}, {3, 4}})), 0.875);
  EXPECT_EQ(icc_error({{2, 2}, {2, 2}}), ErrorKind::NoBetweenTargetVariance);
}

TEST(Icc1k, Preconditions) {
  EXPECT_EQ(icc_error({{1, 2}}), ErrorKind::DegenerateInput);
  EXPECT_EQ(icc_error({{1}, {2}}), ErrorKind::DegenerateInput);
  AnnotationMatrix gappy({"t1", "t2"}, {"r1", "r2"}, {1.0, std::nullopt, 2.0, 3.0});
  try {
    icc_1k(gappy);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompleteMatrix);
  }
}

TEST(Icc1k, MatchesAnovaOracle) {
  std::mt19937_64 gen(41);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 30, k = 2 + gen() % 6;
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    for (auto& row : rows) {
      const double target = nd(gen) * 2;
      for (auto& x : row) x = 4 + target + nd(gen);
    }
    EXPECT_NEAR(icc_1k(AnnotationMatrix::from_rows(rows)), oracle::icc_1k(rows), 1e-10);
  }
}

TEST(Icc1k, AffineAndPermutationInvariance) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + gen() % 20, k = 2 + gen() % 4;
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    for (auto& row : rows) {
      const double target = nd(gen);
      for (auto& x : row) x = target + 0.7 * nd(gen);
    }
    const double base = icc_1k(AnnotationMatrix::from_rows(rows));
    auto affine = rows;
    for (auto& row : affine)
      for (auto& x : row) x = 2.5 * x + 10;
    EXPECT_NEAR(icc_1k(AnnotationMatrix::from_rows(affine)), base, 1e-10);
    auto permuted = rows;
    std::shuffle(permuted.begin(), permuted.end(), gen);
    for (auto& row : permuted) std::reverse(row.begin(), row.end());
    EXPECT_NEAR(icc_1k(AnnotationMatrix::from_rows(permuted)), base, 1e-10);
  }
}

TEST(Icc1k, ListwiseDeletionReportsDropped) {
  AnnotationMatrix m({"t1", "t2", "t3", "t4"}, {"r1", "r2"},
                     {1.0, 2.0, 3.0, 4.0, 5.0, std::nullopt, 6.0, 6.5});
  const auto r = icc_1k_listwise(m);
  EXPECT_EQ(r.dropped, 1u);
  EXPECT_EQ(r.n_targets, 3u);
  EXPECT_NEAR(r.icc, oracle::icc_1k({{1, 2}, {3, 4}, {6, 6.5}}), 1e-12);
}

TEST(AnnotationMatrix, FromTableDropsEmptyRatersAndSparseTargets) {
  const auto tab = load_audit_table(
      "subject_id,group,y_true,y_pred,rater_1,rater_2,rater_3\n"
      "s1,a,3,3,3,4,\n"
      "s2,a,4,4,4,,\n"
      "s3,b,5,5,5,6,\n",
      ColumnSchema{}, ScoreScale{});
  const auto m = annotation_matrix(tab);
  EXPECT_EQ(m.rater_ids(), (std::vector<std::string>{"rater_1", "rater_2"}));
  EXPECT_EQ(m.target_ids(), (std::vector<std::string>{"s1", "s3"}));
  EXPECT_EQ(m.source_rows(), (std::vector<std::size_t>{0, 2}));
}

TEST(ItemRestDif, IdenticalRaters) {
  std::vector<std::vector<double>> rows = {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {2, 2}, {7, 7}};
  const auto recs = item_total_dif(AnnotationMatrix::from_rows(rows), split(4, 4), 0.1);
  ASSERT_EQ(recs.size(), 2u);
  for (const auto& r : recs) {
    EXPECT_DOUBLE_EQ(r.r_a, 1.0);
    EXPECT_DOUBLE_EQ(r.r_b, 1.0);
    EXPECT_FALSE(r.flagged);
  }
}

TEST(ItemRestDif, ReversedRaterInOneGroup) {
  // Raters 1-3 agree everywhere; rater 4 follows them in A and reverses them
  // in B.
  std::vector<std::vector<double>> rows = {{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}, {4, 4, 4, 4},
                                           {1, 1, 1, 4}, {2, 2, 2, 3}, {3, 3, 3, 2}, {4, 4, 4, 1}};
  const auto recs = item_total_dif(AnnotationMatrix::from_rows(rows), split(4, 4), 0.1);
  const auto& r3 = recs[3];
  EXPECT_DOUBLE_EQ(r3.r_a, 1.0);
  EXPECT_DOUBLE_EQ(r3.r_b, -1.0);
  EXPECT_DOUBLE_EQ(r3.diff, 2.0);
  EXPECT_TRUE(r3.flagged);
}

TEST(ItemRestDif, MatchesBruteForceOracle) {
  std::mt19937_64 gen(43);
  std::uniform_int_distribution<int> likert(1, 7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<double>> rows(10, std::vector<double>(4));
    for (auto& row : rows)
      for (auto& x : row) x = likert(gen);
    const auto m = AnnotationMatrix::from_rows(rows);
    std::vector<ItemRestRecord> recs;
    try {
      recs = item_total_dif(m, split(5, 5), 0.1);
    } catch (const Error&) {
      continue;  // a constant item or rest column in some group
    }
    for (std::size_t j = 0; j < 4; ++j) {
      double r[2];
      for (int g = 0; g < 2; ++g) {
        std::vector<double> item, rest;
        for (int i = 5 * g; i < 5 * g + 5; ++i) {
          item.push_back(rows[i][j]);
          double s = 0;
          for (std::size_t o = 0; o < 4; ++o)
            if (o != j) s += rows[i][o];
          rest.push_back(s / 3.0);
        }
        r[g] = oracle::spearman(item, rest);
      }
      EXPECT_NEAR(recs[j].r_a, r[0], 1e-12);
      EXPECT_NEAR(recs[j].r_b, r[1], 1e-12);
    }
  }
}

TEST(ItemRestDif, GroupSwapNegatesDiff) {
  std::mt19937_64 gen(44);
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> rows(40, std::vector<double>(3));
  for (auto& row : rows) {
    const double t = nd(gen);
    for (auto& x : row) x = t + nd(gen);
  }
  const auto m = AnnotationMatrix::from_rows(rows);
  const auto p = split(20, 20);
  GroupPartition q = p;
  std::swap(q.idx_a, q.idx_b);
  std::swap(q.group_a_label, q.group_b_label);
  const auto ab = item_total_dif(m, p, 0.1);
  const auto ba = item_total_dif(m, q, 0.1);
  for (std::size_t j = 0; j < ab.size(); ++j) {
    EXPECT_EQ(ab[j].diff, -ba[j].diff);
    EXPECT_EQ(ab[j].flagged, ba[j].flagged);
  }
}
