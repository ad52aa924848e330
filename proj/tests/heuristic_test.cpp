#include <cmath>

#include <gtest/gtest.h>

#include "alignkit/error.hpp"
#include "alignkit/heuristic.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace alignkit;

using test::covariance_oracle;
using test::mean_vector;

TEST(Heuristic, Alignment17Components) {
  auto a = test::alignment_17();
  EXPECT_EQ(min_columns(a), 4u);
  EXPECT_EQ(score_columns(a), 1.25);
  EXPECT_EQ(score_filled(a), 1.0);
  const std::vector<double> expected{2.0 / 3.0, 1.0, 2.0 / 3.0, 0.0, 2.0 / 3.0};
  for (std::size_t c = 0; c < a.cols(); ++c) EXPECT_EQ(column_relevance(a, c), expected[c]) << c;
  auto oov = parse_vector_text("unused 1 0\n");
  auto s = total_score(a, *oov);
  EXPECT_EQ(s.s_embed, 0.0);
  EXPECT_DOUBLE_EQ(s.total, 4.55);
}

TEST(Heuristic, SparseAlignment15) {
  auto a = test::alignment_15();
  EXPECT_EQ(score_columns(a), 1.75);
  EXPECT_EQ(score_filled(a), 1.75);
  EXPECT_EQ(score_embed(a, *deterministic_test_provider(1)), 0.0);
}

TEST(Heuristic, OneByOneDefaults) {
  auto p = deterministic_test_provider(1);
  EXPECT_EQ(total_score(test::table({{"a"}}), *p).total, 4.6);
}

TEST(Heuristic, CombineFormula) {
  Weights w{0.5, 0.25, 2.0, 3.0};
  EXPECT_EQ(combine(2.0, 1.0, 0.5, w), -0.5 * 2.0 - 0.25 * 1.0 - 2.0 * 0.25 + 3.0);
  EXPECT_NO_THROW((Weights{-1, 0, 0, 0}.validate()));
  EXPECT_THROW((Weights{std::nan(""), 0, 0, 0}.validate()), Error);
}

TEST(Heuristic, CoherentBeatsIncoherentWithFixture) {
  auto p = test::diabetics_vectors();
  EXPECT_GT(total_score(test::alignment_2(), *p).total, total_score(test::alignment_3(), *p).total);
}

TEST(Heuristic, CovarianceMatchesOracle) {
  test::Gen gen(41);
  auto p = deterministic_test_provider(6, 8);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = gen.size(2, 6);
    test::Rows rows;
    std::vector<std::vector<double>> xs;
    for (std::size_t r = 0; r < n; ++r) {
      rows.push_back({gen.text(3)});
      xs.push_back(mean_vector(rows.back()[0], *p));
    }
    auto a = test::table(rows);
    ASSERT_NEAR(column_variance(a, 0, *p), covariance_oracle(xs), 1e-9);
  }
}

TEST(Heuristic, EmbedScoreNonNegativeAndTotalConsistent) {
  test::Gen gen(42);
  auto p = deterministic_test_provider(3);
  Weights w;
  for (int i = 0; i < 1000; ++i) {
    auto a = gen.alignment(8, 12);
    auto s = total_score(a, *p, w);
    ASSERT_GE(s.s_embed, 0.0);
    ASSERT_GE(s.s_col, 1.0);
    ASSERT_LE(s.s_fcol, s.s_col);
    ASSERT_EQ(s.total, combine(s.s_col, s.s_fcol, s.s_embed, w));
    ASSERT_EQ(s.s_embed, score_embed(a, *p));
  }
}
