#include <gtest/gtest.h>

#include "coarse/verify/oracle1d.hpp"
#include "coarse/verify/verify.hpp"

using namespace coarse;

namespace {

/// Points closer than n share a cell, so a coloring works exactly when every
/// such forced group within a color has diameter <= R.
bool coloring_works(const std::vector<int>& color, Int lo, Int n, Int R) {
  std::vector<std::vector<Int>> by_color(2);
  for (std::size_t i = 0; i < color.size(); ++i) by_color[color[i]].push_back(lo + static_cast<Int>(i));
  for (const auto& pts : by_color) {
    std::size_t start = 0;
    for (std::size_t i = 1; i <= pts.size(); ++i) {
      if (i == pts.size() || pts[i] - pts[i - 1] >= n) {
        if (i > start && pts[i - 1] - pts[start] > R) return false;
        start = i;
      }
    }
  }
  return true;
}

bool brute_feasible(Int n, Int R, std::size_t colors, Interval window) {
  const auto length = static_cast<std::size_t>(window.hi - window.lo + 1);
  const std::size_t total = colors == 1 ? 1 : std::size_t{1} << length;
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<int> color(length);
    for (std::size_t i = 0; i < length; ++i) color[i] = colors == 1 ? 0 : static_cast<int>((mask >> i) & 1U);
    if (coloring_works(color, window.lo, n, R)) return true;
  }
  return false;
}

void expect_reverifies(const OracleResult& r, std::size_t colors, Int n, Int R, Interval window) {
  ASSERT_EQ(r.assignment.size(), static_cast<std::size_t>(window.hi - window.lo + 1));
  Window w;
  w.box = {window};
  const VerificationReport v = verify_cover(assignment_scheme(r.assignment, colors, n, R), w);
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.uncovered_total, 0);
}

}  // namespace

TEST(Oracle, SpecExamples) {
  const OracleResult wide = oracle_1d_nocover(3, 5, 1, {-5, 5}, 1'000'000);
  EXPECT_EQ(wide.outcome, OracleOutcome::infeasible);
  EXPECT_TRUE(wide.assignment.empty());
  const OracleResult narrow = oracle_1d_nocover(3, 5, 1, {-2, 2}, 1'000'000);
  ASSERT_EQ(narrow.outcome, OracleOutcome::feasible);
  expect_reverifies(narrow, 1, 3, 5, {-2, 2});
  const OracleResult two = oracle_1d_nocover(3, 30, 2, {-30, 30}, 5'000'000);
  ASSERT_EQ(two.outcome, OracleOutcome::feasible);
  expect_reverifies(two, 2, 3, 30, {-30, 30});
}

TEST(Oracle, MatchesBruteForce) {
  for (Int n = 1; n <= 4; ++n) {
    for (Int R = 0; R <= 6; ++R) {
      for (std::size_t colors : {1U, 2U}) {
        for (Int half = 0; half <= 6; ++half) {
          const Interval window{-half, half + (R % 2)};
          const OracleResult r = oracle_1d_nocover(n, R, colors, window, 10'000'000);
          ASSERT_NE(r.outcome, OracleOutcome::inconclusive);
          const bool want = brute_feasible(n, R, colors, window);
          ASSERT_EQ(r.outcome == OracleOutcome::feasible, want)
              << "n=" << n << " R=" << R << " colors=" << colors << " window=[" << window.lo << "," << window.hi << "]";
          if (want) expect_reverifies(r, colors, n, R, window);
        }
      }
    }
  }
}

TEST(Oracle, BudgetExhaustionIsInconclusive) {
  const OracleResult r = oracle_1d_nocover(5, 9, 2, {-200, 200}, 3);
  EXPECT_EQ(r.outcome, OracleOutcome::inconclusive);
  EXPECT_GT(r.nodes, 0);
}

TEST(Oracle, RejectsBadParameters) {
  EXPECT_THROW(oracle_1d_nocover(0, 5, 1, {0, 3}, 10), std::invalid_argument);
  EXPECT_THROW(oracle_1d_nocover(3, 5, 3, {0, 3}, 10), std::invalid_argument);
  EXPECT_STREQ(outcome_name(OracleOutcome::infeasible), "infeasible");
}

TEST(Oracle, LargeWindowsTwoColors) {
  // Alternating blocks of R + 1 points leave same-color blocks R + 2 apart.
  const OracleResult r = oracle_1d_nocover(4, 4, 2, {-40, 40}, 5'000'000);
  ASSERT_EQ(r.outcome, OracleOutcome::feasible);
  expect_reverifies(r, 2, 4, 4, {-40, 40});
  const OracleResult tight = oracle_1d_nocover(4, 2, 2, {-40, 40}, 5'000'000);
  ASSERT_EQ(tight.outcome, OracleOutcome::feasible);
  expect_reverifies(tight, 2, 4, 2, {-40, 40});
}
