#include <gtest/gtest.h>

#include "coarse/covers/lattice_covers.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/io/json.hpp"
#include "coarse/verify/verify.hpp"

using namespace coarse;

namespace {

Window line(Int lo, Int hi) {
  Window w;
  w.box = {Interval{lo, hi}};
  return w;
}

}  // namespace

TEST(VerifyCover, GridOnLine) {
  const VerificationReport r = verify_cover(grid_cover(1, 5), line(-50, 50));
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.uncovered_total, 0);
  for (const ColorRecord& c : r.colors) {
    EXPECT_EQ(c.max_diameter, 4);
    EXPECT_GE(*c.min_separation, 5);
  }
}

TEST(VerifyCover, StaircaseSlice) {
  Window w;
  w.box = {{-64, 64}, {-64, 64}, {-20, 150}, {3, 3}};
  const VerificationReport r = verify_cover(staircase_cover(1, 2, 2, {3, 3}), w);
  EXPECT_EQ(r.uncovered_total, 0);
  EXPECT_GE(*r.colors[kStaircaseJ].min_separation, 1);
  EXPECT_GE(*r.colors[kStaircaseI].min_separation, 2);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyCover, EmptyWindowPassesWithEmptyColor) {
  Window w;
  w.levels = {3, 3};
  w.box = {Interval{1, 7}};
  const VerificationReport r = verify_cover(singleton_cover(SpaceSpec::tower(StepRule::power_of_two), 1), w);
  EXPECT_EQ(r.points, 0);
  EXPECT_EQ(r.verdict, Verdict::pass_with_empty_color);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyCover, UncoveredPointsAreListedNotThrown) {
  Window w;
  w.levels = {1, 3};
  w.box = {Interval{-3, 3}};
  VerifyOptions opt;
  opt.max_uncovered_listed = 4;
  const VerificationReport r = verify_cover(singleton_cover(SpaceSpec::tower(StepRule::identity), 2), w, opt);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_EQ(r.uncovered_total, 7 + 9);
  EXPECT_EQ(r.uncovered.size(), 4U);
}

TEST(VerifyCover, WrongDeclarationFails) {
  CoverScheme s = grid_cover(1, 5);
  s.separation[0] = 7;
  const VerificationReport r = verify_cover(s, line(-30, 30));
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_FALSE(r.colors[0].separation_pass);
  EXPECT_TRUE(r.colors[1].separation_pass);
  s = grid_cover(1, 5);
  s.bound[1] = 3;
  EXPECT_FALSE(verify_cover(s, line(-30, 30)).colors[1].bound_pass);
}

TEST(VerifyCover, DomainErrorsBecomeReportEntries) {
  CoverScheme s = grid_cover(1, 5);
  auto inner = s.classify;
  s.classify = [inner](const Point& p) -> std::optional<Classification> {
    if (std::get<LatticePoint>(p).coords[0] == 0) throw DomainError("outside the map's domain");
    return inner(p);
  };
  const VerificationReport r = verify_cover(s, line(-5, 5), {}, Method::points);
  EXPECT_EQ(r.errors.size(), 1U);
  EXPECT_EQ(r.verdict, Verdict::fail);
}

TEST(VerifyCover, MonotoneInWindow) {
  const CoverScheme s = mixed_grid_cover(1, 1, 3, 5);
  std::optional<VerificationReport> previous;
  for (Int half : {6, 12, 24, 48}) {
    Window w;
    w.box = {Interval{-half, half}};
    const VerificationReport r = verify_cover(s, w, {}, Method::points);
    if (previous) {
      for (std::size_t c = 0; c < r.colors.size(); ++c) {
        EXPECT_GE(r.colors[c].max_diameter, previous->colors[c].max_diameter);
        if (previous->colors[c].min_separation) {
          ASSERT_TRUE(r.colors[c].min_separation);
          EXPECT_LE(*r.colors[c].min_separation, *previous->colors[c].min_separation);
        }
      }
    }
    previous = r;
  }
}

TEST(VerifyCover, WorkersDoNotChangeTheReport) {
  Window w;
  w.box = {Interval{-30, 30}};
  VerifyOptions one, four;
  four.workers = 4;
  const CoverScheme s = mixed_grid_cover(2, 1, 4, 6);
  for (Method m : {Method::points, Method::structured}) {
    const auto a = verify_cover(s, w, one, m);
    const auto b = verify_cover(s, w, four, m);
    EXPECT_EQ(a.colors, b.colors);
    EXPECT_EQ(io::to_json(a), io::to_json(b));
  }
}

TEST(VerifyCover, MethodNames) {
  EXPECT_EQ(parse_method("auto"), Method::automatic);
  EXPECT_EQ(parse_method("points"), Method::points);
  EXPECT_EQ(parse_method("structured"), Method::structured);
  EXPECT_THROW(parse_method("fast"), std::invalid_argument);
}

TEST(Report, CsvHasOneRowPerColor) {
  const VerificationReport r = verify_cover(grid_cover(2, 3), line(-9, 9));
  const std::string csv = io::colors_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.rfind("color,", 0), 0U);
}

TEST(Report, JsonFields) {
  const auto j = io::to_json(verify_cover(grid_cover(1, 5), line(0, 9)));
  for (const char* key : {"scheme", "method", "window", "points", "colors", "uncovered_total", "verdict"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("verdict"), "pass");
}
