#include <gtest/gtest.h>

#include "coarse/covers/shift_union.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/verify/verify.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

struct Case {
  std::string name;
  std::function<CoverScheme()> build;
  Window window;
};

void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

Window lattice_window(std::vector<Interval> box) {
  Window w;
  w.box = std::move(box);
  return w;
}

Window tower_window(Interval levels, Interval box, std::vector<Interval> extra = {}, Int max_support = 0) {
  Window w;
  w.levels = levels;
  w.box = {box};
  w.extra_box = std::move(extra);
  w.max_support = max_support;
  return w;
}

std::vector<Case> cases() {
  return {
      {"grid_plane", [] { return grid_cover(2, 3); }, lattice_window({{-7, 9}, {-4, 6}})},
      {"staircase", [] { return staircase_cover(1, 2, 2, {3, 4}); },
       lattice_window({{-8, 8}, {-8, 8}, {-70, 140}, {3, 4}})},
      {"mixed_1_1", [] { return mixed_grid_cover(1, 1, 3, 5); }, lattice_window({{-40, 40}, {-30, 30}})},
      {"mixed_2_1", [] { return mixed_grid_cover(2, 1, 4, 6); }, lattice_window({{-30, 30}, {-30, 30}, {-30, 30}})},
      {"mixed_1_2", [] { return mixed_grid_cover(1, 2, 3, 2); }, lattice_window({{-10, 12}, {-9, 9}, {-9, 9}})},
      {"singleton", [] { return singleton_cover(SpaceSpec::tower(StepRule::identity), 2); },
       tower_window({1, 5}, {-6, 6})},
      {"fiber_product", [] { return fiber_product_cover(grid_cover(1, 5), StepRule::identity, 1); },
       tower_window({1, 4}, {-4, 4}, {{-12, 12}})},
      {"omega", [] { return omega_cover(3, 5); }, tower_window({1, 5}, {-32, 32}, {{-8, 8}})},
      {"product_square", [] { return product_square_cover(1, 2); }, tower_window({1, 3}, {-8, 8})},
      {"shift_union_1_2", [] { return shift_union_cover(1, 2); }, tower_window({0, 3}, {-6, 6}, {}, 5)},
      {"shift_union_1_1", [] { return shift_union_cover(1, 1); }, tower_window({0, 4}, {-4, 4}, {}, 6)},
  };
}

class PathEquivalence : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST_P(PathEquivalence, StructuredMatchesPoints) {
  const Case& c = GetParam();
  const CoverScheme s = c.build();
  VerifyOptions opt;
  opt.samples = 2000;
  const VerificationReport a = verify_cover(s, c.window, opt, Method::points);
  const VerificationReport b = verify_cover(s, c.window, opt, Method::structured);
  EXPECT_EQ(a.method, "points");
  EXPECT_EQ(b.method, "structured");
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.uncovered_total, b.uncovered_total);
  ASSERT_EQ(a.colors.size(), b.colors.size());
  for (std::size_t i = 0; i < a.colors.size(); ++i) EXPECT_EQ(a.colors[i], b.colors[i]) << "color " << i;
  EXPECT_EQ(a.verdict, b.verdict);
  for (const ColorRecord& color : a.colors) {
    EXPECT_TRUE(color.separation_pass && color.bound_pass) << "color " << color.color;
  }
  EXPECT_GT(b.samples_checked, 0);
}

INSTANTIATE_TEST_SUITE_P(Constructions, PathEquivalence, ::testing::ValuesIn(cases()),
                         [](const auto& info) { return info.param.name; });

TEST(PointsPath, MatchesBruteForce) {
  struct Small {
    CoverScheme scheme;
    Window window;
    std::vector<Point> points;
  };
  std::vector<Small> smalls;
  smalls.push_back({grid_cover(1, 5), lattice_window({{-50, 50}}), {}});
  for (Int x = -50; x <= 50; ++x) smalls.back().points.push_back(LatticePoint{{x}});
  smalls.push_back({singleton_cover(SpaceSpec::tower(StepRule::identity), 1), tower_window({1, 3}, {-3, 3}),
                    oracle::tower_points(StepRule::identity, 1, 3, -3, 3)});
  smalls.push_back({shift_union_cover(1, 1), tower_window({0, 3}, {-4, 4}, {}, 4), oracle::shift_points(0, 3, 4, -4, 4)});
  smalls.push_back({omega_cover(3, 4), tower_window({1, 3}, {-8, 8}, {{-3, 3}}),
                    oracle::tower_points(StepRule::power_of_two, 1, 3, -8, 8, 1, -3, 3)});
  for (const Small& s : smalls) {
    const VerificationReport r = verify_cover(s.scheme, s.window, {}, Method::points);
    const oracle::CoverStats st = oracle::measure(s.scheme, s.points);
    EXPECT_EQ(r.points, static_cast<Int>(s.points.size())) << s.scheme.name;
    EXPECT_EQ(r.uncovered_total, static_cast<Int>(st.uncovered)) << s.scheme.name;
    for (const ColorRecord& c : r.colors) {
      auto it = st.colors.find(c.color);
      if (it == st.colors.end()) {
        EXPECT_EQ(c.cells_seen, 0) << s.scheme.name;
        continue;
      }
      EXPECT_EQ(c.cells_seen, static_cast<Int>(it->second.cells)) << s.scheme.name << " color " << c.color;
      EXPECT_EQ(c.max_diameter, it->second.max_diameter) << s.scheme.name << " color " << c.color;
      EXPECT_EQ(c.min_separation, it->second.min_separation) << s.scheme.name << " color " << c.color;
    }
  }
}

TEST(StructuredPath, RejectsInconsistentDecomposition) {
  CoverScheme s = grid_cover(1, 5);
  auto inner = s.classify;
  s.classify = [inner](const Point& p) -> std::optional<Classification> {
    auto c = inner(p);
    if (std::get<LatticePoint>(p).coords[0] == 3) c->cell.push_back(99);
    return c;
  };
  EXPECT_THROW(verify_cover(s, lattice_window({{-20, 20}}), {}, Method::structured), std::logic_error);
}

TEST(StructuredPath, HugeWindowUsesStructured) {
  const VerificationReport r = verify_cover(grid_cover(3, 4), lattice_window({{-100000, 100000}}));
  EXPECT_EQ(r.method, "structured");
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.colors[0].min_separation, 5);
}

TEST(StructuredPath, NoDecompositionAndHugeWindowThrows) {
  const CoverScheme s = fiber_intervals_cover(StepRule::identity, 3, 5);
  EXPECT_THROW(verify_cover(s, tower_window({3, 3}, {-3000, 3000}, {{-100, 100}})), std::invalid_argument);
  EXPECT_THROW(verify_cover(s, tower_window({3, 3}, {-3, 3}, {{-1, 1}}), {}, Method::structured),
               std::invalid_argument);
}
