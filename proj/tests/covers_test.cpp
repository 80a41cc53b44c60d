#include <gtest/gtest.h>

#include "coarse/covers/combinators.hpp"
#include "coarse/covers/lattice_covers.hpp"
#include "coarse/covers/shift_union.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/partition.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

std::vector<Point> line(Int lo, Int hi) {
  std::vector<Point> out;
  for (Int x = lo; x <= hi; ++x) out.push_back(LatticePoint{{x}});
  return out;
}

std::vector<Point> lattice_box(const std::vector<Int>& steps, Int lo, Int hi) {
  std::vector<Point> out;
  auto vs = oracle::vectors(steps.size(), lo, hi, [&](std::size_t i, Int x) { return x % steps[i] == 0; });
  for (auto& v : vs) out.push_back(LatticePoint{std::move(v)});
  return out;
}

/// Every measured color respects the declared separation and bound, and nothing is uncovered.
void expect_declared(const CoverScheme& s, const std::vector<Point>& points) {
  const oracle::CoverStats st = oracle::measure(s, points);
  EXPECT_EQ(st.uncovered, 0U) << s.name;
  for (const auto& [color, c] : st.colors) {
    EXPECT_LE(c.max_diameter, s.bound[color]) << s.name << " color " << color;
    if (c.min_separation) {
      EXPECT_GE(*c.min_separation, s.separation[color]) << s.name << " color " << color;
    }
  }
}

std::optional<Classification> at(const CoverScheme& s, Point p) { return classify_point(s, p); }

}  // namespace

TEST(GridCover, Examples) {
  const CoverScheme g = grid_cover(1, 5);
  EXPECT_EQ(at(g, LatticePoint{{7}}), (Classification{0, {1}}));
  EXPECT_EQ(at(g, LatticePoint{{0}}), (Classification{1, {0}}));
  EXPECT_EQ(g.colors, 2U);
}

TEST(GridCover, MaterializedOnSmallWindow) {
  Window w;
  w.box = {Interval{0, 9}};
  const Materialized m = materialize(grid_cover(1, 5), w);
  EXPECT_TRUE(m.uncovered.empty());
  EXPECT_EQ(m.by_color[1].cells.at({0}), line(0, 4));
  EXPECT_EQ(m.by_color[0].cells.at({1}), line(5, 9));
  EXPECT_EQ(m.by_color[1].cells.size() + m.by_color[0].cells.size(), 2U);
}

TEST(GridCover, BruteForceOnLine) {
  const auto st = oracle::measure(grid_cover(1, 5), line(-50, 50));
  EXPECT_EQ(st.uncovered, 0U);
  for (const auto& [color, c] : st.colors) {
    EXPECT_EQ(c.max_diameter, 4);
    EXPECT_GE(*c.min_separation, 5);
  }
}

TEST(GridCover, PlaneDeclared) { expect_declared(grid_cover(2, 3), lattice_box({1, 1}, -12, 12)); }

TEST(Staircase, PhaseExample) {
  const StaircaseShape sh(1, 2, 2, {3, 3});
  EXPECT_EQ(sh.phase({2, 4}), 2);
  EXPECT_EQ(sh.total, 20);
  EXPECT_EQ(sh.anchor(1, 2), 66);
}

TEST(Staircase, PhaseRange) {
  const StaircaseShape sh(1, 2, 2, {3, 3});
  for (Int a = -16; a <= 16; a += 2) {
    for (Int b = -16; b <= 16; b += 2) {
      const Int p = sh.phase({a, b});
      ASSERT_GE(p, 0);
      ASSERT_LE(p, sh.total - 1);
    }
  }
}

TEST(Staircase, IntervalsAroundFirstAnchor) {
  const CoverScheme s = staircase_cover(1, 2, 2, {3, 3});
  auto cls = [&](Int t) { return *at(s, LatticePoint{{2, 4, t, 3}}); };
  for (Int t : {65, 66}) EXPECT_EQ(cls(t), (Classification{kStaircaseI, {2, 4, 1}})) << t;
  for (Int t = 67; t <= 124; ++t) EXPECT_EQ(cls(t), (Classification{kStaircaseJ, {2, 4, 1}})) << t;
  EXPECT_EQ(cls(125).color, kStaircaseI);
  EXPECT_FALSE(at(s, LatticePoint{{2, 4, 70, 4}}));
  EXPECT_THROW(staircase_cover(2, 2, 2, {0, 0}), std::invalid_argument);
}

TEST(Staircase, BruteForceSeparation) {
  const CoverScheme s = staircase_cover(1, 2, 1, {0, 1});
  std::vector<Point> pts;
  for (Int x = -8; x <= 8; x += 2) {
    for (Int t = -5; t <= 90; ++t) {
      for (Int h = 0; h <= 1; ++h) pts.push_back(LatticePoint{{x, t, h}});
    }
  }
  const auto st = oracle::measure(s, pts);
  EXPECT_EQ(st.uncovered, 0U);
  EXPECT_GE(*st.colors.at(kStaircaseJ).min_separation, 1);
  EXPECT_GE(*st.colors.at(kStaircaseI).min_separation, 2);
  expect_declared(s, pts);
}

TEST(SingletonCover, Examples) {
  const CoverScheme s = singleton_cover(SpaceSpec::tower(StepRule::identity), 3);
  EXPECT_TRUE(at(s, TowerPoint{5, {0, 5, 10, 0, 0}, {}}));
  EXPECT_EQ(at(s, TowerPoint{5, {0, 5, 10, 0, 0}, {}})->color, 0U);
  EXPECT_FALSE(at(s, TowerPoint{3, {0, 3, 6}, {}}));
  EXPECT_FALSE(at(s, TowerPoint{2, {0, 2}, {}}));
  EXPECT_THROW(singleton_cover(SpaceSpec::tower_with_factor(StepRule::identity, 1), 3), std::invalid_argument);
}

TEST(SingletonCover, BruteForce) {
  const CoverScheme s = singleton_cover(SpaceSpec::tower(StepRule::identity), 3);
  const auto level4 = oracle::tower_points(StepRule::identity, 4, 4, -4, 4);
  const auto st = oracle::measure(s, level4);
  EXPECT_EQ(st.colors.at(0).cells, level4.size());
  EXPECT_EQ(*st.colors.at(0).min_separation, 4);
  EXPECT_EQ(st.colors.at(0).max_diameter, 0);
  EXPECT_GE(oracle::distance(TowerPoint{4, {0, 0, 0, 0}, {}}, TowerPoint{6, {0, 0, 0, 0, 0, 0}, {}}), 9);
}

TEST(FiberProduct, Examples) {
  const CoverScheme s = fiber_product_cover(grid_cover(1, 5), StepRule::identity, 3);
  const TowerPoint x{4, {4, 0, -8, 12}, {7}};
  const auto c = at(s, x);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->color, 0U);
  EXPECT_EQ(c->cell, (CellKey{4, 4, 0, -8, 12, 1}));
  EXPECT_FALSE(at(s, TowerPoint{3, {0, 0, 0}, {7}}));
}

TEST(FiberProduct, CellsShareTowerPart) {
  const CoverScheme s = fiber_product_cover(grid_cover(1, 3), StepRule::identity, 1);
  const auto pts = oracle::tower_points(StepRule::identity, 2, 3, -3, 3, 1, -8, 8);
  std::map<std::pair<std::size_t, CellKey>, std::vector<TowerPoint>> cells;
  for (const Point& p : pts) {
    auto c = s.classify(p);
    ASSERT_TRUE(c);
    cells[{c->color, c->cell}].push_back(std::get<TowerPoint>(p));
  }
  for (const auto& [key, members] : cells) {
    for (const TowerPoint& t : members) {
      EXPECT_EQ(t.level, members.front().level);
      EXPECT_EQ(t.coords, members.front().coords);
    }
  }
  expect_declared(s, pts);
}

TEST(FiberIntervals, ThreeDisjointFiveBounded) {
  const CoverScheme s = fiber_intervals_cover(StepRule::identity, 3, 5);
  const auto pts = oracle::tower_points(StepRule::identity, 3, 4, -4, 4, 1, -20, 20);
  const auto st = oracle::measure(s, pts);
  EXPECT_GE(*st.colors.at(0).min_separation, 3);
  EXPECT_LE(st.colors.at(0).max_diameter, 5);
  EXPECT_GT(st.uncovered, 0U);
  EXPECT_FALSE(s.classify(TowerPoint{2, {0, 0}, {0}}));
}

TEST(OmegaCover, ColorCountAndDeclared) {
  const CoverScheme s = omega_cover(3, 5);
  EXPECT_EQ(s.colors, 20U);
  EXPECT_EQ(omega_cover(3, 7).colors, 20U);
  EXPECT_THROW(omega_cover(3, 3), std::invalid_argument);
  EXPECT_THROW(omega_cover(2, 5), std::invalid_argument);
  std::size_t n_disjoint = 0;
  for (Int sep : s.separation) n_disjoint += sep == 3 ? 1 : 0;
  EXPECT_EQ(n_disjoint, 1U);
  expect_declared(s, oracle::tower_points(StepRule::power_of_two, 1, 3, -8, 8, 1, -3, 3));
  expect_declared(s, oracle::tower_points(StepRule::power_of_two, 4, 4, -16, 16, 1, -12, 12));
}

TEST(OmegaCover, HighLevelIntervalsTile) {
  const CoverScheme s = omega_cover(3, 5);
  const auto pts = oracle::tower_points(StepRule::power_of_two, 5, 6, -64, 64, 1, -30, 30);
  std::vector<Point> fiber;
  for (const Point& p : pts) {
    const auto& t = std::get<TowerPoint>(p);
    if (std::all_of(t.coords.begin(), t.coords.end(), [](Int c) { return c == 0; })) fiber.push_back(p);
  }
  expect_declared(s, fiber);
}

TEST(MixedGrid, IntervalExamples) {
  const StripedGrid g = mixed_grid_shape(1, 1, 3, 5);
  EXPECT_EQ(g.period, 16);
  auto key_at = [&](Int x) { return g.classify({x, 6}); };
  for (Int x = 3; x < 16; ++x) {
    EXPECT_EQ(key_at(x).type, 0U);
    EXPECT_EQ(key_at(x).key, (CellKey{1, 1, 1})) << x;
  }
  for (Int x = 16; x < 19; ++x) {
    EXPECT_NE(key_at(x).type, 0U);
    EXPECT_EQ(key_at(x).key.at(1), 1) << x;
  }
  EXPECT_EQ(key_at(19).type, 0U);
}

TEST(MixedGrid, DCellsOfOnePatternAreFarApart) {
  const StripedGrid g = mixed_grid_shape(1, 1, 3, 5);
  std::map<Int, std::vector<Point>> d_cells;
  for (Int x = -100; x <= 100; ++x) {
    const auto h = g.classify({x, 6});
    if (h.type != 0) d_cells[h.key.at(1)].push_back(LatticePoint{{x}});
  }
  Int best = kInfinity;
  for (auto i = d_cells.begin(); i != d_cells.end(); ++i) {
    EXPECT_EQ(i->second.size(), 3U);
    for (auto j = std::next(i); j != d_cells.end(); ++j) {
      for (const Point& a : i->second) {
        for (const Point& b : j->second) best = std::min(best, oracle::distance(a, b));
      }
    }
  }
  EXPECT_GE(best, 13);
}

TEST(MixedGrid, CAndDTileTheLine) {
  for (Int l = 1; l <= 4; ++l) {
    const StripedGrid g = mixed_grid_shape(1, 2, 3, 7);
    const Int off = g.d_offset(l);
    for (Int x = -200; x <= 200; ++x) {
      const Int r = floor_mod(x - off, g.period);
      const bool in_d = r < g.d_width;
      const bool in_c = r >= g.d_width;
      ASSERT_NE(in_d, in_c);
    }
  }
}

TEST(MixedGrid, ColorCounts) {
  EXPECT_EQ(mixed_grid_cover(1, 1, 3, 5).colors, 3U);
  EXPECT_EQ(mixed_grid_cover(2, 1, 4, 6).colors, 9U);
  EXPECT_EQ(mixed_grid_cover(3, 1, 2, 2).colors, 25U);
}

TEST(MixedGrid, BruteForceDeclared) {
  expect_declared(mixed_grid_cover(1, 1, 3, 5), lattice_box({1, 3}, -24, 24));
  expect_declared(mixed_grid_cover(2, 1, 2, 2), lattice_box({1, 1, 2}, -9, 9));
}

TEST(ProductSquare, ColorCountIndependentOfN) {
  const std::size_t c = product_square_cover(1, 2).colors;
  EXPECT_EQ(product_square_cover(1, 5).colors, c);
  EXPECT_EQ(c, 73U);
  EXPECT_THROW(product_square_cover(2, 1), std::invalid_argument);
}

TEST(ProductSquare, RegionsPartitionLevelPairs) {
  for (Int n : {2, 3, 5}) {
    std::map<SquareRegion, int> seen;
    for (Int l1 = 1; l1 <= 10; ++l1) {
      for (Int l2 = 1; l2 <= 10; ++l2) ++seen[square_region(1, n, l1, l2)];
    }
    EXPECT_EQ(seen.size(), 6U);
  }
}

TEST(ProductSquare, BruteForceDeclared) {
  const CoverScheme s = product_square_cover(1, 2);
  const auto X = oracle::tower_points(StepRule::power_of_two, 1, 3, -8, 8);
  std::vector<Point> pts;
  for (const Point& a : X) {
    for (const Point& b : X) pts.push_back(TowerPair{std::get<TowerPoint>(a), std::get<TowerPoint>(b)});
  }
  expect_declared(s, pts);
  const auto st = oracle::measure(s, pts);
  EXPECT_GE(*st.colors.at(0).min_separation, 1);
}

TEST(ShiftUnion, ColorCountsAndShape) {
  EXPECT_EQ(shift_union_cover(2, 1).colors, 770U);
  EXPECT_EQ(shift_union_cover(2, 5).colors, 770U);
  EXPECT_EQ(shift_union_cover(1, 2).colors, 50U);
  const StripedGrid g = shift_union_shape(2, 3);
  EXPECT_EQ(g.d_width, 2);
  EXPECT_EQ(g.d_offset(2) - g.d_offset(1), 10);
  const ShiftBlocks b{2, 3};
  EXPECT_EQ(b.block_of(0), 0);
  EXPECT_EQ(b.block_of(3), 0);
  EXPECT_EQ(b.block_of(4), 1);
  EXPECT_EQ(b.block_of(7), 1);
}

TEST(ShiftUnion, DeclaredSeparations) {
  const CoverScheme s = shift_union_cover(2, 3);
  EXPECT_EQ(std::count(s.separation.begin(), s.separation.end(), 2), 2);
  EXPECT_EQ(std::count(s.separation.begin(), s.separation.end(), 3), 768);
  EXPECT_EQ(s.separation[0], 2);
  EXPECT_EQ(s.separation[1], 2);
}

TEST(ShiftUnion, DUnionIsMDisjoint) {
  const Int m = 2;
  const StripedGrid g = shift_union_shape(1, m);
  // (x, cell) over every pattern l; cells are (l, period index).
  std::vector<std::pair<Int, std::pair<Int, Int>>> d_points;
  for (Int l = 1; l <= (Int{1} << m); ++l) {
    for (Int x = -3 * g.period; x <= 3 * g.period; ++x) {
      const Int u = x - g.d_offset(l);
      if (floor_mod(u, g.period) < g.d_width) d_points.push_back({x, {l, floor_div(u, g.period)}});
    }
  }
  for (std::size_t i = 0; i < d_points.size(); ++i) {
    for (std::size_t j = i + 1; j < d_points.size(); ++j) {
      if (d_points[i].second != d_points[j].second) {
        ASSERT_GE(std::abs(d_points[i].first - d_points[j].first), m);
      }
    }
  }
}

TEST(ShiftUnion, BruteForceDeclared) {
  expect_declared(shift_union_cover(1, 1), oracle::shift_points(0, 3, 4, -4, 4));
}

TEST(Restrict, WholeSpaceIsIdentity) {
  const CoverScheme g = grid_cover(1, 5);
  const CoverScheme r = restrict_scheme(g, [](const Point&) { return true; });
  for (const Point& p : line(-30, 30)) EXPECT_EQ(g.classify(p), r.classify(p));
}

TEST(Restrict, HalfLine) {
  const CoverScheme r = restrict_scheme(grid_cover(1, 5), [](const Point& p) {
    return std::get<LatticePoint>(p).coords[0] >= 0;
  });
  EXPECT_FALSE(r.classify(LatticePoint{{-3}}));
  EXPECT_TRUE(r.classify(LatticePoint{{3}}));
}

TEST(Restrict, WindowRegion) {
  Window w;
  w.box = {Interval{-5, 5}};
  const Region inside = window_region(SpaceSpec::integer_lattice(1), w);
  EXPECT_TRUE(inside(LatticePoint{{5}}));
  EXPECT_FALSE(inside(LatticePoint{{6}}));
  EXPECT_FALSE(inside(LatticePoint{{0, 0}}));
}

TEST(Pullback, IdentityIsUnchanged) {
  const CoverScheme g = grid_cover(1, 5);
  const MapSpec id{"identity", {}, Control::identity(), Control::identity(), nullptr, std::nullopt};
  const CoverScheme p = pullback_scheme(g, id, g.space);
  for (const Point& x : line(-30, 30)) EXPECT_EQ(g.classify(x), p.classify(x));
}

TEST(Pullback, LevelProjectionKeepsSeparation) {
  const Int r = 2;
  const MapSpec f{"f-level-projection", {}, Control::identity(), Control::identity(), nullptr, std::nullopt};
  const CoverScheme p = pullback_scheme(grid_cover(1, r), f, SpaceSpec::shift_union());
  const auto st = oracle::measure(p, oracle::shift_points(0, 6, 3, -1, 1));
  for (const auto& [color, c] : st.colors) EXPECT_GE(*c.min_separation, r);
}

TEST(Pullback, PhiTowerIsExact) {
  const MapSpec phi{"phi-tower", {{"n", 2}}, Control::identity(), Control::identity(), nullptr, std::nullopt};
  const SpaceSpec domain = SpaceSpec::tower_with_factor(StepRule::power_of_two, 1);
  const CoverScheme p = pullback_scheme(grid_cover(4, 3), phi, domain);
  const auto pts = oracle::tower_points(StepRule::power_of_two, 1, 2, -8, 8, 1, -4, 4);
  std::vector<Point> images;
  for (const Point& x : pts) images.push_back(evaluate_map(phi, x));
  const auto pulled = oracle::measure(p, pts);
  const auto pushed = oracle::measure(grid_cover(4, 3), images);
  for (const auto& [color, c] : pulled.colors) {
    EXPECT_EQ(c.min_separation, pushed.colors.at(color).min_separation);
    EXPECT_EQ(c.max_diameter, pushed.colors.at(color).max_diameter);
  }
}
