#include <gtest/gtest.h>

#include "coarse/covers/lattice_covers.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/verify/control.hpp"
#include "coarse/verify/witness.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

MapSpec named(std::string name, std::map<std::string, Int> params = {}, Control lower = Control::identity(),
              Control upper = Control::identity()) {
  return MapSpec{std::move(name), std::move(params), lower, upper, nullptr, std::nullopt};
}

std::vector<Point> level3_fibers() {
  return oracle::tower_points(StepRule::identity, 3, 3, -6, 6);
}

}  // namespace

TEST(Witness, NoFamiliesGiveTheFirstBoxPoint) {
  const CoverScheme s = fiber_intervals_cover(StepRule::identity, 3, 5);
  const auto r = find_fiber_witnesses(s, {}, level3_fibers(), {Interval{-5, 5}});
  EXPECT_TRUE(r.all_witnessed);
  for (const FiberRecord& f : r.fibers) EXPECT_EQ(*f.witness, std::vector<Int>{-5});
}

TEST(Witness, OneIntervalFamilyAlwaysLeavesAWitness) {
  const CoverScheme s = fiber_intervals_cover(StepRule::identity, 3, 5);
  const auto fibers = level3_fibers();
  const auto r = find_fiber_witnesses(s, {0}, fibers, {Interval{-5, 5}});
  ASSERT_EQ(r.fibers.size(), 125U);
  EXPECT_TRUE(r.all_witnessed);
  EXPECT_EQ(r.witnessed, 125);
  for (const FiberRecord& f : r.fibers) {
    // Independent re-check: the witness is uncovered and every earlier box point is covered.
    EXPECT_FALSE(s.classify(fiber_point(s.space, f.fiber, *f.witness)));
    for (Int y = -5; y < (*f.witness)[0]; ++y) EXPECT_TRUE(s.classify(fiber_point(s.space, f.fiber, {y})));
  }
}

TEST(Witness, TwoGridColorsOnAPlane) {
  const CoverScheme s = fiber_product_cover(grid_cover(2, 3), StepRule::identity, 0);
  const auto fibers = oracle::tower_points(StepRule::identity, 1, 2, -2, 2);
  const auto r = find_fiber_witnesses(s, {0, 1}, fibers, {Interval{-6, 6}, Interval{-6, 6}});
  EXPECT_TRUE(r.all_witnessed);
  const auto full = find_fiber_witnesses(s, {0, 1, 2, 3}, fibers, {Interval{-6, 6}, Interval{-6, 6}});
  EXPECT_FALSE(full.all_witnessed);
  EXPECT_EQ(full.witnessed, 0);
}

TEST(Witness, InducedMapIsControlled) {
  const Int R = 5;
  const CoverScheme s = fiber_intervals_cover(StepRule::identity, 3, 5);
  const auto fibers = level3_fibers();
  const auto r = find_fiber_witnesses(s, {0}, fibers, {Interval{-R, R}});
  const MapSpec delta = witness_map(r, s.space, Control::identity(), Control::plus(2 * R));
  const ControlReport c = check_coarse_control(delta, SpaceSpec::tower(StepRule::identity), fibers);
  EXPECT_EQ(c.violation_total, 0);
  EXPECT_EQ(c.pairs, 125 * 124 / 2);
  EXPECT_LE(c.max_stretch, 2 * R);
  EXPECT_LE(c.max_compression, 0);
  for (std::size_t i = 0; i < fibers.size(); i += 9) {
    for (std::size_t j = 0; j < fibers.size(); j += 7) {
      const Int dx = oracle::distance(fibers[i], fibers[j]);
      const Int dy = oracle::distance(evaluate_map(delta, fibers[i]), evaluate_map(delta, fibers[j]));
      EXPECT_LE(dx, dy);
      EXPECT_LE(dy, dx + 2 * R);
    }
  }
}

TEST(Witness, MapNeedsEveryWitness) {
  WitnessResult r;
  r.fibers.push_back({TowerPoint{1, {0}, {}}, std::nullopt});
  EXPECT_THROW(witness_map(r, SpaceSpec::tower_with_factor(StepRule::identity, 1), Control::identity(),
                           Control::identity()),
               std::invalid_argument);
}

TEST(Control, IdentityHasNoViolations) {
  Window w;
  w.levels = {1, 2};
  w.box = {Interval{-4, 4}};
  const ControlReport r = check_coarse_control(named("identity"), SpaceSpec::tower(StepRule::identity), w);
  EXPECT_EQ(r.violation_total, 0);
  EXPECT_EQ(r.max_stretch, 0);
}

TEST(Control, PhiTowerIsIsometric) {
  Window w;
  w.levels = {1, 3};
  w.box = {Interval{-8, 8}};
  w.extra_box = {Interval{-2, 2}};
  const ControlReport r = check_coarse_control(named("phi-tower", {{"n", 3}}),
                                               SpaceSpec::tower_with_factor(StepRule::power_of_two, 1), w, 2);
  EXPECT_EQ(r.violation_total, 0);
  EXPECT_EQ(r.max_stretch, 0);
  EXPECT_EQ(r.max_compression, 0);
}

TEST(Control, ViolationsAreCountedAndListed) {
  // Halving the level projection's upper control breaks it on pairs at distance >= 1.
  Window w;
  w.levels = {0, 2};
  w.box = {Interval{-1, 1}};
  w.max_support = 2;
  const MapSpec f = named("f-level-projection", {}, Control::identity(), Control::scaled(0));
  const ControlReport r = check_coarse_control(f, SpaceSpec::shift_union(), w, 1, 3, false, true);
  EXPECT_GT(r.violation_total, 0);
  EXPECT_EQ(r.violations.size(), 3U);
  const ControlReport lower_only = check_coarse_control(f, SpaceSpec::shift_union(), w, 1, 3, true, false);
  EXPECT_GT(lower_only.violation_total, 0);
  const ControlReport lipschitz =
      check_coarse_control(named("f-level-projection"), SpaceSpec::shift_union(), w, 1, 3, false, true);
  EXPECT_EQ(lipschitz.violation_total, 0);
}

TEST(Control, WorkersGiveTheSameReport) {
  Window w;
  w.levels = {0, 2};
  w.box = {Interval{-2, 2}};
  w.max_support = 2;
  const MapSpec f = named("f-level-projection", {}, Control::identity(), Control::identity());
  const ControlReport a = check_coarse_control(f, SpaceSpec::shift_union(), w, 1, 5);
  const ControlReport b = check_coarse_control(f, SpaceSpec::shift_union(), w, 3, 5);
  EXPECT_EQ(a.violation_total, b.violation_total);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) EXPECT_EQ(a.violations[i].a, b.violations[i].a);
}

TEST(Control, PartialMapThrowsDomainError) {
  Window w;
  w.levels = {1, 4};
  w.box = {Interval{-2, 2}};
  EXPECT_THROW(check_coarse_control(named("phi-tower", {{"n", 3}}), SpaceSpec::tower(StepRule::identity), w),
               DomainError);
}
