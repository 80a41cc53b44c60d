#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/covers/saturated_union.hpp"
#include "coarse/covers/shift_union.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/verify/control.hpp"
#include "coarse/verify/oracle1d.hpp"
#include "coarse/verify/verify.hpp"
#include "coarse/verify/witness.hpp"

namespace coarse::acceptance {

// Pinned limits. Every comparison below is exact integer arithmetic.
inline constexpr double kStaircaseSeconds = 60;
inline constexpr double kMixedGridSeconds = 120;
inline constexpr double kShiftUnionSeconds = 300;
inline constexpr double kProductSquareSeconds = 300;
inline constexpr double kWitnessSeconds = 30;
inline constexpr double kOracleSeconds = 10;
inline constexpr double kSaturatedSeconds = 60;
inline constexpr double kOrdinalSeconds = 10;
inline constexpr double kIsometrySeconds = 60;
inline constexpr Int kMinFibers = 100;
inline constexpr Int kSaturatedInstances = 1000;
inline constexpr Int kOrdinalFamilies = 10000;
inline constexpr Int kMinPairs = 10000;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  std::string detail;
};

struct Settings {
  std::size_t workers = 1;
  std::uint64_t seed = 20240611;
};

namespace detail {

class Timer {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Collects failed checks; the criterion passes when none failed.
struct Checks {
  std::ostringstream notes;
  bool ok = true;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << "FAILED " << what << "; ";
    }
  }
  void note(const std::string& what) { notes << what << "; "; }
};

inline std::string sep_text(const ColorRecord& c) {
  return c.min_separation ? std::to_string(*c.min_separation) : std::string("none");
}

/// `seconds` is the slowest case for per-case limits, else the whole run.
inline CriterionResult finish(int id, std::string name, Checks& checks, double seconds, double limit) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.seconds = seconds;
  checks.expect(r.seconds < limit, "time " + std::to_string(r.seconds) + "s < " + std::to_string(limit) + "s");
  r.passed = checks.ok;
  r.detail = checks.notes.str();
  return r;
}

/// Every color's measured values against its declaration, plus full coverage.
inline void expect_clean(Checks& checks, const VerificationReport& r, const std::string& label) {
  checks.expect(r.uncovered_total == 0, label + " uncovered " + std::to_string(r.uncovered_total) + " == 0");
  checks.expect(r.errors.empty(), label + " classification errors");
  for (const ColorRecord& c : r.colors) {
    if (!c.separation_pass) {
      checks.expect(false, label + " color " + std::to_string(c.color) + " separation " + sep_text(c) +
                               " >= " + std::to_string(c.declared_separation));
    }
    if (!c.bound_pass) {
      checks.expect(false, label + " color " + std::to_string(c.color) + " diameter " +
                               std::to_string(c.max_diameter) + " <= " + std::to_string(c.declared_bound));
    }
  }
}

}  // namespace detail

/// Staircase cover on (2^n Z)^r x Z x [height] slices.
inline CriterionResult staircase(const Settings& s) {
  detail::Checks checks;
  double worst = 0;
  for (auto [n, r] : std::vector<std::pair<Int, Int>>{{1, 2}, {2, 3}, {3, 5}}) {
    const detail::Timer timer;
    const Interval height{n * (n + 1) / 2, r * (r - 1) / 2};
    const CoverScheme scheme = staircase_cover(n, r, static_cast<std::size_t>(r), height);
    const Int period = StaircaseShape(n, r, static_cast<std::size_t>(r), height).period();
    Window w;
    w.box.assign(static_cast<std::size_t>(r), Interval{-4 * pow2(r), 4 * pow2(r)});
    w.box.push_back({-period, 2 * period});
    w.box.push_back(height);
    VerifyOptions opt;
    opt.workers = s.workers;
    opt.seed = s.seed;
    const VerificationReport rep = verify_cover(scheme, w, opt);
    const std::string label = "(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
    detail::expect_clean(checks, rep, label);
    const ColorRecord& J = rep.colors[kStaircaseJ];
    const ColorRecord& I = rep.colors[kStaircaseI];
    checks.expect(J.min_separation && *J.min_separation >= n, label + " J separation >= n");
    checks.expect(I.min_separation && *I.min_separation >= r, label + " I separation >= r");
    checks.note(label + " J sep " + detail::sep_text(J) + " diam " + std::to_string(J.max_diameter) + ", I sep " +
                detail::sep_text(I) + " diam " + std::to_string(I.max_diameter) + ", points " +
                std::to_string(rep.points));
    worst = std::max(worst, timer.seconds());
  }
  return detail::finish(1, "staircase cover", checks, worst, kStaircaseSeconds);
}

/// Mixed grid cover of Z^m x (kZ)^n on windows three periods wide.
inline CriterionResult mixed_grid(const Settings& s) {
  detail::Checks checks;
  double worst = 0;
  for (auto [m, n, k, R] : std::vector<std::array<Int, 4>>{{1, 1, 3, 5}, {2, 1, 4, 6}, {1, 2, 3, 7}}) {
    const detail::Timer timer;
    const auto mm = static_cast<std::size_t>(m);
    const auto nn = static_cast<std::size_t>(n);
    const CoverScheme scheme = mixed_grid_cover(mm, nn, k, R);
    const Int period = mixed_grid_shape(mm, nn, k, R).period;
    Window w;
    w.box = {Interval{-(3 * period) / 2, (3 * period + 1) / 2}};
    VerifyOptions opt;
    opt.workers = s.workers;
    opt.seed = s.seed;
    const VerificationReport rep = verify_cover(scheme, w, opt, Method::structured);
    const std::string label = "(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                              ",R=" + std::to_string(R) + ")";
    detail::expect_clean(checks, rep, label);
    checks.expect(scheme.colors == mm * (std::size_t{1} << mm) + 1, label + " color count m 2^m + 1");
    checks.expect(rep.colors[0].declared_separation == k, label + " color 0 declared k");
    for (std::size_t c = 1; c < scheme.colors; ++c) {
      checks.expect(rep.colors[c].declared_separation == R, label + " color declared R");
    }
    checks.note(label + " colors " + std::to_string(scheme.colors) + ", color 0 sep " +
                detail::sep_text(rep.colors[0]) + ", points " + std::to_string(rep.points));
    worst = std::max(worst, timer.seconds());
  }
  return detail::finish(2, "mixed grid cover", checks, worst, kMixedGridSeconds);
}

/// Shift-union cover over two level blocks.
inline CriterionResult shift_union(const Settings& s) {
  detail::Checks checks;
  double worst = 0;
  for (auto [k, m] : std::vector<std::pair<Int, Int>>{{1, 2}, {2, 2}}) {
    const detail::Timer timer;
    const CoverScheme scheme = shift_union_cover(k, m);
    const Int period = shift_union_shape(k, m).period;
    Window w;
    w.levels = {0, 4 * k - 1};
    w.box = {Interval{-period, period}};
    w.max_support = 5 * k + m + 1;
    VerifyOptions opt;
    opt.workers = s.workers;
    opt.seed = s.seed;
    const VerificationReport rep = verify_cover(scheme, w, opt);
    const std::string label = "(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")";
    detail::expect_clean(checks, rep, label);
    std::size_t k_colors = 0, m_colors = 0, populated = 0;
    for (const ColorRecord& c : rep.colors) {
      if (c.declared_separation == k && c.color < 2) ++k_colors;
      if (c.declared_separation == m && c.color >= 2) ++m_colors;
      if (c.cells_seen > 0) ++populated;
    }
    const auto expected = static_cast<std::size_t>(6 * k) * (std::size_t{1} << (3 * k));
    checks.expect(k_colors == 2, label + " two k-disjoint colors");
    checks.expect(m_colors == expected, label + " (6k)2^{3k} m-disjoint colors");
    checks.expect(scheme.colors == expected + 2, label + " total colors");
    checks.note(label + " colors " + std::to_string(scheme.colors) + " (" + std::to_string(populated) +
                " populated), color 0 sep " + detail::sep_text(rep.colors[0]) + ", points " +
                std::to_string(rep.points));
    worst = std::max(worst, timer.seconds());
  }
  return detail::finish(3, "shift-union cover", checks, worst, kShiftUnionSeconds);
}

/// Six-region cover of X x X for k = 1 at two values of n.
inline CriterionResult product_square(const Settings& s) {
  detail::Checks checks;
  const detail::Timer timer;
  const Int k = 1;
  std::vector<std::size_t> counts;
  for (Int n : {2, 4}) {
    const CoverScheme scheme = product_square_cover(k, n);
    counts.push_back(scheme.colors);
    Window w;
    w.levels = {1, n + 1};
    w.box = {Interval{-64, 64}};
    VerifyOptions opt;
    opt.workers = s.workers;
    opt.seed = s.seed;
    const VerificationReport rep = verify_cover(scheme, w, opt);
    const std::string label = "(k=1,n=" + std::to_string(n) + ")";
    detail::expect_clean(checks, rep, label);
    checks.expect(rep.colors[0].declared_separation == k, label + " merged color k-disjoint");
    for (std::size_t c = 1; c < scheme.colors; ++c) {
      checks.expect(rep.colors[c].declared_separation == n, label + " other colors n-disjoint");
    }
    checks.note(label + " colors " + std::to_string(scheme.colors) + ", color 0 sep " +
                detail::sep_text(rep.colors[0]) + ", points " + std::to_string(rep.points));
  }
  checks.expect(counts[0] == counts[1], "color count independent of n");
  return detail::finish(4, "product-square cover", checks, timer.seconds(), kProductSquareSeconds);
}

/// Fiber witnesses against a 3-disjoint, 5-bounded interval family, and the induced map.
inline CriterionResult witnesses(const Settings& s) {
  detail::Checks checks;
  const detail::Timer timer;
  const Int gap = 3, bound = 5, R = 5;
  const CoverScheme family = fiber_intervals_cover(StepRule::identity, gap, bound);
  Window fibers_window;
  fibers_window.levels = {3, 3};
  fibers_window.box = {Interval{-6, 6}};
  const SpaceSpec base = SpaceSpec::tower(StepRule::identity);
  const std::vector<Point> fibers = enumerate_window(base, fibers_window);
  // The family really is 3-disjoint and 5-bounded on the fibers.
  Window product_window = fibers_window;
  product_window.extra_box = {Interval{-30, 30}};
  VerifyOptions opt;
  opt.workers = s.workers;
  const VerificationReport fam = verify_points(family, product_window, opt);
  checks.expect(fam.colors[0].separation_pass && fam.colors[0].bound_pass, "family 3-disjoint and 5-bounded");
  const WitnessResult w = find_fiber_witnesses(family, {0}, fibers, {Interval{-R, R}});
  checks.expect(static_cast<Int>(fibers.size()) >= kMinFibers, "at least 100 fibers");
  checks.expect(w.all_witnessed, "every fiber has a witness");
  if (w.all_witnessed) {
    const MapSpec delta = witness_map(w, family.space, Control::identity(), Control::plus(2 * R));
    const ControlReport c = check_coarse_control(delta, base, fibers, s.workers);
    checks.expect(c.violation_total == 0, "induced map within identity and identity + 2R");
    checks.note("pairs " + std::to_string(c.pairs) + ", max stretch " + std::to_string(c.max_stretch));
  }
  checks.note("fibers " + std::to_string(fibers.size()) + ", witnessed " + std::to_string(w.witnessed));
  return detail::finish(5, "fiber witnesses", checks, timer.seconds(), kWitnessSeconds);
}

/// The exhaustive one-color oracle.
inline CriterionResult oracle(const Settings&) {
  detail::Checks checks;
  const detail::Timer timer;
  const Int budget = 10'000'000;
  const OracleResult wide = oracle_1d_nocover(3, 5, 1, {-5, 5}, budget);
  checks.expect(wide.outcome == OracleOutcome::infeasible, "[-5,5] infeasible");
  const OracleResult narrow = oracle_1d_nocover(3, 5, 1, {-2, 2}, budget);
  checks.expect(narrow.outcome == OracleOutcome::feasible, "[-2,2] feasible");
  if (narrow.outcome == OracleOutcome::feasible) {
    Window w;
    w.box = {Interval{-2, 2}};
    const VerificationReport check = verify_cover(assignment_scheme(narrow.assignment, 1, 3, 5), w);
    checks.expect(check.verdict == Verdict::pass, "feasible assignment re-verifies");
  }
  checks.note("[-5,5] " + std::string(outcome_name(wide.outcome)) + " after " + std::to_string(wide.nodes) +
              " nodes; [-2,2] " + outcome_name(narrow.outcome));
  return detail::finish(6, "one-dimensional oracle", checks, timer.seconds(), kOracleSeconds);
}

namespace detail {

/// Cells on Z, left to right: each a random subset of a window of `width` + 1
/// points holding both ends, consecutive cells at least `spacing` apart.
inline FiniteFamily random_cells(std::mt19937_64& rng, Int start, Int limit, Int width, Int spacing, Int extra_gap) {
  FiniteFamily out;
  Int x = start;
  Int key = 0;
  auto pick = [&rng](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  while (x <= limit) {
    const Int w = pick(0, width);
    std::vector<Point> pts{LatticePoint{{x}}};
    for (Int y = x + 1; y < x + w; ++y) {
      if (pick(0, 1) == 1) pts.push_back(LatticePoint{{y}});
    }
    if (w > 0) pts.push_back(LatticePoint{{x + w}});
    out.cells[{key++}] = std::move(pts);
    x += w + spacing + pick(0, extra_gap);
  }
  return out;
}

struct FamilyShape {
  Int diameter = 0;
  Int separation = kInfinity;
};

inline FamilyShape shape_of(const SpaceSpec& space, const FiniteFamily& F) {
  FamilyShape out;
  std::vector<const std::vector<Point>*> cells;
  for (const auto& [key, pts] : F.cells) cells.push_back(&pts);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.diameter = std::max(out.diameter, set_diameter(space, *cells[i]));
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      out.separation = std::min(out.separation, set_distance(space, *cells[i], *cells[j]));
    }
  }
  return out;
}

}  // namespace detail

/// Saturated unions of random families meeting the lemma's hypotheses.
inline CriterionResult saturated(const Settings& s) {
  detail::Checks checks;
  const detail::Timer timer;
  std::mt19937_64 rng(s.seed);
  auto pick = [&rng](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  const SpaceSpec line = SpaceSpec::integer_lattice(1);
  Int good = 0, absorbed_total = 0;
  for (Int t = 0; t < kSaturatedInstances; ++t) {
    const Int r = pick(1, 4);
    const Int R = pick(r, r + 5);
    const Int D = pick(0, 3 * R);
    const FiniteFamily U = detail::random_cells(rng, pick(-10, 0), 150, R, r, 2 * r);
    const FiniteFamily V = detail::random_cells(rng, pick(-10, 10), 150, D, 5 * R, 3 * R);
    const auto u = detail::shape_of(line, U);
    const auto v = detail::shape_of(line, V);
    if (!(u.separation >= r && u.diameter <= R && v.separation >= 5 * R && v.diameter <= D)) {
      checks.expect(false, "instance generator broke the hypotheses");
      break;
    }
    const FiniteFamily out = saturated_union(line, V, U, r);
    const auto o = detail::shape_of(line, out);
    std::set<Point> in_points, out_points;
    for (const Point& p : U.points()) in_points.insert(p);
    for (const Point& p : V.points()) in_points.insert(p);
    for (const Point& p : out.points()) out_points.insert(p);
    const bool absorbs = std::includes(out_points.begin(), out_points.end(), in_points.begin(), in_points.end());
    absorbed_total += static_cast<Int>(U.cells.size() + V.cells.size() - out.cells.size());
    if (absorbs && o.separation >= r && o.diameter <= D + 2 * R + 2 * r) ++good;
  }
  checks.expect(good == kSaturatedInstances, "all instances r-disjoint, (D+2R+2r)-bounded and absorbing");
  checks.note(std::to_string(good) + "/" + std::to_string(kSaturatedInstances) + " instances, " +
              std::to_string(absorbed_total) + " absorptions");
  return detail::finish(7, "saturated union", checks, timer.seconds(), kSaturatedSeconds);
}

/// Ord against maximum member size, monotonicity and strict descent.
inline CriterionResult ordinal(const Settings& s) {
  detail::Checks checks;
  const detail::Timer timer;
  std::mt19937_64 rng(s.seed);
  auto pick = [&rng](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  Int equal = 0, monotone = 0, descent = 0, descent_checks = 0;
  for (Int t = 0; t < kOrdinalFamilies; ++t) {
    FinFamily M;
    const Int members = pick(0, 8);
    for (Int i = 0; i < members; ++i) {
      std::vector<Int> m;
      const Int size = pick(1, 4);
      for (Int j = 0; j < size; ++j) m.push_back(pick(0, 5));
      M.insert(make_finset(m));
    }
    OrdRank rank;
    const Int value = rank(M);
    if (value == max_member_size(M)) ++equal;
    FinFamily sub;
    for (const FinSet& m : M) {
      if (pick(0, 1) == 1) sub.insert(m);
    }
    if (rank(sub) <= value) ++monotone;
    for (Int a : support(M)) {
      ++descent_checks;
      if (rank(derived_family(M, {a})) < value) ++descent;
    }
  }
  checks.expect(equal == kOrdinalFamilies, "rank equals max member size");
  checks.expect(monotone == kOrdinalFamilies, "monotone under subfamilies");
  checks.expect(descent == descent_checks, "strict descent");
  checks.note(std::to_string(kOrdinalFamilies) + " families, " + std::to_string(descent_checks) + " descent checks");
  return detail::finish(8, "ordinal rank", checks, timer.seconds(), kOrdinalSeconds);
}

/// Isometric embeddings and the 1-Lipschitz level projection.
inline CriterionResult isometries(const Settings& s) {
  detail::Checks checks;
  const detail::Timer timer;
  auto run = [&](const std::string& label, const MapSpec& f, const SpaceSpec& domain, const Window& w, bool lower) {
    const ControlReport r = check_coarse_control(f, domain, w, s.workers, 5, lower, true);
    checks.expect(r.violation_total == 0, label + " zero violations");
    checks.expect(r.pairs >= kMinPairs, label + " at least 10^4 pairs");
    checks.note(label + " pairs " + std::to_string(r.pairs));
  };
  {
    MapSpec phi{"phi-tower", {{"n", 3}}, Control::identity(), Control::identity(), nullptr, std::nullopt};
    Window w;
    w.levels = {1, 3};
    w.box = {Interval{-16, 16}};
    w.extra_box = {Interval{-3, 3}};
    run("phi-tower", phi, SpaceSpec::tower_with_factor(StepRule::power_of_two, 1), w, true);
  }
  {
    MapSpec psi{"psi-staircase", {{"n", 2}, {"r", 4}}, Control::identity(), Control::identity(), nullptr,
                std::nullopt};
    Window w;
    w.levels = {3, 4};
    w.box = {Interval{-32, 32}};
    w.extra_box = {Interval{-1, 1}};
    run("psi-staircase", psi, SpaceSpec::tower_with_factor(StepRule::power_of_two, 1), w, true);
  }
  {
    MapSpec theta{"theta-interleave", {{"len", 3}}, Control::identity(), Control::identity(), nullptr, std::nullopt};
    Window w;
    w.box = {Interval{-3, 3}};
    run("theta-interleave", theta, SpaceSpec::lattice({1, 2, 3, 1, 2, 3}), w, true);
    MapSpec pair{"theta-interleave", {{"len", 2}}, Control::identity(), Control::identity(), nullptr, std::nullopt};
    Window pw;
    pw.levels = {2, 2};
    pw.box = {Interval{-8, 8}};
    run("theta-interleave on X x X", pair, SpaceSpec::product_of_towers(StepRule::power_of_two), pw, true);
  }
  {
    MapSpec f{"f-level-projection", {}, Control::identity(), Control::identity(), nullptr, std::nullopt};
    Window w;
    w.levels = {0, 3};
    w.box = {Interval{-3, 3}};
    w.max_support = 3;
    run("f-level-projection", f, SpaceSpec::shift_union(), w, false);
  }
  return detail::finish(9, "isometries", checks, timer.seconds(), kIsometrySeconds);
}

inline std::vector<std::function<CriterionResult(const Settings&)>> battery() {
  return {staircase, mixed_grid, shift_union, product_square, witnesses, oracle, saturated, ordinal, isometries};
}

inline std::string line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") " << r.seconds << "s: "
      << r.detail;
  return out.str();
}

}  // namespace coarse::acceptance
