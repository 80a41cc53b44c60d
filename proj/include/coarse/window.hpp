#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/metric.hpp"
#include "coarse/points.hpp"

namespace coarse {

/// Finite region of a space: level range times a coordinate box.
///
/// `box` holds either one interval (broadcast to every coordinate) or one
/// interval per coordinate. For towers and the shift union the coordinate
/// index is the position inside the point; for products the same box is used
/// by both factors. `extra_box` plays the same role for the Z^k factor.
struct Window {
  Interval levels{1, 1};
  std::optional<Interval> second_levels;
  std::vector<Interval> box;
  std::vector<Interval> extra_box;
  Int max_support = 0;

  [[nodiscard]] Interval coord_box(std::size_t axis) const {
    if (box.empty()) throw std::invalid_argument("window has no coordinate box");
    if (box.size() == 1) return box.front();
    if (axis >= box.size()) {
      throw std::invalid_argument("window box has no interval for coordinate " +
                                  std::to_string(axis));
    }
    return box[axis];
  }
  [[nodiscard]] Interval extra_interval(std::size_t axis) const {
    if (extra_box.empty()) throw std::invalid_argument("window has no box for the factor block");
    if (extra_box.size() == 1) return extra_box.front();
    if (axis >= extra_box.size()) {
      throw std::invalid_argument("factor box has no interval for coordinate " +
                                  std::to_string(axis));
    }
    return extra_box[axis];
  }
  [[nodiscard]] Interval second_level_range() const { return second_levels.value_or(levels); }
};

/// Arithmetic progression lo, lo+step, ..., hi with hi - lo divisible by step.
struct Run {
  Int lo = 0;
  Int hi = -1;
  Int step = 1;

  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] Int count() const { return empty() ? 0 : (hi - lo) / step + 1; }
  [[nodiscard]] bool contains(Int v) const {
    return !empty() && lo <= v && v <= hi && floor_mod(v - lo, step) == 0;
  }
  [[nodiscard]] Int at(Int index) const { return lo + index * step; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Multiples of `step` inside [lo, hi].
inline Run aligned_run(Interval range, Int step) {
  if (step <= 0) throw std::invalid_argument("progression step must be positive");
  if (range.empty()) return Run{};
  const Int first = checked_mul(ceil_div(range.lo, step), step);
  const Int last = checked_mul(floor_div(range.hi, step), step);
  return first > last ? Run{} : Run{first, last, step};
}

/// Points of `run` that fall in [lo, hi].
inline Run clip_run(const Run& run, Int lo, Int hi) {
  if (run.empty() || lo > hi) return Run{};
  lo = std::max(lo, run.lo);
  hi = std::min(hi, run.hi);
  if (lo > hi) return Run{};
  const Int first = run.lo + ceil_div(lo - run.lo, run.step) * run.step;
  const Int last = run.lo + floor_div(hi - run.lo, run.step) * run.step;
  return first > last ? Run{} : Run{first, last, run.step};
}

// ---------------------------------------------------------------------------
// Native coordinates: every point of a window written as a fixed-length
// integer vector plus a short tag (its levels).

struct NativeLayout {
  SpaceKind kind = SpaceKind::plain_lattice;
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t extra = 0;
  Int index_lo = 0;

  [[nodiscard]] std::size_t size() const { return first + second + extra; }
};

struct Slab {
  std::vector<Int> tag;
  std::vector<Run> axes;

  [[nodiscard]] Int points() const {
    Int total = 1;
    for (const Run& r : axes) total = checked_mul(total, r.count());
    return total;
  }
};

struct SlabSet {
  NativeLayout layout;
  std::vector<Slab> slabs;

  [[nodiscard]] Int points() const {
    Int total = 0;
    for (const Slab& s : slabs) total = checked_add(total, s.points());
    return total;
  }
};

inline void check_window(const SpaceSpec& spec, const Window& w) {
  for (const Interval& i : w.box) {
    if (i.empty()) throw std::invalid_argument("window box intervals must be nonempty");
  }
  for (const Interval& i : w.extra_box) {
    if (i.empty()) throw std::invalid_argument("factor box intervals must be nonempty");
  }
  switch (spec.kind) {
    case SpaceKind::plain_lattice:
      if (w.box.size() != 1 && w.box.size() != spec.lattice_dim()) {
        throw std::invalid_argument("lattice window needs one box interval or one per axis");
      }
      if (w.box.empty() && spec.lattice_dim() > 0) {
        throw std::invalid_argument("window is infinite: no coordinate box");
      }
      return;
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor:
    case SpaceKind::product_of_towers:
      if (w.levels.empty() || w.second_level_range().empty()) {
        throw std::invalid_argument("window level range is empty");
      }
      if (w.levels.lo < 1 || w.second_level_range().lo < 1) {
        throw std::invalid_argument("tower levels start at 1");
      }
      if (w.box.empty()) throw std::invalid_argument("window is infinite: no coordinate box");
      if (spec.kind == SpaceKind::tower_with_factor && spec.factor_dim > 0 && w.extra_box.empty()) {
        throw std::invalid_argument("window is infinite: no box for the factor block");
      }
      return;
    case SpaceKind::shift_union:
      if (w.levels.empty()) throw std::invalid_argument("window level range is empty");
      if (w.box.empty()) throw std::invalid_argument("window is infinite: no coordinate box");
      return;
  }
}

namespace detail {

inline std::vector<Run> tower_axes(StepRule rule, Int level, std::size_t padded_to,
                                   const Window& w) {
  std::vector<Run> axes;
  const Int step = step_for_level(rule, level);
  for (std::size_t j = 0; j < padded_to; ++j) {
    if (static_cast<Int>(j) < level) {
      axes.push_back(aligned_run(w.coord_box(j), step));
    } else {
      axes.push_back(Run{0, 0, 1});
    }
  }
  return axes;
}

inline bool any_empty(const std::vector<Run>& axes) {
  for (const Run& r : axes) {
    if (r.empty()) return true;
  }
  return false;
}

}  // namespace detail

/// Splits a window into slabs of constant level, each a product of progressions.
inline SlabSet make_slabs(const SpaceSpec& spec, const Window& w) {
  check_window(spec, w);
  SlabSet out;
  out.layout.kind = spec.kind;
  switch (spec.kind) {
    case SpaceKind::plain_lattice: {
      out.layout.first = spec.lattice_dim();
      Slab s;
      for (std::size_t i = 0; i < spec.lattice_dim(); ++i) {
        s.axes.push_back(aligned_run(w.coord_box(i), spec.lattice_steps[i]));
      }
      if (!detail::any_empty(s.axes)) out.slabs.push_back(std::move(s));
      return out;
    }
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor: {
      const std::size_t k = spec.kind == SpaceKind::tower ? 0 : spec.factor_dim;
      out.layout.first = static_cast<std::size_t>(w.levels.hi);
      out.layout.extra = k;
      for (Int level = w.levels.lo; level <= w.levels.hi; ++level) {
        Slab s;
        s.tag = {level};
        s.axes = detail::tower_axes(spec.step, level, out.layout.first, w);
        for (std::size_t e = 0; e < k; ++e) s.axes.push_back(aligned_run(w.extra_interval(e), 1));
        if (!detail::any_empty(s.axes)) out.slabs.push_back(std::move(s));
      }
      return out;
    }
    case SpaceKind::product_of_towers: {
      const Interval second = w.second_level_range();
      out.layout.first = static_cast<std::size_t>(w.levels.hi);
      out.layout.second = static_cast<std::size_t>(second.hi);
      for (Int l1 = w.levels.lo; l1 <= w.levels.hi; ++l1) {
        for (Int l2 = second.lo; l2 <= second.hi; ++l2) {
          Slab s;
          s.tag = {l1, l2};
          s.axes = detail::tower_axes(spec.step, l1, out.layout.first, w);
          auto tail = detail::tower_axes(spec.step, l2, out.layout.second, w);
          s.axes.insert(s.axes.end(), tail.begin(), tail.end());
          if (!detail::any_empty(s.axes)) out.slabs.push_back(std::move(s));
        }
      }
      return out;
    }
    case SpaceKind::shift_union: {
      out.layout.index_lo = w.levels.lo;
      out.layout.first =
          w.max_support >= w.levels.lo ? static_cast<std::size_t>(w.max_support - w.levels.lo + 1) : 0;
      for (Int level = w.levels.lo; level <= w.levels.hi; ++level) {
        Slab s;
        s.tag = {level};
        for (std::size_t t = 0; t < out.layout.first; ++t) {
          const Int index = w.levels.lo + static_cast<Int>(t);
          if (index < level) {
            s.axes.push_back(Run{0, 0, 1});
          } else {
            s.axes.push_back(aligned_run(w.coord_box(static_cast<std::size_t>(index - w.levels.lo)),
                                         index - level + 1));
          }
        }
        if (!detail::any_empty(s.axes)) out.slabs.push_back(std::move(s));
      }
      return out;
    }
  }
  throw std::logic_error("unknown space kind");
}

/// Native coordinate vector of a window point, with its level tag.
struct NativePoint {
  std::vector<Int> tag;
  std::vector<Int> coords;
};

inline NativePoint to_native(const NativeLayout& layout, const Point& p) {
  NativePoint out;
  auto padded = [](const TowerPoint& t, std::size_t to) {
    if (static_cast<std::size_t>(t.level) > to) {
      throw DomainError("point level " + std::to_string(t.level) + " exceeds the window");
    }
    std::vector<Int> c = t.coords;
    c.resize(to, 0);
    return c;
  };
  switch (layout.kind) {
    case SpaceKind::plain_lattice:
      out.coords = std::get<LatticePoint>(p).coords;
      return out;
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor: {
      const auto& t = std::get<TowerPoint>(p);
      out.tag = {t.level};
      out.coords = padded(t, layout.first);
      out.coords.insert(out.coords.end(), t.extra.begin(), t.extra.end());
      return out;
    }
    case SpaceKind::product_of_towers: {
      const auto& q = std::get<TowerPair>(p);
      out.tag = {q.first.level, q.second.level};
      out.coords = padded(q.first, layout.first);
      auto s = padded(q.second, layout.second);
      out.coords.insert(out.coords.end(), s.begin(), s.end());
      return out;
    }
    case SpaceKind::shift_union: {
      const auto& s = std::get<ShiftPoint>(p);
      out.tag = {s.level};
      out.coords.assign(layout.first, 0);
      for (const auto& [index, value] : s.support) {
        const Int t = index - layout.index_lo;
        if (t < 0 || t >= static_cast<Int>(layout.first)) {
          throw DomainError("support index " + std::to_string(index) + " lies outside the window");
        }
        out.coords[static_cast<std::size_t>(t)] = value;
      }
      return out;
    }
  }
  throw std::logic_error("unknown space kind");
}

inline Point from_native(const NativeLayout& layout, const std::vector<Int>& tag,
                         const std::vector<Int>& coords) {
  switch (layout.kind) {
    case SpaceKind::plain_lattice:
      return LatticePoint{coords};
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor: {
      TowerPoint t;
      t.level = tag.at(0);
      t.coords.assign(coords.begin(), coords.begin() + t.level);
      t.extra.assign(coords.begin() + static_cast<std::ptrdiff_t>(layout.first), coords.end());
      return t;
    }
    case SpaceKind::product_of_towers: {
      TowerPair q;
      q.first.level = tag.at(0);
      q.second.level = tag.at(1);
      q.first.coords.assign(coords.begin(), coords.begin() + q.first.level);
      const auto second_begin = coords.begin() + static_cast<std::ptrdiff_t>(layout.first);
      q.second.coords.assign(second_begin, second_begin + q.second.level);
      return q;
    }
    case SpaceKind::shift_union: {
      ShiftPoint s;
      s.level = tag.at(0);
      for (std::size_t t = 0; t < coords.size(); ++t) {
        s.set(layout.index_lo + static_cast<Int>(t), coords[t]);
      }
      return s;
    }
  }
  throw std::logic_error("unknown space kind");
}

/// Distance contribution of the level tags alone.
inline Int tag_penalty(SpaceKind kind, const std::vector<Int>& a, const std::vector<Int>& b) {
  switch (kind) {
    case SpaceKind::plain_lattice:
      return 0;
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor:
      return level_penalty_sum(a.at(0), b.at(0));
    case SpaceKind::product_of_towers:
      return std::max(level_penalty_sum(a.at(0), b.at(0)), level_penalty_sum(a.at(1), b.at(1)));
    case SpaceKind::shift_union:
      return abs_diff(a.at(0), b.at(0));
  }
  throw std::logic_error("unknown space kind");
}

/// Calls `visit` on every point of every slab in lexicographic native order.
inline void for_each_native(const SlabSet& set,
                            const std::function<void(const Slab&, const std::vector<Int>&)>& visit) {
  for (const Slab& slab : set.slabs) {
    std::vector<Int> cur(slab.axes.size());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = slab.axes[i].lo;
    while (true) {
      visit(slab, cur);
      bool advanced = false;
      for (std::size_t i = cur.size(); i-- > 0;) {
        if (cur[i] + slab.axes[i].step <= slab.axes[i].hi) {
          cur[i] += slab.axes[i].step;
          advanced = true;
          break;
        }
        cur[i] = slab.axes[i].lo;
      }
      if (!advanced) break;
    }
  }
}

/// All points of the window, deterministic and duplicate-free.
///
/// Order: by level tag, then by native coordinates. For towers that is
/// (level, coords, extra); products order by (first level, second level)
/// before coordinates; shift points by level and then x_i in increasing i.
inline std::vector<Point> enumerate_window(const SpaceSpec& spec, const Window& w) {
  const SlabSet set = make_slabs(spec, w);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(set.points()));
  for_each_native(set, [&](const Slab& slab, const std::vector<Int>& coords) {
    out.push_back(from_native(set.layout, slab.tag, coords));
  });
  return out;
}

inline Int count_window_points(const SpaceSpec& spec, const Window& w) {
  return make_slabs(spec, w).points();
}

}  // namespace coarse
