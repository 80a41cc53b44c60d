#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/covers/lattice_covers.hpp"
#include "coarse/scheme.hpp"

namespace coarse {

namespace detail {

inline Int level_code(Int level) { return level * (level - 1) / 2; }

/// Copies native axes [offset, offset + count) and pads with zeros up to `pad_to`.
inline void copy_padded(std::vector<AxisSource>& map, std::size_t offset, std::size_t count,
                        std::size_t pad_to) {
  for (std::size_t t = 0; t < pad_to; ++t) {
    if (t < count) {
      map.push_back(AxisSource{static_cast<int>(offset + t), 0});
    } else {
      map.push_back(AxisSource{-1, 0});
    }
  }
}

inline std::vector<FamilyAxis> singleton_axes(const Slab& slab, std::size_t from, std::size_t to) {
  std::vector<FamilyAxis> out;
  for (std::size_t a = from; a < to; ++a) {
    out.push_back(FamilyAxis{static_cast<int>(a), singleton_labels(slab.axes[a])});
  }
  return out;
}

inline void append_axes(std::vector<Family>& families, const std::vector<FamilyAxis>& axes) {
  for (Family& f : families) f.axes.insert(f.axes.end(), axes.begin(), axes.end());
}

inline CellKey tower_key(const TowerPoint& t) {
  CellKey key{t.level};
  key.insert(key.end(), t.coords.begin(), t.coords.end());
  return key;
}

}  // namespace detail

/// Singletons of every point above level n; nothing below.
inline CoverScheme singleton_cover(const SpaceSpec& spec, Int n) {
  if (spec.kind != SpaceKind::tower && !(spec.kind == SpaceKind::tower_with_factor && spec.factor_dim == 0)) {
    throw std::invalid_argument("singleton cover needs a tower space without a factor block");
  }
  CoverScheme s;
  s.name = "singleton";
  s.space = spec;
  s.colors = 1;
  s.separation = {std::max<Int>(n, 1)};
  s.bound = {0};
  s.domain_note = "levels > " + std::to_string(n);
  s.classify = [n](const Point& p) -> std::optional<Classification> {
    const auto& t = std::get<TowerPoint>(p);
    if (t.level <= n) return std::nullopt;
    CellKey key = detail::tower_key(t);
    key.insert(key.end(), t.extra.begin(), t.extra.end());
    return Classification{0, std::move(key)};
  };
  s.decompose = [n](const NativeLayout& layout, const Slab& slab) -> std::vector<Family> {
    if (slab.tag[0] <= n) return {};
    return {Family{0, {slab.tag[0]}, detail::singleton_axes(slab, 0, layout.size())}};
  };
  return s;
}

/// {x} x U for every x above level n and every cell U of the base cover of Z^k.
inline CoverScheme fiber_product_cover(const CoverScheme& base, StepRule rule, Int n) {
  if (base.space.kind != SpaceKind::plain_lattice) {
    throw std::invalid_argument("fiber product needs a base cover of a lattice");
  }
  const std::size_t k = base.space.lattice_dim();
  CoverScheme s;
  s.name = "fiber-product";
  s.space = SpaceSpec::tower_with_factor(rule, k);
  s.colors = base.colors;
  for (std::size_t c = 0; c < base.colors; ++c) {
    s.separation.push_back(std::min(std::max<Int>(n, 1), base.separation[c]));
  }
  s.bound = base.bound;
  s.domain_note = "levels > " + std::to_string(n) + " times " + base.domain_note;
  auto base_classify = base.classify;
  s.classify = [n, base_classify](const Point& p) -> std::optional<Classification> {
    const auto& t = std::get<TowerPoint>(p);
    if (t.level <= n) return std::nullopt;
    auto inner = base_classify(LatticePoint{t.extra});
    if (!inner) return std::nullopt;
    CellKey key = detail::tower_key(t);
    key.insert(key.end(), inner->cell.begin(), inner->cell.end());
    return Classification{inner->color, std::move(key)};
  };
  if (base.decompose) {
    auto base_decompose = base.decompose;
    s.decompose = [n, k, base_decompose](const NativeLayout& layout, const Slab& slab) {
      std::vector<Family> out;
      if (slab.tag[0] <= n) return out;
      std::vector<AxisSource> map;
      detail::copy_padded(map, layout.first, k, k);
      out = decompose_through(base_decompose, map, static_cast<Int>(k), slab);
      tag_families(out, {slab.tag[0]}, 0);
      detail::append_axes(out, detail::singleton_axes(slab, 0, layout.first));
      return out;
    };
  }
  return s;
}

/// On every fiber {x} x Z of a one-factor tower: intervals of bound + 1 points,
/// consecutive ones `gap` apart, phase-shifted by a digest of x.
inline CoverScheme fiber_intervals_cover(StepRule rule, Int gap, Int bound) {
  if (gap < 1 || bound < 0) throw std::invalid_argument("fiber intervals need gap >= 1, bound >= 0");
  CoverScheme s;
  s.name = "fiber-intervals";
  s.space = SpaceSpec::tower_with_factor(rule, 1);
  s.colors = 1;
  s.separation = {gap};
  s.bound = {bound};
  s.domain_note = "partial: levels >= " + std::to_string(gap) + ", each fiber keeps gaps of " +
                  std::to_string(gap - 1) + " points";
  const Int period = bound + gap;
  // Below level `gap`, distinct fibers can be closer than `gap`.
  s.classify = [period, bound, gap](const Point& p) -> std::optional<Classification> {
    const auto& t = std::get<TowerPoint>(p);
    if (t.level < gap) return std::nullopt;
    Int digest = 7 * t.level;
    for (std::size_t i = 0; i < t.coords.size(); ++i) {
      digest += static_cast<Int>(i + 1) * floor_mod(t.coords[i], period);
    }
    const Int y = t.extra.at(0) - floor_mod(digest, period);
    if (floor_mod(y, period) > bound) return std::nullopt;
    CellKey key = detail::tower_key(t);
    key.push_back(floor_div(y, period));
    return Classification{0, std::move(key)};
  };
  return s;
}

// ---------------------------------------------------------------------------
// Three-region cover of the union of (2^i Z)^i x Z.

inline constexpr std::size_t omega_grid_color(std::size_t grid_color) { return 2 + grid_color; }

inline CoverScheme omega_cover(Int n, Int r) {
  if (!(r > n)) throw std::invalid_argument("omega cover requires r > n");
  if (n <= 2) throw std::invalid_argument("omega cover requires n > 2");
  const auto nn = static_cast<std::size_t>(n);
  const auto rr = static_cast<std::size_t>(r);
  const StaircaseShape stairs(n, r, rr, Interval{detail::level_code(n + 1), detail::level_code(r)});
  const std::size_t grid_colors = std::size_t{1} << (nn + 1);
  const std::size_t high = 2 + grid_colors;

  CoverScheme s;
  s.name = "omega";
  s.space = SpaceSpec::tower_with_factor(StepRule::power_of_two, 1);
  s.colors = high + 2;
  const Int hspan = stairs.height.hi - stairs.height.lo;
  s.separation.assign(s.colors, r);
  s.separation[kStaircaseJ] = n;
  s.bound.assign(s.colors, std::max(r - 1, n * (n - 1) / 2));
  s.bound[kStaircaseJ] = std::max(stairs.period(), hspan);
  s.bound[kStaircaseI] = std::max(n, hspan);
  s.bound[high] = r - 1;
  s.bound[high + 1] = r - 1;
  s.domain_note = "all levels";

  s.classify = [n, r, nn, rr, stairs, high](const Point& p) -> std::optional<Classification> {
    const auto& t = std::get<TowerPoint>(p);
    const Int x_star = t.extra.at(0);
    if (t.level >= r) {
      const Int q = floor_div(x_star, r);
      CellKey key = detail::tower_key(t);
      key.push_back(q);
      return Classification{high + static_cast<std::size_t>(floor_mod(q, 2)), std::move(key)};
    }
    std::vector<Int> v = t.coords;
    if (t.level <= n) {
      v.resize(nn, 0);
      v.push_back(x_star);
      Classification c = grid_classify(v, r);
      c.color = omega_grid_color(c.color);
      return c;
    }
    v.resize(rr, 0);
    v.push_back(x_star);
    v.push_back(detail::level_code(t.level));
    return staircase_classify(stairs, v);
  };

  s.decompose = [n, r, nn, rr, stairs, high](const NativeLayout& layout,
                                              const Slab& slab) -> std::vector<Family> {
    const Int level = slab.tag[0];
    const std::size_t extra_axis = layout.first;
    std::vector<Family> out;
    if (level >= r) {
      for (int side = 0; side < 2; ++side) {
        auto labels = periodic_labels(slab.axes[extra_axis], 2 * r, side * r, r);
        if (labels.empty()) continue;
        Family f{high + static_cast<std::size_t>(side), {3, level}, detail::singleton_axes(slab, 0, layout.first)};
        f.axes.push_back(FamilyAxis{static_cast<int>(extra_axis), std::move(labels)});
        out.push_back(std::move(f));
      }
      return out;
    }
    std::vector<AxisSource> map;
    if (level <= n) {
      detail::copy_padded(map, 0, layout.first, nn);
      map.push_back(AxisSource{static_cast<int>(extra_axis), 0});
      out = decompose_through([r](const NativeLayout&, const Slab& t) { return grid_families(t, r); },
                              map, n + 1, slab);
      tag_families(out, {1}, 2);
      return out;
    }
    detail::copy_padded(map, 0, layout.first, rr);
    map.push_back(AxisSource{static_cast<int>(extra_axis), 0});
    map.push_back(AxisSource{-1, detail::level_code(level)});
    out = decompose_through(
        [stairs](const NativeLayout&, const Slab& t) { return staircase_families(stairs, t); }, map,
        r + 2, slab);
    tag_families(out, {2}, 0);
    return out;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Six-region cover of X x X for X the union of (2^i Z)^i.

struct ProductSquareColors {
  std::size_t grid_both = 1;
  std::size_t grid_first = 0;
  std::size_t grid_second = 0;
  std::size_t mixed_first = 0;
  std::size_t mixed_second = 0;
  std::size_t total = 0;

  explicit ProductSquareColors(Int k) {
    const auto kk = static_cast<std::size_t>(k);
    const std::size_t one_factor = std::size_t{1} << (kk + 1);
    const std::size_t mixed = (kk + 2) * (std::size_t{1} << (kk + 2));
    grid_first = grid_both + (std::size_t{1} << (2 * kk + 2));
    grid_second = grid_first + one_factor;
    mixed_first = grid_second + one_factor;
    mixed_second = mixed_first + mixed;
    total = mixed_second + mixed;
  }

  /// Global color of a mixed-grid type; type 0 merges into color 0.
  [[nodiscard]] static std::size_t mixed_color(std::size_t base, std::size_t type) {
    return type == 0 ? 0 : base + type - 1;
  }
};

enum class SquareRegion { high, both_low, low_high, high_low, low_mid, mid_low };

inline SquareRegion square_region(Int k, Int n, Int l1, Int l2) {
  if (l1 > k && l2 > k) return SquareRegion::high;
  if (l1 <= k && l2 <= k) return SquareRegion::both_low;
  if (l1 <= k) return l2 > n ? SquareRegion::low_high : SquareRegion::low_mid;
  return l1 > n ? SquareRegion::high_low : SquareRegion::mid_low;
}

inline CoverScheme product_square_cover(Int k, Int n) {
  if (k < 1) throw std::invalid_argument("product square cover needs k >= 1");
  if (n < k) throw std::invalid_argument("product square cover requires n >= k");
  if (k > 6) throw std::invalid_argument("product square cover: k too large");
  const auto kk = static_cast<std::size_t>(k);
  const auto nn = static_cast<std::size_t>(n);
  const ProductSquareColors colors(k);
  const StripedGrid mixed = mixed_grid_shape(kk + 2, nn, pow2(k), n);

  CoverScheme s;
  s.name = "product-square";
  s.space = SpaceSpec::product_of_towers(StepRule::power_of_two);
  s.colors = colors.total;
  s.separation.assign(s.colors, n);
  s.separation[0] = k;
  s.bound.assign(s.colors, n - 1);
  for (std::size_t c = colors.mixed_first; c < colors.total; ++c) s.bound[c] = std::max(n - 1, pow2(k) - 1);
  s.bound[0] = std::max(mixed.period - pow2(k) - 1, n - 1);
  s.domain_note = "all of X x X";

  // Low factor: coordinates padded to k then the level code.
  auto low_part = [kk](const TowerPoint& t) {
    std::vector<Int> v = t.coords;
    v.resize(kk, 0);
    v.push_back(detail::level_code(t.level));
    return v;
  };

  s.classify = [k, n, kk, nn, colors, mixed, low_part](const Point& p) -> std::optional<Classification> {
    const auto& q = std::get<TowerPair>(p);
    const TowerPoint& a = q.first;
    const TowerPoint& b = q.second;
    const SquareRegion region = square_region(k, n, a.level, b.level);
    Classification c;
    c.cell.push_back(static_cast<Int>(region) + 1);
    auto append = [&c](const std::vector<Int>& v) { c.cell.insert(c.cell.end(), v.begin(), v.end()); };
    switch (region) {
      case SquareRegion::high:
        c.color = 0;
        append(detail::tower_key(a));
        append(detail::tower_key(b));
        return c;
      case SquareRegion::both_low: {
        std::vector<Int> v = low_part(a);
        const std::vector<Int> w = low_part(b);
        v.insert(v.end(), w.begin(), w.end());
        Classification g = grid_classify(v, n);
        c.color = colors.grid_both + g.color;
        append(g.cell);
        return c;
      }
      case SquareRegion::low_high:
      case SquareRegion::high_low: {
        const bool first_low = region == SquareRegion::low_high;
        const TowerPoint& low = first_low ? a : b;
        const TowerPoint& high = first_low ? b : a;
        Classification g = grid_classify(low_part(low), n);
        c.color = (first_low ? colors.grid_first : colors.grid_second) + g.color;
        append(detail::tower_key(high));
        append(g.cell);
        return c;
      }
      case SquareRegion::low_mid:
      case SquareRegion::mid_low: {
        const bool first_low = region == SquareRegion::low_mid;
        const TowerPoint& low = first_low ? a : b;
        const TowerPoint& mid = first_low ? b : a;
        std::vector<Int> v = low_part(low);
        v.push_back(detail::level_code(mid.level));
        std::vector<Int> y = mid.coords;
        y.resize(nn, 0);
        v.insert(v.end(), y.begin(), y.end());
        auto h = mixed.classify(v);
        c.color = ProductSquareColors::mixed_color(first_low ? colors.mixed_first : colors.mixed_second, h.type);
        c.cell.push_back(static_cast<Int>(h.type));
        append(h.key);
        return c;
      }
    }
    return std::nullopt;
  };

  s.decompose = [k, n, kk, nn, colors, mixed](const NativeLayout& layout,
                                               const Slab& slab) -> std::vector<Family> {
    const Int l1 = slab.tag.at(0);
    const Int l2 = slab.tag.at(1);
    const std::size_t first = layout.first;
    const std::size_t second = layout.second;
    const SquareRegion region = square_region(k, n, l1, l2);
    std::vector<Family> out;
    auto low_map = [&](std::vector<AxisSource>& map, bool first_factor, Int level) {
      const std::size_t offset = first_factor ? 0 : first;
      const std::size_t avail = first_factor ? first : second;
      detail::copy_padded(map, offset, std::min(avail, kk), kk);
      map.push_back(AxisSource{-1, detail::level_code(level)});
    };
    auto grid = [n](const NativeLayout&, const Slab& t) { return grid_families(t, n); };
    switch (region) {
      case SquareRegion::high:
        out.push_back(Family{0, {1, l1, l2}, detail::singleton_axes(slab, 0, layout.size())});
        return out;
      case SquareRegion::both_low: {
        std::vector<AxisSource> map;
        low_map(map, true, l1);
        low_map(map, false, l2);
        out = decompose_through(grid, map, 2 * k + 2, slab);
        tag_families(out, {2}, colors.grid_both);
        return out;
      }
      case SquareRegion::low_high:
      case SquareRegion::high_low: {
        const bool first_low = region == SquareRegion::low_high;
        std::vector<AxisSource> map;
        low_map(map, first_low, first_low ? l1 : l2);
        out = decompose_through(grid, map, k + 1, slab);
        tag_families(out, {first_low ? 3 : 4, first_low ? l2 : l1},
                     first_low ? colors.grid_first : colors.grid_second);
        detail::append_axes(out, first_low ? detail::singleton_axes(slab, first, first + second)
                                           : detail::singleton_axes(slab, 0, first));
        return out;
      }
      case SquareRegion::low_mid:
      case SquareRegion::mid_low: {
        const bool first_low = region == SquareRegion::low_mid;
        std::vector<AxisSource> map;
        low_map(map, first_low, first_low ? l1 : l2);
        map.push_back(AxisSource{-1, detail::level_code(first_low ? l2 : l1)});
        const std::size_t offset = first_low ? first : 0;
        const std::size_t avail = first_low ? second : first;
        detail::copy_padded(map, offset, std::min(avail, nn), nn);
        out = decompose_through([mixed](const NativeLayout&, const Slab& t) { return mixed.families(t); },
                                map, k + 2 + n, slab);
        const std::size_t base = first_low ? colors.mixed_first : colors.mixed_second;
        const Int region_tag = first_low ? 5 : 6;
        for (Family& f : out) {
          const std::size_t type = f.color;
          f.color = ProductSquareColors::mixed_color(base, type);
          f.id.insert(f.id.begin(), region_tag);
        }
        return out;
      }
    }
    return out;
  };
  return s;
}

}  // namespace coarse
