#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/covers/lattice_covers.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/scheme.hpp"

namespace coarse {

/// Block layout of the shift-union cover: levels [2bk, 2bk + 2k - 1] form block b.
struct ShiftBlocks {
  Int k = 1;
  Int m = 1;

  [[nodiscard]] Int block_of(Int level) const { return floor_div(level, 2 * k); }
  [[nodiscard]] Int first_index(Int block) const { return 2 * block * k; }
  [[nodiscard]] Int tail_index(Int block) const { return first_index(block) + 3 * k + m; }
};

inline StripedGrid shift_union_shape(Int k, Int m) {
  StripedGrid g;
  g.x_count = static_cast<std::size_t>(3 * k);
  g.y_count = static_cast<std::size_t>(m);
  const Int S = k + m;
  g.period = checked_mul(pow2(m), 2 * S);
  g.d_width = k;
  g.l_step = 2 * S;
  g.d_base = -m - k;
  g.x_gap = m;
  g.y_gap = m;
  return g;
}

/// Color of a striped-grid type in a block of the given parity.
inline std::size_t shift_union_color(std::size_t type, Int block) {
  const auto parity = static_cast<std::size_t>(floor_mod(block, 2));
  return type == 0 ? parity : 2 * type + parity;
}

inline CoverScheme shift_union_cover(Int k, Int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("shift-union cover needs k, m >= 1");
  if (3 * k > 15 || m > 15) throw std::invalid_argument("shift-union cover parameters too large");
  const ShiftBlocks blocks{k, m};
  const StripedGrid g = shift_union_shape(k, m);
  const auto axes = static_cast<Int>(g.x_count + g.y_count);

  CoverScheme s;
  s.name = "shift-union";
  s.space = SpaceSpec::shift_union();
  s.colors = 2 * g.types();
  s.separation.assign(s.colors, m);
  s.separation[0] = k;
  s.separation[1] = k;
  const Int level_span = 2 * k - 1;
  const Int w_spread = m * (m - 1);
  s.bound.assign(s.colors, (3 * k - 1) * (m - 1) + (k - 1) + w_spread + level_span);
  s.bound[0] = 3 * k * (g.period - k - 1) + w_spread + level_span;
  s.bound[1] = s.bound[0];
  s.domain_note = "all of the shift union";

  s.classify = [blocks, g, axes](const Point& p) -> std::optional<Classification> {
    const auto& x = std::get<ShiftPoint>(p);
    const Int block = blocks.block_of(x.level);
    const Int b = blocks.first_index(block);
    std::vector<Int> v;
    for (Int t = 0; t < axes; ++t) v.push_back(x.at(b + t));
    auto h = g.classify(v);
    Classification c;
    c.color = shift_union_color(h.type, block);
    c.cell.push_back(block);
    c.cell.insert(c.cell.end(), h.key.begin(), h.key.end());
    for (auto it = x.support.lower_bound(blocks.tail_index(block)); it != x.support.end(); ++it) {
      c.cell.push_back(it->first);
      c.cell.push_back(it->second);
    }
    return c;
  };

  s.decompose = [blocks, g, axes](const NativeLayout& layout, const Slab& slab) {
    const Int block = blocks.block_of(slab.tag.at(0));
    const Int b = blocks.first_index(block);
    const auto width = static_cast<Int>(layout.first);
    std::vector<AxisSource> map;
    for (Int t = 0; t < axes; ++t) {
      const Int native = b + t - layout.index_lo;
      if (native >= 0 && native < width) {
        map.push_back(AxisSource{static_cast<int>(native), 0});
      } else {
        map.push_back(AxisSource{-1, 0});
      }
    }
    auto out = decompose_through([g](const NativeLayout&, const Slab& t) { return g.families(t); }, map,
                                 axes, slab);
    const Int tail = std::max<Int>(blocks.tail_index(block) - layout.index_lo, 0);
    const auto tail_axes =
        tail < width ? detail::singleton_axes(slab, static_cast<std::size_t>(tail), layout.first)
                     : std::vector<FamilyAxis>{};
    for (Family& f : out) {
      f.color = shift_union_color(f.color, block);
      f.id.insert(f.id.begin(), block);
      f.axes.insert(f.axes.end(), tail_axes.begin(), tail_axes.end());
    }
    return out;
  };
  return s;
}

}  // namespace coarse
