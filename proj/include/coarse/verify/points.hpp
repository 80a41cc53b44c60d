#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "coarse/scheme.hpp"
#include "coarse/verify/native.hpp"
#include "coarse/verify/parallel.hpp"
#include "coarse/verify/report.hpp"

namespace coarse {

namespace detail {

struct NativeEntry {
  std::vector<Int> tag;
  std::vector<Int> coords;
  std::uint32_t cell = 0;
};

struct ColorPoints {
  std::vector<NativeEntry> entries;
  std::uint32_t cells = 0;
};

inline Int cell_diameter(SpaceKind kind, const std::vector<const NativeEntry*>& cell) {
  if (cell.size() < 2) return 0;
  if (kind == SpaceKind::shift_union) {
    Int best = 0;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      for (std::size_t j = i + 1; j < cell.size(); ++j) {
        best = std::max(best, native_distance(kind, cell[i]->tag, cell[i]->coords, cell[j]->tag, cell[j]->coords));
      }
    }
    return best;
  }
  // Maximum metrics: every term is maximized independently.
  std::vector<Int> lo = cell.front()->coords, hi = lo;
  std::vector<Int> tag_lo = cell.front()->tag, tag_hi = tag_lo;
  for (const NativeEntry* e : cell) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], e->coords[i]);
      hi[i] = std::max(hi[i], e->coords[i]);
    }
    for (std::size_t i = 0; i < tag_lo.size(); ++i) {
      tag_lo[i] = std::min(tag_lo[i], e->tag[i]);
      tag_hi[i] = std::max(tag_hi[i], e->tag[i]);
    }
  }
  Int best = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) best = std::max(best, hi[i] - lo[i]);
  if (!tag_lo.empty()) {
    for (std::size_t i = 0; i < tag_lo.size(); ++i) {
      std::vector<Int> a(tag_lo.size(), 1), b(tag_lo.size(), 1);
      a[i] = tag_lo[i];
      b[i] = tag_hi[i];
      best = std::max(best, tag_penalty(kind, a, b));
    }
  }
  return best;
}

/// Least distance between points of distinct cells, by a sweep along the widest axis.
inline std::optional<Int> min_cross_cell(SpaceKind kind, const std::vector<NativeEntry>& entries) {
  if (entries.empty()) return std::nullopt;
  const std::size_t dim = entries.front().coords.size();
  std::size_t axis = 0;
  Int widest = -1;
  for (std::size_t i = 0; i < dim; ++i) {
    Int lo = kInfinity, hi = -kInfinity;
    for (const NativeEntry& e : entries) {
      lo = std::min(lo, e.coords[i]);
      hi = std::max(hi, e.coords[i]);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = i;
    }
  }
  auto proj = [&](const NativeEntry& e) { return dim == 0 ? Int{0} : e.coords[axis]; };
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj(entries[a]) < proj(entries[b]); });
  Int best = kInfinity;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NativeEntry& p = entries[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const NativeEntry& q = entries[order[j]];
      if (proj(q) - proj(p) >= best) break;
      if (p.cell == q.cell) continue;
      best = std::min(best, native_distance(kind, p.tag, p.coords, q.tag, q.coords));
    }
  }
  if (best == kInfinity) return std::nullopt;
  return best;
}

}  // namespace detail

/// Exact verification by enumerating every window point.
inline VerificationReport verify_points(const CoverScheme& s, const Window& w, const VerifyOptions& opt = {}) {
  VerificationReport report;
  report.scheme = s.name;
  report.method = "points";
  report.window = w;
  const SlabSet set = make_slabs(s.space, w);
  report.points = set.points();
  std::vector<detail::ColorPoints> colors(s.colors);
  std::vector<std::map<CellKey, std::uint32_t>> cell_index(s.colors);
  for_each_native(set, [&](const Slab& slab, const std::vector<Int>& coords) {
    const Point p = from_native(set.layout, slab.tag, coords);
    std::optional<Classification> c;
    try {
      c = classify_point(s, p);
    } catch (const DomainError& e) {
      if (static_cast<Int>(report.errors.size()) < opt.max_uncovered_listed) report.errors.push_back({p, e.what()});
      ++report.uncovered_total;
      return;
    }
    if (!c) {
      if (static_cast<Int>(report.uncovered.size()) < opt.max_uncovered_listed) report.uncovered.push_back(p);
      ++report.uncovered_total;
      return;
    }
    auto [it, fresh] = cell_index[c->color].try_emplace(c->cell, colors[c->color].cells);
    if (fresh) ++colors[c->color].cells;
    colors[c->color].entries.push_back({slab.tag, coords, it->second});
  });
  report.colors.resize(s.colors);
  parallel_for(s.colors, opt.workers, [&](std::size_t color) {
    ColorRecord& rec = report.colors[color];
    rec.color = color;
    rec.declared_separation = s.separation.at(color);
    rec.declared_bound = s.bound.at(color);
    const detail::ColorPoints& cp = colors[color];
    rec.cells_seen = cp.cells;
    std::vector<std::vector<const detail::NativeEntry*>> cells(cp.cells);
    for (const auto& e : cp.entries) cells[e.cell].push_back(&e);
    for (const auto& cell : cells) rec.max_diameter = std::max(rec.max_diameter, detail::cell_diameter(s.space.kind, cell));
    if (cp.cells >= 2) rec.min_separation = detail::min_cross_cell(s.space.kind, cp.entries);
  });
  finalize(report);
  return report;
}

}  // namespace coarse
