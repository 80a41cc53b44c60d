#pragma once

#include <map>
#include <vector>

#include "coarse/scheme.hpp"
#include "coarse/window.hpp"

namespace coarse {

/// Explicit cells keyed by CellKey; points inside a cell are kept sorted.
struct FiniteFamily {
  std::map<CellKey, std::vector<Point>> cells;

  [[nodiscard]] bool empty() const { return cells.empty(); }
  [[nodiscard]] std::size_t point_count() const {
    std::size_t n = 0;
    for (const auto& [key, pts] : cells) n += pts.size();
    return n;
  }
  [[nodiscard]] std::vector<Point> points() const {
    std::vector<Point> out;
    for (const auto& [key, pts] : cells) out.insert(out.end(), pts.begin(), pts.end());
    return out;
  }
};

struct Materialized {
  std::vector<FiniteFamily> by_color;
  std::vector<Point> uncovered;
};

/// Groups the window's points by (color, cell), in enumeration order.
inline Materialized materialize(const CoverScheme& s, const Window& w) {
  Materialized out;
  out.by_color.resize(s.colors);
  for (const Point& p : enumerate_window(s.space, w)) {
    auto c = classify_point(s, p);
    if (!c) {
      out.uncovered.push_back(p);
      continue;
    }
    out.by_color[c->color].cells[c->cell].push_back(p);
  }
  return out;
}

/// Least distance between two finite point sets.
inline Int set_distance(const SpaceSpec& spec, const std::vector<Point>& a, const std::vector<Point>& b) {
  Int best = kInfinity;
  for (const Point& p : a) {
    for (const Point& q : b) best = std::min(best, distance(spec, p, q));
  }
  return best;
}

inline Int set_diameter(const SpaceSpec& spec, const std::vector<Point>& a) {
  Int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, distance(spec, a[i], a[j]));
  }
  return best;
}

}  // namespace coarse
