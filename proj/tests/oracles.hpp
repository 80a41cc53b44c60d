#pragma once

// Brute-force references used by the tests. Nothing here calls the library's
// metric, enumeration or verifier code.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "coarse/scheme.hpp"

namespace oracle {

using coarse::Int;
using coarse::Point;

inline Int level_sum(Int lo, Int hi) {
  Int c = 0;
  for (Int t = lo; t < hi; ++t) c += t;
  return c;
}

inline Int tower(const coarse::TowerPoint& a, const coarse::TowerPoint& b) {
  const Int top = std::max(a.level, b.level);
  Int d = 0;
  for (Int i = 0; i < top; ++i) {
    const Int x = i < a.level ? a.coords[static_cast<std::size_t>(i)] : 0;
    const Int y = i < b.level ? b.coords[static_cast<std::size_t>(i)] : 0;
    d = std::max(d, std::abs(x - y));
  }
  for (std::size_t i = 0; i < a.extra.size(); ++i) d = std::max(d, std::abs(a.extra[i] - b.extra[i]));
  return std::max(d, level_sum(std::min(a.level, b.level), top));
}

inline Int shift(const coarse::ShiftPoint& a, const coarse::ShiftPoint& b) {
  std::map<Int, Int> diff;
  for (auto [i, v] : a.support) diff[i] += v;
  for (auto [i, v] : b.support) diff[i] -= v;
  Int d = std::abs(a.level - b.level);
  for (auto [i, v] : diff) d += std::abs(v);
  return d;
}

inline Int distance(const Point& a, const Point& b) {
  if (const auto* p = std::get_if<coarse::LatticePoint>(&a)) {
    const auto& q = std::get<coarse::LatticePoint>(b);
    Int d = 0;
    for (std::size_t i = 0; i < p->coords.size(); ++i) d = std::max(d, std::abs(p->coords[i] - q.coords[i]));
    return d;
  }
  if (const auto* p = std::get_if<coarse::TowerPoint>(&a)) return tower(*p, std::get<coarse::TowerPoint>(b));
  if (const auto* p = std::get_if<coarse::ShiftPoint>(&a)) return shift(*p, std::get<coarse::ShiftPoint>(b));
  const auto& p = std::get<coarse::TowerPair>(a);
  const auto& q = std::get<coarse::TowerPair>(b);
  return std::max(tower(p.first, q.first), tower(p.second, q.second));
}

inline Int step(coarse::StepRule rule, Int level) {
  Int s = 1;
  if (rule == coarse::StepRule::identity) return level;
  for (Int i = 0; i < level; ++i) s *= 2;
  return s;
}

/// Every integer vector of length `dim` in [lo, hi]^dim whose entries pass `keep`.
inline std::vector<std::vector<Int>> vectors(std::size_t dim, Int lo, Int hi,
                                             const std::function<bool(std::size_t, Int)>& keep) {
  std::vector<std::vector<Int>> out{{}};
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::vector<Int>> next;
    for (const auto& v : out) {
      for (Int x = lo; x <= hi; ++x) {
        if (!keep(i, x)) continue;
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Point> tower_points(coarse::StepRule rule, Int level_lo, Int level_hi, Int lo, Int hi,
                                       std::size_t extra_dim = 0, Int extra_lo = 0, Int extra_hi = 0) {
  std::vector<Point> out;
  for (Int level = level_lo; level <= level_hi; ++level) {
    const Int s = step(rule, level);
    for (const auto& c : vectors(static_cast<std::size_t>(level), lo, hi, [s](std::size_t, Int x) { return x % s == 0; })) {
      for (const auto& e : vectors(extra_dim, extra_lo, extra_hi, [](std::size_t, Int) { return true; })) {
        out.push_back(coarse::TowerPoint{level, c, e});
      }
    }
  }
  return out;
}

/// Shift points of levels [level_lo, level_hi] with indices level_lo..max_index.
inline std::vector<Point> shift_points(Int level_lo, Int level_hi, Int max_index, Int lo, Int hi) {
  std::vector<Point> out;
  const auto count = static_cast<std::size_t>(max_index - level_lo + 1);
  for (Int level = level_lo; level <= level_hi; ++level) {
    auto keep = [level, level_lo](std::size_t t, Int x) {
      const Int index = level_lo + static_cast<Int>(t);
      if (index < level) return x == 0;
      return x % (index - level + 1) == 0;
    };
    for (const auto& v : vectors(count, lo, hi, keep)) {
      coarse::ShiftPoint p;
      p.level = level;
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] != 0) p.support[level_lo + static_cast<Int>(t)] = v[t];
      }
      out.push_back(p);
    }
  }
  return out;
}

struct ColorStats {
  std::size_t cells = 0;
  Int max_diameter = 0;
  std::optional<Int> min_separation;
};

struct CoverStats {
  std::map<std::size_t, ColorStats> colors;
  std::size_t uncovered = 0;
};

/// Groups points by (color, cell) and measures every pair.
inline CoverStats measure(const coarse::CoverScheme& s, const std::vector<Point>& points) {
  std::map<std::size_t, std::map<coarse::CellKey, std::vector<Point>>> groups;
  CoverStats out;
  for (const Point& p : points) {
    auto c = s.classify(p);
    if (!c) {
      ++out.uncovered;
      continue;
    }
    groups[c->color][c->cell].push_back(p);
  }
  for (const auto& [color, cells] : groups) {
    ColorStats& st = out.colors[color];
    st.cells = cells.size();
    std::vector<std::pair<const coarse::CellKey*, const Point*>> flat;
    for (const auto& [key, pts] : cells) {
      for (const Point& p : pts) flat.emplace_back(&key, &p);
    }
    for (std::size_t i = 0; i < flat.size(); ++i) {
      for (std::size_t j = i + 1; j < flat.size(); ++j) {
        const Int d = distance(*flat[i].second, *flat[j].second);
        if (*flat[i].first == *flat[j].first) {
          st.max_diameter = std::max(st.max_diameter, d);
        } else if (!st.min_separation || d < *st.min_separation) {
          st.min_separation = d;
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
