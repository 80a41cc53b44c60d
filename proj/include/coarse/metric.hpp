#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/points.hpp"

namespace coarse {

/// Coordinates of `p` zero-padded up to `target_level`, followed by the factor block.
inline std::vector<Int> pad_point(const TowerPoint& p, Int target_level) {
  if (target_level < p.level) {
    throw std::invalid_argument("cannot truncate a level-" + std::to_string(p.level) +
                                " point to level " + std::to_string(target_level));
  }
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(target_level) + p.extra.size());
  out.insert(out.end(), p.coords.begin(), p.coords.end());
  out.resize(static_cast<std::size_t>(target_level), 0);
  out.insert(out.end(), p.extra.begin(), p.extra.end());
  return out;
}

inline Int max_metric(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("maximum metric needs equal dimensions");
  }
  Int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, abs_diff(a[i], b[i]));
  }
  return best;
}

inline Int tower_distance(const TowerPoint& a, const TowerPoint& b) {
  if (a.extra.size() != b.extra.size()) {
    throw std::invalid_argument("tower points carry factor blocks of different dimension");
  }
  const TowerPoint& low = a.level <= b.level ? a : b;
  const TowerPoint& high = a.level <= b.level ? b : a;
  const Int dmax = max_metric(pad_point(low, high.level), pad_point(high, high.level));
  return std::max(dmax, level_penalty_sum(low.level, high.level));
}

inline Int tower_distance(const TowerPoint& a, const TowerPoint& b, const SpaceSpec& spec) {
  validate(spec, a);
  validate(spec, b);
  return tower_distance(a, b);
}

inline Int shift_distance(const ShiftPoint& x, const ShiftPoint& y) {
  Int total = abs_diff(x.level, y.level);
  auto i = x.support.begin();
  auto j = y.support.begin();
  while (i != x.support.end() || j != y.support.end()) {
    if (j == y.support.end() || (i != x.support.end() && i->first < j->first)) {
      total = checked_add(total, abs_diff(i->second, 0));
      ++i;
    } else if (i == x.support.end() || j->first < i->first) {
      total = checked_add(total, abs_diff(j->second, 0));
      ++j;
    } else {
      total = checked_add(total, abs_diff(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return total;
}

inline Int pair_distance(const TowerPair& p, const TowerPair& q) {
  return std::max(tower_distance(p.first, q.first), tower_distance(p.second, q.second));
}

/// Distance of two points of the same space. Both points must have the variant kind the space uses.
inline Int distance(const SpaceSpec& spec, const Point& a, const Point& b) {
  switch (spec.kind) {
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor:
      return tower_distance(std::get<TowerPoint>(a), std::get<TowerPoint>(b));
    case SpaceKind::shift_union:
      return shift_distance(std::get<ShiftPoint>(a), std::get<ShiftPoint>(b));
    case SpaceKind::product_of_towers:
      return pair_distance(std::get<TowerPair>(a), std::get<TowerPair>(b));
    case SpaceKind::plain_lattice:
      return max_metric(std::get<LatticePoint>(a).coords, std::get<LatticePoint>(b).coords);
  }
  throw std::logic_error("unknown space kind");
}

}  // namespace coarse
