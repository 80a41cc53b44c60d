#pragma once

#include <vector>

#include "coarse/window.hpp"

namespace coarse {

/// Combines per-axis differences: maximum, or sum for the shift union.
struct Combine {
  bool sum = false;

  explicit Combine(SpaceKind kind) : sum(kind == SpaceKind::shift_union) {}

  [[nodiscard]] Int operator()(Int a, Int b) const {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return sum ? checked_add(a, b) : std::max(a, b);
  }
  [[nodiscard]] Int identity() const { return 0; }
};

/// Distance of two window points given in native form.
inline Int native_distance(SpaceKind kind, const std::vector<Int>& tag_a, const std::vector<Int>& a,
                           const std::vector<Int>& tag_b, const std::vector<Int>& b) {
  const Combine combine(kind);
  Int d = tag_penalty(kind, tag_a, tag_b);
  for (std::size_t i = 0; i < a.size(); ++i) d = combine(d, abs_diff(a[i], b[i]));
  return d;
}

}  // namespace coarse
