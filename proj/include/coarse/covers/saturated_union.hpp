#pragma once

#include <stdexcept>

#include "coarse/partition.hpp"

namespace coarse {

/// r-saturated union of V and U.
///
/// Every U within distance r of some V joins the nearest such V (smallest
/// key on ties); the others are kept as they are. Output keys are [0, V key]
/// and [1, U key].
inline FiniteFamily saturated_union(const SpaceSpec& spec, const FiniteFamily& V, const FiniteFamily& U, Int r) {
  if (r <= 0) throw std::invalid_argument("saturated union needs r > 0");
  FiniteFamily out;
  auto tagged = [](Int tag, const CellKey& key) {
    CellKey k{tag};
    k.insert(k.end(), key.begin(), key.end());
    return k;
  };
  for (const auto& [key, pts] : V.cells) out.cells[tagged(0, key)] = pts;
  for (const auto& [ukey, upts] : U.cells) {
    const CellKey* nearest = nullptr;
    Int nearest_d = kInfinity;
    for (const auto& [vkey, vpts] : V.cells) {
      const Int d = set_distance(spec, upts, vpts);
      if (d <= r && d < nearest_d) {
        nearest = &vkey;
        nearest_d = d;
      }
    }
    if (nearest == nullptr) {
      out.cells[tagged(1, ukey)] = upts;
      continue;
    }
    auto& cell = out.cells[tagged(0, *nearest)];
    cell.insert(cell.end(), upts.begin(), upts.end());
  }
  for (auto& [key, pts] : out.cells) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  return out;
}

}  // namespace coarse
