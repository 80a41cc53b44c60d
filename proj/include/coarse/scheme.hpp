#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/points.hpp"
#include "coarse/window.hpp"

namespace coarse {

using CellKey = std::vector<Int>;

struct Classification {
  std::size_t color = 0;
  CellKey cell;
  friend bool operator==(const Classification&, const Classification&) = default;
};

// ---------------------------------------------------------------------------
// Per-axis description of a scheme on one slab.
//
// A family is a product: along each listed axis the admissible values are
// split into labelled pieces, and a cell is one label per axis. Axes of the
// slab that a family does not list are unrestricted. A key-only axis
// (native < 0) carries a single label and stands for a coordinate that is
// constant on the slab but still distinguishes cells.

struct Label {
  Int key = 0;
  std::vector<Run> runs;  // sorted, pairwise disjoint ranges
};

struct FamilyAxis {
  int native = -1;
  std::vector<Label> labels;  // sorted by first run
};

struct Family {
  std::size_t color = 0;
  std::vector<Int> id;
  std::vector<FamilyAxis> axes;
};

using Decomposer = std::function<std::vector<Family>(const NativeLayout&, const Slab&)>;
using Classifier = std::function<std::optional<Classification>(const Point&)>;

/// A family of families given intensionally: a total classification with
/// declared per-color separation and diameter bound.
struct CoverScheme {
  std::string name;
  SpaceSpec space;
  std::size_t colors = 0;
  std::vector<Int> separation;
  std::vector<Int> bound;
  std::string domain_note;
  Classifier classify;
  Decomposer decompose;  // optional; enables the structured verifier
};

/// Classifies a point, rejecting points that are not in the scheme's space.
inline std::optional<Classification> classify_point(const CoverScheme& s, const Point& p) {
  validate(s.space, p);
  auto out = s.classify(p);
  if (out && out->color >= s.colors) {
    throw std::logic_error(s.name + " produced color " + std::to_string(out->color) +
                           " of " + std::to_string(s.colors));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Label builders.

/// Labels for the intervals [j*period + offset, j*period + offset + width - 1] keyed by j.
inline std::vector<Label> periodic_labels(const Run& axis, Int period, Int offset, Int width) {
  std::vector<Label> out;
  if (axis.empty() || width <= 0) return out;
  const Int j_lo = floor_div(axis.lo - offset - width + 1, period);
  const Int j_hi = floor_div(axis.hi - offset, period);
  for (Int j = j_lo; j <= j_hi; ++j) {
    const Int lo = checked_add(checked_mul(j, period), offset);
    Run r = clip_run(axis, lo, checked_add(lo, width - 1));
    if (!r.empty()) out.push_back(Label{j, {r}});
  }
  return out;
}

/// One label per value of the axis, keyed by the value.
inline std::vector<Label> singleton_labels(const Run& axis) {
  std::vector<Label> out;
  for (Int i = 0; i < axis.count(); ++i) {
    const Int v = axis.at(i);
    out.push_back(Label{v, {Run{v, v, axis.step}}});
  }
  return out;
}

/// A single label covering the whole axis.
inline std::vector<Label> whole_label(const Run& axis, Int key = 0) {
  if (axis.empty()) return {};
  return {Label{key, {axis}}};
}

/// Keeps, inside every label, only the values that lie in some run of `mask`.
inline std::vector<Label> intersect_labels(const std::vector<Label>& labels,
                                           const std::vector<Label>& mask) {
  std::vector<Run> mask_runs;
  for (const Label& m : mask) mask_runs.insert(mask_runs.end(), m.runs.begin(), m.runs.end());
  std::sort(mask_runs.begin(), mask_runs.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });
  std::vector<Label> out;
  for (const Label& l : labels) {
    Label kept{l.key, {}};
    for (const Run& r : l.runs) {
      auto it = std::lower_bound(mask_runs.begin(), mask_runs.end(), r.lo,
                                 [](const Run& m, Int v) { return m.hi < v; });
      for (; it != mask_runs.end() && it->lo <= r.hi; ++it) {
        Run piece = clip_run(r, it->lo, it->hi);
        if (piece.empty()) continue;
        // A coarser mask keeps only the common multiples.
        if (it->step != 1 && it->step != r.step) {
          for (Int i = 0; i < piece.count(); ++i) {
            const Int v = piece.at(i);
            if (it->contains(v)) kept.runs.push_back(Run{v, v, piece.step});
          }
        } else {
          kept.runs.push_back(piece);
        }
      }
    }
    if (!kept.runs.empty()) out.push_back(std::move(kept));
  }
  return out;
}

/// Where a target coordinate of an embedding comes from on a given slab.
struct AxisSource {
  int native = -1;  // native axis of the source slab, or -1 for a constant
  Int constant = 0;
};

/// Target slab seen through an embedding that copies or fixes coordinates.
inline Slab embedded_slab(const Slab& source, const std::vector<AxisSource>& map) {
  Slab t;
  for (const AxisSource& a : map) {
    if (a.native >= 0) {
      t.axes.push_back(source.axes.at(static_cast<std::size_t>(a.native)));
    } else {
      t.axes.push_back(Run{a.constant, a.constant, 1});
    }
  }
  return t;
}

/// Pulls target families back through a coordinate embedding.
///
/// Copied coordinates become native axes; fixed coordinates become key-only
/// axes whose single label is the one holding the constant.
inline std::vector<Family> pull_families(const std::vector<Family>& target,
                                         const std::vector<AxisSource>& map) {
  std::vector<Family> out;
  for (const Family& f : target) {
    Family g{f.color, f.id, {}};
    bool empty = false;
    for (const FamilyAxis& ax : f.axes) {
      const AxisSource& src = map.at(static_cast<std::size_t>(ax.native));
      if (ax.labels.empty()) {
        empty = true;
        break;
      }
      if (src.native >= 0) {
        g.axes.push_back(FamilyAxis{src.native, ax.labels});
      } else {
        g.axes.push_back(FamilyAxis{-1, {Label{ax.labels.front().key, {Run{0, 0, 1}}}}});
      }
    }
    if (!empty) out.push_back(std::move(g));
  }
  return out;
}

/// Runs `decompose` of a target scheme on the embedded slab and pulls the result back.
inline std::vector<Family> decompose_through(const Decomposer& decompose,
                                             const std::vector<AxisSource>& map, Int target_dim,
                                             const Slab& source) {
  NativeLayout target_layout;
  target_layout.kind = SpaceKind::plain_lattice;
  target_layout.first = static_cast<std::size_t>(target_dim);
  return pull_families(decompose(target_layout, embedded_slab(source, map)), map);
}

/// Prepends `prefix` to every family id and shifts colors by `color_offset`.
inline void tag_families(std::vector<Family>& families, const std::vector<Int>& prefix,
                         std::size_t color_offset) {
  for (Family& f : families) {
    f.id.insert(f.id.begin(), prefix.begin(), prefix.end());
    f.color += color_offset;
  }
}

}  // namespace coarse
