#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/scheme.hpp"
#include "coarse/verify/native.hpp"
#include "coarse/verify/parallel.hpp"
#include "coarse/verify/report.hpp"

namespace coarse {

// ---------------------------------------------------------------------------
// Exact distances between arithmetic progressions.

/// Least |x - v| over the points v of `b`.
inline Int distance_to_run(Int x, const Run& b) {
  if (x <= b.lo) return b.lo - x;
  if (x >= b.hi) return x - b.hi;
  const Int r = floor_mod(x - b.lo, b.step);
  return std::min(r, b.step - r);
}

/// Least |x - y| over x in `a`, y in `b`.
inline Int run_gap(const Run& a, const Run& b) {
  if (a.empty() || b.empty()) return kInfinity;
  if (a.hi < b.lo) return b.lo - a.hi;
  if (b.hi < a.lo) return a.lo - b.hi;
  // Overlapping ranges: the residue of a point of `a` modulo b.step repeats
  // every b.step / g points, so one period of `a` inside b's range suffices.
  auto scan = [](const Run& outer, const Run& inner) {
    Int best = kInfinity;
    const Int first = ceil_div(inner.lo - outer.lo, outer.step);
    const Int last = floor_div(inner.hi - outer.lo, outer.step);
    const Int lo_index = std::max<Int>(first, 0);
    const Int hi_index = std::min(last, outer.count() - 1);
    if (lo_index > 0) best = std::min(best, distance_to_run(outer.at(lo_index - 1), inner));
    if (hi_index + 1 < outer.count()) best = std::min(best, distance_to_run(outer.at(hi_index + 1), inner));
    const Int period = inner.step / std::gcd(outer.step, inner.step);
    for (Int i = lo_index; i <= std::min(hi_index, lo_index + period - 1) && best > 0; ++i) {
      best = std::min(best, distance_to_run(outer.at(i), inner));
    }
    return best;
  };
  const Int period_a = b.step / std::gcd(a.step, b.step);
  const Int period_b = a.step / std::gcd(a.step, b.step);
  return period_a <= period_b ? scan(a, b) : scan(b, a);
}

/// Greatest |x - y| over x in `a`, y in `b`.
inline Int run_far(const Run& a, const Run& b) { return std::max(abs_diff(a.hi, b.lo), abs_diff(b.hi, a.lo)); }

namespace detail {

struct Piece {
  Int key = 0;
  Run run;
};

/// Pieces sorted by position; ranges of distinct pieces never overlap.
using PieceList = std::vector<Piece>;

/// Least distance between pieces of two lists, optionally only between different keys.
inline Int list_gap(const PieceList& A, const PieceList& B, bool different_keys) {
  Int best = kInfinity;
  for (const Piece& a : A) {
    auto first = std::lower_bound(B.begin(), B.end(), a.run.lo, [](const Piece& p, Int v) { return p.run.hi < v; });
    auto it = first;
    for (; it != B.end() && it->run.lo <= a.run.hi; ++it) {
      if (different_keys && it->key == a.key) continue;
      best = std::min(best, run_gap(a.run, it->run));
      if (best == 0) return 0;
    }
    for (; it != B.end(); ++it) {
      if (it->run.lo - a.run.hi >= best) break;
      if (different_keys && it->key == a.key) continue;
      best = std::min(best, it->run.lo - a.run.hi);
      break;
    }
    for (auto back = first; back != B.begin();) {
      --back;
      if (a.run.lo - back->run.hi >= best) break;
      if (different_keys && back->key == a.key) continue;
      best = std::min(best, a.run.lo - back->run.hi);
      break;
    }
  }
  return best;
}

/// Per key: least and greatest value covered by the key's pieces.
struct KeySpan {
  Int key = 0;
  Int lo = 0;
  Int hi = 0;
};

struct Position {
  int native = -1;  // -1 for a key-only axis
  PieceList pieces;
  std::vector<KeySpan> spans;  // sorted by key
  std::vector<Int> keys;       // sorted, distinct

  void index() {
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.run.lo < b.run.lo; });
    std::map<Int, KeySpan> by_key;
    for (const Piece& p : pieces) {
      auto [it, fresh] = by_key.try_emplace(p.key, KeySpan{p.key, p.run.lo, p.run.hi});
      if (!fresh) {
        it->second.lo = std::min(it->second.lo, p.run.lo);
        it->second.hi = std::max(it->second.hi, p.run.hi);
      }
    }
    for (const auto& [key, span] : by_key) {
      spans.push_back(span);
      keys.push_back(key);
    }
  }
};

/// One family on one slab, expanded into positions.
struct Instance {
  std::size_t slab = 0;
  std::size_t family = 0;
  std::size_t color = 0;
  std::vector<Int> id;
  std::vector<Int> tag;
  std::vector<Position> positions;
  std::vector<int> position_of_native;  // native axis -> position
  Int covered = 0;                      // points of the slab inside this family
};

inline Instance make_instance(const NativeLayout& layout, const Slab& slab, std::size_t slab_index,
                              std::size_t family_index, const Family& f) {
  Instance inst;
  inst.slab = slab_index;
  inst.family = family_index;
  inst.color = f.color;
  inst.id = f.id;
  inst.tag = slab.tag;
  inst.position_of_native.assign(layout.size(), -1);
  for (const FamilyAxis& ax : f.axes) {
    Position pos;
    pos.native = ax.native;
    if (ax.native >= 0) {
      if (static_cast<std::size_t>(ax.native) >= layout.size()) {
        throw std::logic_error("family axis outside the native layout");
      }
      if (inst.position_of_native[static_cast<std::size_t>(ax.native)] >= 0) {
        throw std::logic_error("family lists a native axis twice");
      }
      inst.position_of_native[static_cast<std::size_t>(ax.native)] = static_cast<int>(inst.positions.size());
    }
    for (const Label& l : ax.labels) {
      for (const Run& r : l.runs) {
        if (!r.empty()) pos.pieces.push_back(Piece{l.key, r});
      }
    }
    pos.index();
    inst.positions.push_back(std::move(pos));
  }
  for (std::size_t a = 0; a < layout.size(); ++a) {
    if (inst.position_of_native[a] >= 0) continue;
    Position pos;
    pos.native = static_cast<int>(a);
    pos.pieces.push_back(Piece{0, slab.axes[a]});
    pos.index();
    inst.position_of_native[a] = static_cast<int>(inst.positions.size());
    inst.positions.push_back(std::move(pos));
  }
  inst.covered = 1;
  for (const Position& pos : inst.positions) {
    if (pos.native < 0) continue;
    Int count = 0;
    for (const Piece& p : pos.pieces) count = checked_add(count, p.run.count());
    inst.covered = checked_mul(inst.covered, count);
  }
  return inst;
}

inline bool same_shape(const Instance& a, const Instance& b) {
  if (a.positions.size() != b.positions.size()) return false;
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    if (a.positions[i].native != b.positions[i].native) return false;
  }
  return true;
}

inline std::vector<Int> common_keys(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Greatest distance between the parts of a common cell in two instances of one id.
inline std::optional<Int> pair_diameter(SpaceKind kind, const Instance& a, const Instance& b) {
  const Combine combine(kind);
  Int total = tag_penalty(kind, a.tag, b.tag);
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    const auto& sa = a.positions[i].spans;
    const auto& sb = b.positions[i].spans;
    Int best = -1;
    std::size_t x = 0, y = 0;
    while (x < sa.size() && y < sb.size()) {
      if (sa[x].key < sb[y].key) {
        ++x;
      } else if (sb[y].key < sa[x].key) {
        ++y;
      } else {
        if (a.positions[i].native >= 0) {
          best = std::max(best, run_far(Run{sa[x].lo, sa[x].hi, 1}, Run{sb[y].lo, sb[y].hi, 1}));
        } else {
          best = std::max<Int>(best, 0);
        }
        ++x;
        ++y;
      }
    }
    if (best < 0) return std::nullopt;
    total = combine(total, best);
  }
  return total;
}

/// Least distance between points of distinct cells of one id, one point from each instance.
inline Int pair_separation(SpaceKind kind, const Instance& a, const Instance& b, Int cutoff) {
  const Combine combine(kind);
  const Int penalty = tag_penalty(kind, a.tag, b.tag);
  if (penalty >= cutoff) return kInfinity;
  const bool self = &a == &b;
  const std::size_t n = a.positions.size();
  std::vector<Int> any(n, 0), differ(n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) {
    const Position& pa = a.positions[i];
    const Position& pb = b.positions[i];
    if (pa.native < 0) {
      any[i] = 0;
      differ[i] = pa.keys == pb.keys ? kInfinity : 0;
      continue;
    }
    if (!self) any[i] = list_gap(pa.pieces, pb.pieces, false);
    differ[i] = list_gap(pa.pieces, pb.pieces, true);
  }
  Int best = kInfinity;
  for (std::size_t star = 0; star < n; ++star) {
    if (differ[star] == kInfinity) continue;
    Int total = combine(penalty, differ[star]);
    for (std::size_t i = 0; i < n && total < best; ++i) {
      if (i != star) total = combine(total, any[i]);
    }
    best = std::min(best, total);
  }
  return best;
}

/// Least distance between the point sets of two instances with different ids.
inline Int instance_gap(SpaceKind kind, const Instance& a, const Instance& b, Int cutoff) {
  const Combine combine(kind);
  Int total = tag_penalty(kind, a.tag, b.tag);
  for (std::size_t axis = 0; axis < a.position_of_native.size() && total < cutoff; ++axis) {
    const Position& pa = a.positions[static_cast<std::size_t>(a.position_of_native[axis])];
    const Position& pb = b.positions[static_cast<std::size_t>(b.position_of_native[axis])];
    total = combine(total, list_gap(pa.pieces, pb.pieces, false));
  }
  return total;
}

/// Number of distinct cells over several instances of one id.
inline Int union_cell_count(const std::vector<const Instance*>& group) {
  const std::size_t n = group.front()->positions.size();
  Int total = 0;
  // Inclusion-exclusion over subsets, pruned as soon as an intersection is empty.
  std::vector<std::vector<Int>> current(n);
  auto dfs = [&](auto&& self, std::size_t next, int depth, const std::vector<std::vector<Int>>& keys) -> void {
    for (std::size_t j = next; j < group.size(); ++j) {
      std::vector<std::vector<Int>> meet(n);
      Int product = 1;
      for (std::size_t i = 0; i < n && product > 0; ++i) {
        meet[i] = depth == 0 ? group[j]->positions[i].keys : common_keys(keys[i], group[j]->positions[i].keys);
        product = meet[i].empty() ? 0 : checked_mul(product, static_cast<Int>(meet[i].size()));
      }
      if (product == 0) continue;
      total = depth % 2 == 0 ? checked_add(total, product) : checked_sub(total, product);
      self(self, j + 1, depth + 1, meet);
    }
  };
  dfs(dfs, 0, 0, current);
  return total;
}

/// Family and structured cell key of a native point, if some family of the slab holds it.
struct StructuredHit {
  std::size_t instance = 0;
  std::vector<Int> keys;
};

inline std::optional<std::vector<Int>> locate(const Instance& inst, const std::vector<Int>& coords) {
  std::vector<Int> keys;
  for (const Position& pos : inst.positions) {
    if (pos.native < 0) {
      keys.push_back(pos.pieces.front().key);
      continue;
    }
    const Int x = coords[static_cast<std::size_t>(pos.native)];
    auto it = std::lower_bound(pos.pieces.begin(), pos.pieces.end(), x,
                               [](const Piece& p, Int v) { return p.run.hi < v; });
    if (it == pos.pieces.end() || !it->run.contains(x)) return std::nullopt;
    keys.push_back(it->key);
  }
  return keys;
}

}  // namespace detail

/// Verification from the per-slab family structure, without enumerating points.
///
/// Separations, diameters, cell counts and coverage are computed exactly from
/// the decomposition. The decomposition itself is cross-checked against
/// `classify` on seeded random points and their neighbours.
inline VerificationReport verify_structured(const CoverScheme& s, const Window& w, const VerifyOptions& opt = {}) {
  if (!s.decompose) throw std::invalid_argument(s.name + " has no structured decomposition");
  VerificationReport report;
  report.scheme = s.name;
  report.method = "structured";
  report.window = w;
  const SlabSet set = make_slabs(s.space, w);
  report.points = set.points();
  const SpaceKind kind = s.space.kind;

  std::vector<std::vector<Family>> families(set.slabs.size());
  parallel_for(set.slabs.size(), opt.workers,
               [&](std::size_t i) { families[i] = s.decompose(set.layout, set.slabs[i]); });
  std::vector<detail::Instance> instances;
  std::vector<std::vector<std::size_t>> slab_instances(set.slabs.size());
  for (std::size_t i = 0; i < set.slabs.size(); ++i) {
    for (std::size_t f = 0; f < families[i].size(); ++f) {
      if (families[i][f].color >= s.colors) throw std::logic_error(s.name + " decomposed into an unknown color");
      slab_instances[i].push_back(instances.size());
      instances.push_back(detail::make_instance(set.layout, set.slabs[i], i, f, families[i][f]));
    }
  }

  // Coverage: families of a slab must be disjoint and fill it.
  std::mutex report_mutex;
  Int covered_total = 0;
  parallel_for(set.slabs.size(), opt.workers, [&](std::size_t i) {
    const auto& ids = slab_instances[i];
    Int covered = 0;
    for (std::size_t x = 0; x < ids.size(); ++x) {
      covered = checked_add(covered, instances[ids[x]].covered);
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        const auto& a = instances[ids[x]];
        const auto& b = instances[ids[y]];
        bool apart = false;
        for (std::size_t axis = 0; axis < set.layout.size() && !apart; ++axis) {
          const auto& pa = a.positions[static_cast<std::size_t>(a.position_of_native[axis])];
          const auto& pb = b.positions[static_cast<std::size_t>(b.position_of_native[axis])];
          apart = detail::list_gap(pa.pieces, pb.pieces, false) > 0;
        }
        if (!apart) throw std::logic_error(s.name + " decomposition has overlapping families");
      }
    }
    std::lock_guard lock(report_mutex);
    covered_total = checked_add(covered_total, covered);
  });
  report.uncovered_total = report.points - covered_total;

  // Per color measurements.
  std::vector<std::vector<std::size_t>> by_color(s.colors);
  for (std::size_t i = 0; i < instances.size(); ++i) by_color[instances[i].color].push_back(i);
  report.colors.resize(s.colors);
  parallel_for(s.colors, opt.workers, [&](std::size_t color) {
    ColorRecord& rec = report.colors[color];
    rec.color = color;
    rec.declared_separation = s.separation.at(color);
    rec.declared_bound = s.bound.at(color);
    std::map<std::vector<Int>, std::vector<const detail::Instance*>> groups;
    for (std::size_t i : by_color[color]) groups[instances[i].id].push_back(&instances[i]);
    Int best = kInfinity;
    for (const auto& [id, group] : groups) {
      for (const auto* inst : group) {
        if (!detail::same_shape(*inst, *group.front())) {
          throw std::logic_error(s.name + " uses one family id with different axis layouts");
        }
      }
      rec.cells_seen = checked_add(rec.cells_seen, detail::union_cell_count(group));
      for (std::size_t x = 0; x < group.size(); ++x) {
        for (std::size_t y = x; y < group.size(); ++y) {
          if (auto d = detail::pair_diameter(kind, *group[x], *group[y])) rec.max_diameter = std::max(rec.max_diameter, *d);
          best = std::min(best, detail::pair_separation(kind, *group[x], *group[y], best));
        }
      }
    }
    std::vector<const detail::Instance*> all;
    for (std::size_t i : by_color[color]) all.push_back(&instances[i]);
    for (std::size_t x = 0; x < all.size(); ++x) {
      for (std::size_t y = x + 1; y < all.size(); ++y) {
        if (all[x]->id == all[y]->id) continue;
        best = std::min(best, detail::instance_gap(kind, *all[x], *all[y], best));
      }
    }
    if (rec.cells_seen >= 2 && best != kInfinity) rec.min_separation = best;
  });

  // Consistency of the decomposition with classify on sampled points.
  if (!set.slabs.empty() && opt.samples > 0) {
    std::mt19937_64 rng(opt.seed);
    std::vector<std::map<std::pair<std::vector<Int>, std::vector<Int>>, CellKey>> forward(s.colors);
    std::vector<std::map<CellKey, std::pair<std::vector<Int>, std::vector<Int>>>> backward(s.colors);
    auto pick = [&rng](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
    auto check_point = [&](std::size_t slab_index, const std::vector<Int>& coords) {
      const Slab& slab = set.slabs[slab_index];
      std::optional<std::pair<std::size_t, std::vector<Int>>> hit;
      for (std::size_t i : slab_instances[slab_index]) {
        if (auto keys = detail::locate(instances[i], coords)) {
          if (hit) throw std::logic_error(s.name + " point lies in two families");
          hit.emplace(i, std::move(*keys));
        }
      }
      const Point p = from_native(set.layout, slab.tag, coords);
      const auto c = classify_point(s, p);
      ++report.samples_checked;
      if (!hit) {
        if (c) throw std::logic_error(s.name + " classifies " + to_string(p) + " but no family holds it");
        if (static_cast<Int>(report.uncovered.size()) < opt.max_uncovered_listed) report.uncovered.push_back(p);
        return;
      }
      const auto& inst = instances[hit->first];
      if (!c) throw std::logic_error(s.name + " family holds " + to_string(p) + " but classify leaves it uncovered");
      if (c->color != inst.color) throw std::logic_error(s.name + " color mismatch at " + to_string(p));
      const auto skey = std::make_pair(inst.id, hit->second);
      auto [f, fresh_f] = forward[inst.color].try_emplace(skey, c->cell);
      auto [b, fresh_b] = backward[inst.color].try_emplace(c->cell, skey);
      if (f->second != c->cell || b->second != skey) {
        throw std::logic_error(s.name + " structured cells disagree with classify at " + to_string(p));
      }
    };
    for (Int n = 0; n < opt.samples; ++n) {
      const std::size_t slab_index = static_cast<std::size_t>(pick(0, static_cast<Int>(set.slabs.size()) - 1));
      const Slab& slab = set.slabs[slab_index];
      std::vector<Int> coords(slab.axes.size());
      const auto& own = slab_instances[slab_index];
      if (n % 2 == 1 && !own.empty()) {
        // Near a piece boundary of a random family.
        const auto& inst = instances[own[static_cast<std::size_t>(pick(0, static_cast<Int>(own.size()) - 1))]];
        for (std::size_t a = 0; a < coords.size(); ++a) {
          const auto& pos = inst.positions[static_cast<std::size_t>(inst.position_of_native[a])];
          const Run& r = pos.pieces[static_cast<std::size_t>(pick(0, static_cast<Int>(pos.pieces.size()) - 1))].run;
          const Int choice = pick(0, 2);
          coords[a] = choice == 0 ? r.lo : choice == 1 ? r.hi : r.at(pick(0, r.count() - 1));
        }
      } else {
        for (std::size_t a = 0; a < coords.size(); ++a) coords[a] = slab.axes[a].at(pick(0, slab.axes[a].count() - 1));
      }
      check_point(slab_index, coords);
      for (std::size_t a = 0; a < coords.size(); ++a) {
        for (Int dir : {-1, 1}) {
          std::vector<Int> q = coords;
          q[a] += dir * slab.axes[a].step;
          if (slab.axes[a].contains(q[a])) check_point(slab_index, q);
        }
      }
    }
  }
  finalize(report);
  return report;
}

}  // namespace coarse
