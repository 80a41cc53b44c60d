#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "coarse/maps.hpp"
#include "coarse/scheme.hpp"

namespace coarse {

/// The point of a product space sitting over base point `x` with factor coordinates `y`.
inline Point fiber_point(const SpaceSpec& space, const Point& x, const std::vector<Int>& y) {
  if (space.kind == SpaceKind::tower_with_factor) {
    TowerPoint t = std::get<TowerPoint>(x);
    t.extra = y;
    return t;
  }
  if (space.kind == SpaceKind::plain_lattice) {
    LatticePoint l = std::get<LatticePoint>(x);
    l.coords.insert(l.coords.end(), y.begin(), y.end());
    return l;
  }
  throw std::invalid_argument("fiber witnesses need a tower-with-factor or lattice product space");
}

struct FiberRecord {
  Point fiber;
  std::optional<std::vector<Int>> witness;
};

struct WitnessResult {
  std::vector<FiberRecord> fibers;
  bool all_witnessed = true;
  Int witnessed = 0;
};

/// For every fiber {x} x box, the lexicographically first point that no chosen color covers.
inline WitnessResult find_fiber_witnesses(const CoverScheme& s, const std::set<std::size_t>& colors,
                                          const std::vector<Point>& fibers, const std::vector<Interval>& box) {
  for (const Interval& i : box) {
    if (i.empty()) throw std::invalid_argument("fiber box intervals must be nonempty");
  }
  auto covered = [&](const Point& p) {
    auto c = classify_point(s, p);
    return c && colors.count(c->color) > 0;
  };
  WitnessResult out;
  for (const Point& x : fibers) {
    FiberRecord rec{x, std::nullopt};
    std::vector<Int> y(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) y[i] = box[i].lo;
    while (true) {
      if (!covered(fiber_point(s.space, x, y))) {
        rec.witness = y;
        break;
      }
      std::size_t i = box.size();
      while (i > 0 && y[i - 1] == box[i - 1].hi) {
        y[i - 1] = box[i - 1].lo;
        --i;
      }
      if (i == 0) break;
      ++y[i - 1];
    }
    if (rec.witness && covered(fiber_point(s.space, x, *rec.witness))) {
      throw std::logic_error("witness failed its re-check");
    }
    if (rec.witness) {
      ++out.witnessed;
    } else {
      out.all_witnessed = false;
    }
    out.fibers.push_back(std::move(rec));
  }
  return out;
}

/// The map x -> (x, witness(x)) as a table-backed map into the product space.
inline MapSpec witness_map(const WitnessResult& result, const SpaceSpec& product, Control lower, Control upper) {
  auto table = std::make_shared<std::map<Point, Point>>();
  for (const FiberRecord& rec : result.fibers) {
    if (!rec.witness) throw std::invalid_argument("fiber " + to_string(rec.fiber) + " has no witness");
    (*table)[rec.fiber] = fiber_point(product, rec.fiber, *rec.witness);
  }
  MapSpec m;
  m.name = "delta-witness";
  m.lower = lower;
  m.upper = upper;
  m.table = table;
  m.codomain = product;
  return m;
}

}  // namespace coarse
