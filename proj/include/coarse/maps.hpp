#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "coarse/points.hpp"

namespace coarse {

/// Monotone integer control function t -> t, t + c, or c * t.
struct Control {
  enum class Kind { identity, plus_constant, scaled };
  Kind kind = Kind::identity;
  Int c = 0;

  static Control identity() { return {}; }
  static Control plus(Int c) { return {Kind::plus_constant, c}; }
  static Control scaled(Int c) {
    if (c < 0) throw std::invalid_argument("scaled control needs a nonnegative factor");
    return {Kind::scaled, c};
  }

  [[nodiscard]] Int operator()(Int t) const {
    switch (kind) {
      case Kind::identity:
        return t;
      case Kind::plus_constant:
        return checked_add(t, c);
      case Kind::scaled:
        return checked_mul(c, t);
    }
    return t;
  }
};

/// A named map between workbench spaces, with the controls it should satisfy.
struct MapSpec {
  std::string name;
  std::map<std::string, Int> params;
  Control lower;
  Control upper;
  std::shared_ptr<const std::map<Point, Point>> table;  // delta-witness only
  std::optional<SpaceSpec> codomain;                     // overrides the derived codomain

  [[nodiscard]] Int param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument("map " + name + " needs parameter " + key);
    return it->second;
  }
};

namespace detail {

inline const TowerPoint& expect_tower(const Point& p, const std::string& map) {
  const auto* t = std::get_if<TowerPoint>(&p);
  if (t == nullptr) throw DomainError(map + " expects a tower point");
  return *t;
}

inline LatticePoint embed_with_code(const TowerPoint& t, Int pad_to) {
  LatticePoint out;
  out.coords = t.coords;
  out.coords.resize(static_cast<std::size_t>(pad_to), 0);
  out.coords.insert(out.coords.end(), t.extra.begin(), t.extra.end());
  out.coords.push_back(t.level * (t.level - 1) / 2);
  return out;
}

}  // namespace detail

inline Point evaluate_map(const MapSpec& m, const Point& p) {
  if (m.name == "identity") return p;
  if (m.name == "phi-tower") {
    const auto& t = detail::expect_tower(p, m.name);
    const Int n = m.param("n");
    if (t.level < 1 || t.level > n) {
      throw DomainError("phi-tower needs 1 <= level <= " + std::to_string(n) + ", got level " +
                        std::to_string(t.level));
    }
    return detail::embed_with_code(t, n);
  }
  if (m.name == "psi-staircase") {
    const auto& t = detail::expect_tower(p, m.name);
    const Int n = m.param("n");
    const Int r = m.param("r");
    if (t.level <= n || t.level > r) {
      throw DomainError("psi-staircase needs " + std::to_string(n + 1) + " <= level <= " +
                        std::to_string(r) + ", got level " + std::to_string(t.level));
    }
    const Int step = pow2(n);
    for (Int c : t.coords) {
      if (floor_mod(c, step) != 0) {
        throw DomainError("psi-staircase needs coordinates in " + std::to_string(step) + "Z");
      }
    }
    return detail::embed_with_code(t, r);
  }
  if (m.name == "pad") {
    const auto& t = detail::expect_tower(p, m.name);
    const Int target = m.param("target");
    if (target < t.level) throw DomainError("pad cannot truncate level " + std::to_string(t.level));
    LatticePoint out;
    out.coords = t.coords;
    out.coords.resize(static_cast<std::size_t>(target), 0);
    out.coords.insert(out.coords.end(), t.extra.begin(), t.extra.end());
    return out;
  }
  if (m.name == "theta-interleave") {
    LatticePoint out;
    if (const auto* q = std::get_if<TowerPair>(&p)) {
      const Int len = m.param("len");
      if (q->first.level != len || q->second.level != len) {
        throw DomainError("theta-interleave needs both factors at level " + std::to_string(len));
      }
      for (std::size_t i = 0; i < q->first.coords.size(); ++i) {
        out.coords.push_back(q->first.coords[i]);
        out.coords.push_back(q->second.coords[i]);
      }
      return out;
    }
    const auto* l = std::get_if<LatticePoint>(&p);
    if (l == nullptr) throw DomainError("theta-interleave expects a lattice point or a tower pair");
    const Int len = m.param("len");
    if (static_cast<Int>(l->coords.size()) != 2 * len) {
      throw DomainError("theta-interleave expects " + std::to_string(2 * len) + " coordinates");
    }
    for (Int i = 0; i < len; ++i) {
      const Int x = l->coords[static_cast<std::size_t>(i)];
      const Int y = l->coords[static_cast<std::size_t>(len + i)];
      if (floor_mod(x, i + 1) != 0 || floor_mod(y, i + 1) != 0) {
        throw DomainError("theta-interleave needs x_" + std::to_string(i + 1) + ", y_" +
                          std::to_string(i + 1) + " in " + std::to_string(i + 1) + "Z");
      }
      out.coords.push_back(x);
      out.coords.push_back(y);
    }
    return out;
  }
  if (m.name == "f-level-projection") {
    if (const auto* s = std::get_if<ShiftPoint>(&p)) return LatticePoint{{s->level}};
    if (const auto* t = std::get_if<TowerPoint>(&p)) return LatticePoint{{t->level}};
    throw DomainError("f-level-projection expects a shift-union or tower point");
  }
  if (m.name == "delta-witness") {
    if (!m.table) throw DomainError("delta-witness has no witness table");
    auto it = m.table->find(p);
    if (it == m.table->end()) throw DomainError("no witness recorded for " + to_string(p));
    return it->second;
  }
  throw std::invalid_argument("unknown map " + m.name);
}

/// The space a map lands in, given the space it is evaluated on.
inline SpaceSpec map_codomain(const MapSpec& m, const SpaceSpec& domain) {
  if (m.codomain) return *m.codomain;
  const std::size_t k = domain.kind == SpaceKind::tower_with_factor ? domain.factor_dim : 0;
  if (m.name == "identity") return domain;
  if (m.name == "phi-tower") {
    return SpaceSpec::integer_lattice(static_cast<std::size_t>(m.param("n")) + k + 1);
  }
  if (m.name == "psi-staircase") {
    std::vector<Int> steps(static_cast<std::size_t>(m.param("r")), pow2(m.param("n")));
    steps.resize(steps.size() + k + 1, 1);
    return SpaceSpec::lattice(steps);
  }
  if (m.name == "pad") {
    return SpaceSpec::integer_lattice(static_cast<std::size_t>(m.param("target")) + k);
  }
  if (m.name == "theta-interleave") {
    std::vector<Int> steps;
    for (Int i = 1; i <= m.param("len"); ++i) {
      const Int step = domain.kind == SpaceKind::product_of_towers
                           ? step_for_level(domain.step, m.param("len"))
                           : i;
      steps.push_back(step);
      steps.push_back(step);
    }
    return SpaceSpec::lattice(steps);
  }
  if (m.name == "f-level-projection") return SpaceSpec::integer_lattice(1);
  if (m.name == "delta-witness") {
    throw std::invalid_argument("delta-witness needs an explicit codomain");
  }
  throw std::invalid_argument("unknown map " + m.name);
}

}  // namespace coarse
