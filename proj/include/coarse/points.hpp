#pragma once

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coarse/integer.hpp"

namespace coarse {

/// Thrown when a point is not a member of the space or map domain it is used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class SpaceKind { tower, tower_with_factor, shift_union, product_of_towers, plain_lattice };

/// Coordinate step per tower level: i -> i, or i -> 2^i.
enum class StepRule { identity, power_of_two };

enum class MetricFlavor { max_based, l1_shift };

inline Int step_for_level(StepRule rule, Int level) {
  return rule == StepRule::identity ? level : pow2(level);
}

/// Which of the workbench spaces is in play, and its shape parameters.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::plain_lattice;
  StepRule step = StepRule::identity;
  std::size_t factor_dim = 0;       // Z^k factor of a tower-with-factor space
  std::vector<Int> lattice_steps;   // plain lattice: one positive step per axis

  [[nodiscard]] MetricFlavor flavor() const {
    return kind == SpaceKind::shift_union ? MetricFlavor::l1_shift : MetricFlavor::max_based;
  }
  [[nodiscard]] std::size_t lattice_dim() const { return lattice_steps.size(); }

  static SpaceSpec tower(StepRule rule) { return {SpaceKind::tower, rule, 0, {}}; }
  static SpaceSpec tower_with_factor(StepRule rule, std::size_t k) {
    return {SpaceKind::tower_with_factor, rule, k, {}};
  }
  static SpaceSpec shift_union() { return {SpaceKind::shift_union, StepRule::identity, 0, {}}; }
  static SpaceSpec product_of_towers(StepRule rule) {
    return {SpaceKind::product_of_towers, rule, 0, {}};
  }
  static SpaceSpec lattice(std::vector<Int> steps) {
    for (Int s : steps) {
      if (s <= 0) throw std::invalid_argument("lattice steps must be positive");
    }
    return {SpaceKind::plain_lattice, StepRule::identity, 0, std::move(steps)};
  }
  static SpaceSpec integer_lattice(std::size_t dim) { return lattice(std::vector<Int>(dim, 1)); }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// A point of Z^d (or of a sublattice of it).
struct LatticePoint {
  std::vector<Int> coords;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// A point of block `level` of a tower space, optionally carrying a Z^k factor.
struct TowerPoint {
  Int level = 1;
  std::vector<Int> coords;
  std::vector<Int> extra;
  friend auto operator<=>(const TowerPoint&, const TowerPoint&) = default;
};

/// A finitely supported point of the shift union, living in layer X_level.
struct ShiftPoint {
  std::map<Int, Int> support;  // index -> nonzero value
  Int level = 0;

  [[nodiscard]] Int at(Int index) const {
    auto it = support.find(index);
    return it == support.end() ? 0 : it->second;
  }
  void set(Int index, Int value) {
    if (value == 0) {
      support.erase(index);
    } else {
      support[index] = value;
    }
  }
  friend auto operator<=>(const ShiftPoint& a, const ShiftPoint& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.support <=> b.support;
  }
  friend bool operator==(const ShiftPoint&, const ShiftPoint&) = default;
};

/// A point of the product X x X of two tower spaces.
struct TowerPair {
  TowerPoint first;
  TowerPoint second;
  friend auto operator<=>(const TowerPair&, const TowerPair&) = default;
};

using Point = std::variant<LatticePoint, TowerPoint, ShiftPoint, TowerPair>;

inline void validate_tower(const TowerPoint& p, StepRule rule, std::size_t factor_dim) {
  if (p.level < 1) {
    throw DomainError("tower level must be positive, got " + std::to_string(p.level));
  }
  if (static_cast<Int>(p.coords.size()) != p.level) {
    throw DomainError("tower point at level " + std::to_string(p.level) + " has " +
                      std::to_string(p.coords.size()) + " coordinates");
  }
  const Int step = step_for_level(rule, p.level);
  for (Int c : p.coords) {
    if (floor_mod(c, step) != 0) {
      throw DomainError("coordinate " + std::to_string(c) + " is not divisible by step " +
                        std::to_string(step) + " of level " + std::to_string(p.level));
    }
  }
  if (p.extra.size() != factor_dim) {
    throw DomainError("factor block has " + std::to_string(p.extra.size()) +
                      " coordinates, expected " + std::to_string(factor_dim));
  }
}

/// Membership rule of X_a: x_i = 0 for i < a and x_i divisible by (i - a + 1) otherwise.
inline void validate_shift(const ShiftPoint& p) {
  for (const auto& [index, value] : p.support) {
    if (value == 0) {
      throw DomainError("shift point support stores an explicit zero at index " +
                        std::to_string(index));
    }
    if (index < p.level) {
      throw DomainError("x_" + std::to_string(index) + " must vanish below level " +
                        std::to_string(p.level));
    }
    const Int modulus = index - p.level + 1;
    if (floor_mod(value, modulus) != 0) {
      throw DomainError("x_" + std::to_string(index) + " = " + std::to_string(value) +
                        " is not in " + std::to_string(modulus) + "Z");
    }
  }
}

inline void validate_lattice(const LatticePoint& p, const std::vector<Int>& steps) {
  if (p.coords.size() != steps.size()) {
    throw DomainError("lattice point has " + std::to_string(p.coords.size()) +
                      " coordinates, expected " + std::to_string(steps.size()));
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (floor_mod(p.coords[i], steps[i]) != 0) {
      throw DomainError("coordinate " + std::to_string(i) + " = " + std::to_string(p.coords[i]) +
                        " is not in " + std::to_string(steps[i]) + "Z");
    }
  }
}

/// Throws DomainError unless `p` is a valid point of `spec`.
inline void validate(const SpaceSpec& spec, const Point& p) {
  switch (spec.kind) {
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor: {
      const auto* t = std::get_if<TowerPoint>(&p);
      if (t == nullptr) throw DomainError("expected a tower point");
      validate_tower(*t, spec.step, spec.kind == SpaceKind::tower ? 0 : spec.factor_dim);
      return;
    }
    case SpaceKind::shift_union: {
      const auto* s = std::get_if<ShiftPoint>(&p);
      if (s == nullptr) throw DomainError("expected a shift-union point");
      validate_shift(*s);
      return;
    }
    case SpaceKind::product_of_towers: {
      const auto* q = std::get_if<TowerPair>(&p);
      if (q == nullptr) throw DomainError("expected a pair of tower points");
      validate_tower(q->first, spec.step, 0);
      validate_tower(q->second, spec.step, 0);
      return;
    }
    case SpaceKind::plain_lattice: {
      const auto* l = std::get_if<LatticePoint>(&p);
      if (l == nullptr) throw DomainError("expected a lattice point");
      validate_lattice(*l, spec.lattice_steps);
      return;
    }
  }
}

inline bool is_member(const SpaceSpec& spec, const Point& p) {
  try {
    validate(spec, p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

namespace detail {
inline void write_ints(std::ostream& os, const std::vector<Int>& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
}
}  // namespace detail

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LatticePoint>) {
          detail::write_ints(os, q.coords);
        } else if constexpr (std::is_same_v<T, TowerPoint>) {
          os << "L" << q.level;
          detail::write_ints(os, q.coords);
          if (!q.extra.empty()) detail::write_ints(os, q.extra);
        } else if constexpr (std::is_same_v<T, ShiftPoint>) {
          os << "X" << q.level << '{';
          bool first = true;
          for (const auto& [i, v] : q.support) {
            if (!first) os << ',';
            first = false;
            os << i << ':' << v;
          }
          os << '}';
        } else {
          os << '[' << "L" << q.first.level;
          detail::write_ints(os, q.first.coords);
          os << " x L" << q.second.level;
          detail::write_ints(os, q.second.coords);
          os << ']';
        }
      },
      p);
  return os.str();
}

}  // namespace coarse
