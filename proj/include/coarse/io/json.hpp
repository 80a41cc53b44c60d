#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/covers/combinators.hpp"
#include "coarse/covers/shift_union.hpp"
#include "coarse/covers/tower_covers.hpp"
#include "coarse/maps.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/partition.hpp"
#include "coarse/verify/control.hpp"
#include "coarse/verify/oracle1d.hpp"
#include "coarse/verify/report.hpp"
#include "coarse/verify/witness.hpp"
#include "coarse/window.hpp"

namespace coarse {

using json = nlohmann::json;

/// Raised for malformed or incomplete configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

inline const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("missing field \"" + key + "\"");
  return j.at(key);
}

inline Int get_int(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw ConfigError("field \"" + key + "\" must be an integer");
  return v.get<Int>();
}

inline Int get_int_or(const json& j, const std::string& key, Int fallback) {
  return j.is_object() && j.contains(key) ? get_int(j, key) : fallback;
}

inline std::vector<Int> int_list(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of integers");
  std::vector<Int> out;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw ConfigError("expected an array of integers");
    out.push_back(v.get<Int>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intervals and windows.

inline Interval interval_from(const json& j) {
  const auto v = int_list(j);
  if (v.size() != 2) throw ConfigError("an interval is written [lo, hi]");
  if (v[0] > v[1]) throw ConfigError("interval [" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + "] is empty");
  return {v[0], v[1]};
}

inline json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

/// Either [lo, hi] (broadcast) or [[lo, hi], ...].
inline std::vector<Interval> box_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("a box is [lo, hi] or a list of such intervals");
  if (j.front().is_array()) {
    std::vector<Interval> out;
    for (const json& i : j) out.push_back(interval_from(i));
    return out;
  }
  return {interval_from(j)};
}

inline json box_to_json(const std::vector<Interval>& box) {
  json out = json::array();
  for (const Interval& i : box) out.push_back(to_json(i));
  return out;
}

inline Window window_from(const json& j) {
  if (!j.is_object()) throw ConfigError("window must be an object");
  Window w;
  if (j.contains("levels")) w.levels = interval_from(j.at("levels"));
  if (j.contains("second_levels")) w.second_levels = interval_from(j.at("second_levels"));
  if (j.contains("box")) w.box = box_from(j.at("box"));
  if (j.contains("extra_box")) w.extra_box = box_from(j.at("extra_box"));
  w.max_support = get_int_or(j, "max_support", 0);
  return w;
}

inline json to_json(const Window& w) {
  json out{{"levels", to_json(w.levels)}, {"box", box_to_json(w.box)}};
  if (w.second_levels) out["second_levels"] = to_json(*w.second_levels);
  if (!w.extra_box.empty()) out["extra_box"] = box_to_json(w.extra_box);
  if (w.max_support != 0) out["max_support"] = w.max_support;
  return out;
}

// ---------------------------------------------------------------------------
// Spaces and points.

inline StepRule step_from(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "identity") return StepRule::identity;
  if (s == "power-of-two") return StepRule::power_of_two;
  throw ConfigError("unknown step rule " + s + " (identity or power-of-two)");
}

inline std::string step_name(StepRule r) { return r == StepRule::identity ? "identity" : "power-of-two"; }

inline std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::tower:
      return "tower";
    case SpaceKind::tower_with_factor:
      return "tower-with-factor";
    case SpaceKind::shift_union:
      return "shift-union";
    case SpaceKind::product_of_towers:
      return "product-of-towers";
    case SpaceKind::plain_lattice:
      return "plain-lattice";
  }
  return "unknown";
}

inline SpaceSpec space_from(const json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  const StepRule step = j.contains("step") ? step_from(j.at("step")) : StepRule::identity;
  if (kind == "tower") return SpaceSpec::tower(step);
  if (kind == "tower-with-factor") {
    return SpaceSpec::tower_with_factor(step, static_cast<std::size_t>(get_int_or(j, "factor_dim", 0)));
  }
  if (kind == "shift-union") return SpaceSpec::shift_union();
  if (kind == "product-of-towers") return SpaceSpec::product_of_towers(step);
  if (kind == "plain-lattice") {
    if (j.contains("lattice_steps")) return SpaceSpec::lattice(int_list(j.at("lattice_steps")));
    return SpaceSpec::integer_lattice(static_cast<std::size_t>(get_int(j, "dim")));
  }
  throw ConfigError("unknown space kind " + kind);
}

inline json to_json(const SpaceSpec& s) {
  json out{{"kind", kind_name(s.kind)}};
  switch (s.kind) {
    case SpaceKind::tower:
    case SpaceKind::product_of_towers:
      out["step"] = step_name(s.step);
      break;
    case SpaceKind::tower_with_factor:
      out["step"] = step_name(s.step);
      out["factor_dim"] = s.factor_dim;
      break;
    case SpaceKind::plain_lattice:
      out["lattice_steps"] = s.lattice_steps;
      break;
    case SpaceKind::shift_union:
      break;
  }
  return out;
}

inline json to_json(const Point& p) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LatticePoint>) {
          return v.coords;
        } else if constexpr (std::is_same_v<T, TowerPoint>) {
          json out{{"level", v.level}, {"coords", v.coords}};
          if (!v.extra.empty()) out["extra"] = v.extra;
          return out;
        } else if constexpr (std::is_same_v<T, ShiftPoint>) {
          json support = json::array();
          for (const auto& [i, x] : v.support) support.push_back(json::array({i, x}));
          return json{{"level", v.level}, {"support", support}};
        } else {
          auto tower = [](const TowerPoint& t) { return json{{"level", t.level}, {"coords", t.coords}}; };
          return json{{"first", tower(v.first)}, {"second", tower(v.second)}};
        }
      },
      p);
}

inline TowerPoint tower_point_from(const json& j) {
  TowerPoint t;
  t.level = get_int(j, "level");
  t.coords = int_list(require(j, "coords"));
  if (j.contains("extra")) t.extra = int_list(j.at("extra"));
  return t;
}

inline Point point_from(const SpaceSpec& space, const json& j) {
  switch (space.kind) {
    case SpaceKind::plain_lattice:
      return LatticePoint{int_list(j.is_object() ? require(j, "coords") : j)};
    case SpaceKind::tower:
    case SpaceKind::tower_with_factor:
      return tower_point_from(j);
    case SpaceKind::shift_union: {
      ShiftPoint s;
      s.level = get_int(j, "level");
      for (const json& e : require(j, "support")) {
        const auto pair = int_list(e);
        if (pair.size() != 2) throw ConfigError("shift support entries are [index, value]");
        s.set(pair[0], pair[1]);
      }
      return s;
    }
    case SpaceKind::product_of_towers:
      return TowerPair{tower_point_from(require(j, "first")), tower_point_from(require(j, "second"))};
  }
  throw ConfigError("unknown space kind");
}

// ---------------------------------------------------------------------------
// Maps.

inline Control control_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return Control::identity();
    throw ConfigError("unknown control " + j.get<std::string>());
  }
  if (j.contains("plus")) return Control::plus(get_int(j, "plus"));
  if (j.contains("scaled")) return Control::scaled(get_int(j, "scaled"));
  throw ConfigError("a control is \"identity\", {\"plus\": c} or {\"scaled\": c}");
}

inline json to_json(const Control& c) {
  switch (c.kind) {
    case Control::Kind::identity:
      return "identity";
    case Control::Kind::plus_constant:
      return json{{"plus", c.c}};
    case Control::Kind::scaled:
      return json{{"scaled", c.c}};
  }
  return "identity";
}

inline MapSpec map_from(const json& j) {
  MapSpec m;
  m.name = require(j, "name").get<std::string>();
  if (j.contains("params")) {
    for (const auto& [key, value] : j.at("params").items()) {
      if (!value.is_number_integer()) throw ConfigError("map parameter " + key + " must be an integer");
      m.params[key] = value.get<Int>();
    }
  }
  m.lower = j.contains("lower") ? control_from(j.at("lower")) : Control::identity();
  m.upper = j.contains("upper") ? control_from(j.at("upper")) : Control::identity();
  if (j.contains("codomain")) m.codomain = space_from(j.at("codomain"));
  return m;
}

// ---------------------------------------------------------------------------
// Constructions by name.

inline CoverScheme scheme_from(const json& j);

inline CoverScheme scheme_from(const std::string& name, const json& p) {
  auto step = [&p] { return p.contains("step") ? step_from(p.at("step")) : StepRule::identity; };
  if (name == "grid") return grid_cover(static_cast<std::size_t>(get_int(p, "dim")), get_int(p, "r"));
  if (name == "singleton") return singleton_cover(SpaceSpec::tower(step()), get_int(p, "n"));
  if (name == "fiber-product") return fiber_product_cover(scheme_from(require(p, "base")), step(), get_int(p, "n"));
  if (name == "fiber-intervals") return fiber_intervals_cover(step(), get_int(p, "gap"), get_int(p, "bound"));
  if (name == "staircase") {
    return staircase_cover(get_int(p, "n"), get_int(p, "r"), static_cast<std::size_t>(get_int(p, "dim")),
                           interval_from(require(p, "height")));
  }
  if (name == "omega") return omega_cover(get_int(p, "n"), get_int(p, "r"));
  if (name == "mixed-grid") {
    return mixed_grid_cover(static_cast<std::size_t>(get_int(p, "m")), static_cast<std::size_t>(get_int(p, "n")),
                            get_int(p, "k"), get_int(p, "R"));
  }
  if (name == "product-square") return product_square_cover(get_int(p, "k"), get_int(p, "n"));
  if (name == "shift-union") return shift_union_cover(get_int(p, "k"), get_int(p, "m"));
  if (name == "restrict") {
    const CoverScheme base = scheme_from(require(p, "base"));
    return restrict_scheme(base, window_region(base.space, window_from(require(p, "window"))), "window");
  }
  if (name == "pullback") {
    return pullback_scheme(scheme_from(require(p, "base")), map_from(require(p, "map")),
                           space_from(require(p, "domain")));
  }
  throw ConfigError("unknown construction " + name);
}

/// {"name": ..., "params": {...}}
inline CoverScheme scheme_from(const json& j) {
  return scheme_from(require(j, "name").get<std::string>(), j.contains("params") ? j.at("params") : json::object());
}

// ---------------------------------------------------------------------------
// Results.

inline json to_json(const ColorRecord& c) {
  json out{{"color", c.color},
           {"cells_seen", c.cells_seen},
           {"max_diameter", c.max_diameter},
           {"min_separation", c.min_separation ? json(*c.min_separation) : json(nullptr)},
           {"declared_separation", c.declared_separation},
           {"declared_bound", c.declared_bound},
           {"separation_pass", c.separation_pass},
           {"bound_pass", c.bound_pass}};
  return out;
}

inline json to_json(const VerificationReport& r) {
  json colors = json::array();
  for (const ColorRecord& c : r.colors) colors.push_back(to_json(c));
  json uncovered = json::array();
  for (const Point& p : r.uncovered) uncovered.push_back(to_json(p));
  json errors = json::array();
  for (const PointError& e : r.errors) errors.push_back(json{{"point", to_json(e.point)}, {"error", e.message}});
  json out{{"scheme", r.scheme},          {"method", r.method},
           {"window", to_json(r.window)}, {"points", r.points},
           {"colors", colors},            {"uncovered", uncovered},
           {"uncovered_total", r.uncovered_total}, {"errors", errors},
           {"verdict", verdict_name(r.verdict)}};
  if (r.method == "structured") out["samples_checked"] = r.samples_checked;
  return out;
}

/// Per-color table as CSV.
inline std::string colors_csv(const VerificationReport& r) {
  std::string out =
      "color,cells_seen,max_diameter,min_separation,declared_separation,declared_bound,separation_pass,bound_pass\n";
  for (const ColorRecord& c : r.colors) {
    out += std::to_string(c.color) + "," + std::to_string(c.cells_seen) + "," + std::to_string(c.max_diameter) + "," +
           (c.min_separation ? std::to_string(*c.min_separation) : std::string()) + "," +
           std::to_string(c.declared_separation) + "," + std::to_string(c.declared_bound) + "," +
           (c.separation_pass ? "true" : "false") + "," + (c.bound_pass ? "true" : "false") + "\n";
  }
  return out;
}

inline json to_json(const WitnessResult& w) {
  json fibers = json::array();
  for (const FiberRecord& f : w.fibers) {
    fibers.push_back(json{{"fiber", to_json(f.fiber)}, {"witness", f.witness ? json(*f.witness) : json(nullptr)}});
  }
  return json{{"fibers", fibers}, {"witnessed", w.witnessed}, {"all_fibers_witnessed", w.all_witnessed}};
}

inline json to_json(const ControlReport& c) {
  json violations = json::array();
  for (const ControlViolation& v : c.violations) {
    violations.push_back(json{{"a", to_json(v.a)},
                              {"b", to_json(v.b)},
                              {"domain_distance", v.domain_distance},
                              {"image_distance", v.image_distance}});
  }
  return json{{"pairs", c.pairs},
              {"violation_total", c.violation_total},
              {"violations", violations},
              {"max_stretch", c.max_stretch},
              {"max_compression", c.max_compression},
              {"max_upper_excess", c.max_upper_excess},
              {"max_lower_excess", c.max_lower_excess},
              {"checked_lower", c.check_lower},
              {"checked_upper", c.check_upper}};
}

inline json to_json(const OracleResult& r) {
  json out{{"outcome", outcome_name(r.outcome)}, {"nodes", r.nodes}, {"memo_states", r.memo_states}};
  if (r.outcome == OracleOutcome::feasible) {
    json a = json::array();
    for (const OracleAssignment& x : r.assignment) a.push_back(json{{"point", x.point}, {"color", x.color}, {"cell", x.cell}});
    out["assignment"] = a;
  } else if (r.outcome == OracleOutcome::infeasible) {
    out["certificate"] = json{{"search", "exhausted"}, {"nodes", r.nodes}, {"failed_states", r.memo_states}};
  }
  return out;
}

inline FinFamily family_from(const json& j) {
  if (!j.is_array()) throw ConfigError("a family is an array of arrays of naturals");
  std::vector<std::vector<Int>> members;
  for (const json& m : j) members.push_back(int_list(m));
  try {
    return make_family(members);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline json to_json(const FinFamily& M) {
  json out = json::array();
  for (const FinSet& s : M) out.push_back(s);
  return out;
}

/// Cells given as point lists or, on Z, as {"range": [lo, hi]}.
inline FiniteFamily finite_family_from(const SpaceSpec& space, const json& j) {
  if (!j.is_array()) throw ConfigError("a finite family is an array of cells");
  FiniteFamily out;
  Int index = 0;
  for (const json& cell : j) {
    std::vector<Point> pts;
    if (cell.is_object() && cell.contains("range")) {
      if (space.kind != SpaceKind::plain_lattice || space.lattice_dim() != 1) {
        throw ConfigError("range cells need the one-dimensional lattice");
      }
      const Interval r = interval_from(cell.at("range"));
      for (Int x = r.lo; x <= r.hi; ++x) pts.push_back(LatticePoint{{x}});
    } else {
      for (const json& p : cell) pts.push_back(point_from(space, p));
    }
    if (pts.empty()) throw ConfigError("cells must be nonempty");
    for (const Point& p : pts) validate(space, p);
    std::sort(pts.begin(), pts.end());
    out.cells[{index++}] = std::move(pts);
  }
  return out;
}

inline json to_json(const FiniteFamily& F) {
  json out = json::array();
  for (const auto& [key, pts] : F.cells) {
    json points = json::array();
    for (const Point& p : pts) points.push_back(to_json(p));
    out.push_back(json{{"key", key}, {"points", points}});
  }
  return out;
}

}  // namespace io
}  // namespace coarse
