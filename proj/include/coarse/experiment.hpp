#pragma once

#include <cstdlib>
#include <optional>
#include <set>
#include <string>

#include "coarse/covers/saturated_union.hpp"
#include "coarse/io/json.hpp"
#include "coarse/ordinal.hpp"
#include "coarse/verify/control.hpp"
#include "coarse/verify/oracle1d.hpp"
#include "coarse/verify/verify.hpp"
#include "coarse/verify/witness.hpp"

namespace coarse {

inline constexpr const char* kVersion = "1.0.0";

enum class Status { pass, fail, feasible, infeasible, witness_missing, inconclusive, error };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::feasible:
      return "feasible";
    case Status::infeasible:
      return "infeasible";
    case Status::witness_missing:
      return "witness-missing";
    case Status::inconclusive:
      return "inconclusive";
    case Status::error:
      return "error";
  }
  return "error";
}

inline int exit_code(Status s) {
  switch (s) {
    case Status::pass:
    case Status::feasible:
      return 0;
    case Status::fail:
    case Status::infeasible:
    case Status::witness_missing:
      return 1;
    case Status::inconclusive:
    case Status::error:
      return 2;
  }
  return 2;
}

/// Command-line overrides of the config's limits.
struct RunOverrides {
  std::optional<std::size_t> workers;
  std::optional<Int> budget;
  std::optional<std::uint64_t> seed;
};

struct ExperimentResult {
  Status status = Status::error;
  json config;
  json report;
  std::string csv;  // per-color table, verify-cover only

  [[nodiscard]] json document() const {
    return json{{"status", status_name(status)}, {"config", config}, {"report", report}, {"version", kVersion}};
  }
};

namespace detail {

inline json resolve_limits(const json& config, const RunOverrides& o) {
  json limits = config.contains("limits") ? config.at("limits") : json::object();
  if (!limits.is_object()) throw ConfigError("limits must be an object");
  if (o.workers) limits["workers"] = *o.workers;
  if (o.budget) limits["node_budget"] = *o.budget;
  if (o.seed) limits["seed"] = *o.seed;
  if (!limits.contains("workers")) limits["workers"] = 1;
  if (!limits.contains("node_budget")) limits["node_budget"] = 5'000'000;
  if (!limits.contains("seed")) limits["seed"] = 0x5eed;
  if (!limits.contains("max_uncovered_listed")) limits["max_uncovered_listed"] = 20;
  return limits;
}

inline VerifyOptions verify_options(const json& limits) {
  VerifyOptions o;
  o.workers = limits.at("workers").get<std::size_t>();
  o.max_uncovered_listed = limits.at("max_uncovered_listed").get<Int>();
  o.seed = limits.at("seed").get<std::uint64_t>();
  if (limits.contains("samples")) o.samples = limits.at("samples").get<Int>();
  if (limits.contains("point_limit")) o.point_limit = limits.at("point_limit").get<Int>();
  return o;
}

inline ExperimentResult run_verify(const json& c, const json& limits) {
  ExperimentResult out;
  const CoverScheme s = io::scheme_from(io::require(c, "construction"));
  const Window w = io::window_from(io::require(c, "window"));
  const Method method = parse_method(c.value("method", std::string("auto")));
  const VerificationReport r = verify_cover(s, w, verify_options(limits), method);
  out.report = io::to_json(r);
  out.report["colors_total"] = s.colors;
  out.report["domain"] = s.domain_note;
  out.csv = io::colors_csv(r);
  out.status = r.passed() ? Status::pass : Status::fail;
  return out;
}

inline ExperimentResult run_witness(const json& c, const json& limits) {
  ExperimentResult out;
  const CoverScheme s = io::scheme_from(io::require(c, "construction"));
  std::set<std::size_t> colors;
  if (c.contains("colors")) {
    for (Int v : io::int_list(c.at("colors"))) colors.insert(static_cast<std::size_t>(v));
  } else {
    for (std::size_t i = 0; i < s.colors; ++i) colors.insert(i);
  }
  const json& fibers = io::require(c, "fibers");
  const SpaceSpec base = io::space_from(io::require(fibers, "space"));
  std::vector<Point> points;
  if (fibers.contains("points")) {
    for (const json& p : fibers.at("points")) points.push_back(io::point_from(base, p));
  } else {
    points = enumerate_window(base, io::window_from(io::require(fibers, "window")));
  }
  const std::vector<Interval> box = io::box_from(io::require(c, "fiber_box"));
  const WitnessResult w = find_fiber_witnesses(s, colors, points, box);
  out.report["witness"] = io::to_json(w);
  out.report["fibers_total"] = points.size();
  out.status = w.all_witnessed ? Status::pass : Status::witness_missing;
  if (w.all_witnessed && c.value("control", true)) {
    Int radius = 0;
    for (const Interval& i : box) radius = std::max({radius, std::abs(i.lo), std::abs(i.hi)});
    const Int R = io::get_int_or(c, "R", radius);
    const MapSpec delta = witness_map(w, s.space, Control::identity(), Control::plus(2 * R));
    const ControlReport cr = check_coarse_control(delta, base, points, limits.at("workers").get<std::size_t>(),
                                                  limits.at("max_uncovered_listed").get<Int>());
    out.report["control"] = io::to_json(cr);
    out.report["control"]["lower"] = io::to_json(delta.lower);
    out.report["control"]["upper"] = io::to_json(delta.upper);
    if (!cr.passed()) out.status = Status::fail;
  }
  return out;
}

inline ExperimentResult run_control(const json& c, const json& limits) {
  ExperimentResult out;
  const MapSpec f = io::map_from(io::require(c, "map"));
  const SpaceSpec domain = io::space_from(io::require(c, "domain"));
  const Window w = io::window_from(io::require(c, "window"));
  const std::string check = c.value("check", std::string("both"));
  if (check != "both" && check != "upper" && check != "lower") throw ConfigError("check must be both, upper or lower");
  const ControlReport r = check_coarse_control(f, domain, w, limits.at("workers").get<std::size_t>(),
                                               limits.at("max_uncovered_listed").get<Int>(), check != "upper",
                                               check != "lower");
  out.report = io::to_json(r);
  out.report["codomain"] = io::to_json(map_codomain(f, domain));
  out.status = r.passed() ? Status::pass : Status::fail;
  return out;
}

inline ExperimentResult run_oracle(const json& c, const json& limits) {
  ExperimentResult out;
  const json& p = io::require(c, "params");
  const Int n = io::get_int(p, "n");
  const Int R = io::get_int(p, "R");
  const auto k = static_cast<std::size_t>(io::get_int(p, "k"));
  const Interval window = io::interval_from(io::require(c, "window"));
  OracleResult r;
  try {
    r = oracle_1d_nocover(n, R, k, window, limits.at("node_budget").get<Int>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  out.report = io::to_json(r);
  switch (r.outcome) {
    case OracleOutcome::feasible: {
      Window w;
      w.box = {window};
      const VerificationReport check = verify_points(assignment_scheme(r.assignment, k, n, R), w);
      out.report["reverified"] = check.passed();
      out.status = check.passed() ? Status::feasible : Status::error;
      break;
    }
    case OracleOutcome::infeasible:
      out.status = Status::infeasible;
      break;
    case OracleOutcome::inconclusive:
      out.status = Status::inconclusive;
      break;
  }
  return out;
}

inline ExperimentResult run_ord(const json& c) {
  ExperimentResult out;
  const FinFamily M = io::family_from(io::require(c, "family"));
  out.report = json{{"rank", ord_rank(M)},
                    {"max_member_size", max_member_size(M)},
                    {"support", support(M)},
                    {"inclusive", is_inclusive(M)},
                    {"family", io::to_json(M)}};
  out.status = Status::pass;
  return out;
}

inline ExperimentResult run_satunion(const json& c) {
  ExperimentResult out;
  const SpaceSpec space = c.contains("space") ? io::space_from(c.at("space")) : SpaceSpec::integer_lattice(1);
  const FiniteFamily V = io::finite_family_from(space, io::require(c, "V"));
  const FiniteFamily U = io::finite_family_from(space, io::require(c, "U"));
  const Int r = io::get_int(c, "r");
  if (r <= 0) throw ConfigError("saturated union needs r > 0");
  const FiniteFamily out_family = saturated_union(space, V, U, r);
  std::set<Point> inputs, outputs;
  for (const Point& p : V.points()) inputs.insert(p);
  for (const Point& p : U.points()) inputs.insert(p);
  for (const Point& p : out_family.points()) outputs.insert(p);
  const bool absorbs = std::includes(outputs.begin(), outputs.end(), inputs.begin(), inputs.end());
  auto family_stats = [&space](const FiniteFamily& F) {
    Int diam = 0, sep = kInfinity;
    std::vector<const std::vector<Point>*> cs;
    for (const auto& [key, pts] : F.cells) cs.push_back(&pts);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      diam = std::max(diam, set_diameter(space, *cs[i]));
      for (std::size_t j = i + 1; j < cs.size(); ++j) sep = std::min(sep, set_distance(space, *cs[i], *cs[j]));
    }
    return std::pair{diam, sep};
  };
  const auto [diameter, separation] = family_stats(out_family);
  out.report = json{{"cells", io::to_json(out_family)},
                    {"absorbs_inputs", absorbs},
                    {"max_diameter", diameter},
                    {"min_separation", separation == kInfinity ? json(nullptr) : json(separation)}};
  bool ok = absorbs;
  // With declared R and D, check the hypotheses and, when they hold, the bounds of the conclusion.
  if (c.contains("R") && c.contains("D")) {
    const Int R = io::get_int(c, "R");
    const Int D = io::get_int(c, "D");
    const auto [u_diam, u_sep] = family_stats(U);
    const auto [v_diam, v_sep] = family_stats(V);
    const bool hypotheses = R >= r && u_sep >= r && u_diam <= R && v_sep >= 5 * R && v_diam <= D;
    out.report["hypotheses_hold"] = hypotheses;
    out.report["bound"] = D + 2 * R + 2 * r;
    if (hypotheses) {
      const bool conclusion = separation >= r && diameter <= D + 2 * R + 2 * r;
      out.report["conclusion_holds"] = conclusion;
      ok = ok && conclusion;
    }
  }
  out.status = ok ? Status::pass : Status::fail;
  return out;
}

}  // namespace detail

inline std::string kind_for_command(const std::string& command) {
  if (command == "verify") return "verify-cover";
  if (command == "witness") return "fiber-witness";
  if (command == "control") return "coarse-control";
  if (command == "oracle1d") return "oracle-1d";
  if (command == "ord") return "ord-rank";
  if (command == "satunion") return "saturated-union";
  return "";
}

/// Runs one experiment. Configuration problems come back as status error.
inline ExperimentResult run_experiment(const json& config, const RunOverrides& overrides = {},
                                       const std::string& expected_kind = "") {
  ExperimentResult out;
  out.config = config;
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    std::string kind = config.value("kind", expected_kind);
    if (!expected_kind.empty() && kind != expected_kind) {
      throw ConfigError("config kind " + kind + " does not match the command (expected " + expected_kind + ")");
    }
    out.config["kind"] = kind;
    const json limits = detail::resolve_limits(config, overrides);
    out.config["limits"] = limits;
    ExperimentResult r;
    if (kind == "verify-cover") {
      r = detail::run_verify(config, limits);
    } else if (kind == "fiber-witness") {
      r = detail::run_witness(config, limits);
    } else if (kind == "coarse-control") {
      r = detail::run_control(config, limits);
    } else if (kind == "oracle-1d") {
      r = detail::run_oracle(config, limits);
    } else if (kind == "ord-rank") {
      r = detail::run_ord(config);
    } else if (kind == "saturated-union") {
      r = detail::run_satunion(config);
    } else {
      throw ConfigError("unknown experiment kind \"" + kind + "\"");
    }
    out.status = r.status;
    out.report = std::move(r.report);
    out.csv = std::move(r.csv);
  } catch (const ConfigError& e) {
    out.status = Status::error;
    out.report = json{{"error", e.what()}, {"error_kind", "config"}};
  } catch (const json::exception& e) {
    out.status = Status::error;
    out.report = json{{"error", e.what()}, {"error_kind", "config"}};
  } catch (const std::invalid_argument& e) {
    out.status = Status::error;
    out.report = json{{"error", e.what()}, {"error_kind", "config"}};
  } catch (const std::exception& e) {
    out.status = Status::error;
    out.report = json{{"error", e.what()}, {"error_kind", "runtime"}};
  }
  return out;
}

}  // namespace coarse
