#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/points.hpp"
#include "coarse/window.hpp"

namespace coarse {

struct ColorRecord {
  std::size_t color = 0;
  Int cells_seen = 0;
  Int max_diameter = 0;
  std::optional<Int> min_separation;  // none with fewer than two cells
  Int declared_separation = 0;
  Int declared_bound = 0;
  bool separation_pass = true;
  bool bound_pass = true;

  friend bool operator==(const ColorRecord&, const ColorRecord&) = default;
};

enum class Verdict { pass, fail, pass_with_empty_color };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::pass_with_empty_color:
      return "pass-with-empty-color";
  }
  return "fail";
}

struct PointError {
  Point point;
  std::string message;
};

struct VerificationReport {
  std::string scheme;
  std::string method;  // "points" or "structured"
  Window window;
  Int points = 0;
  std::vector<ColorRecord> colors;
  std::vector<Point> uncovered;  // truncated listing
  Int uncovered_total = 0;
  std::vector<PointError> errors;
  Int samples_checked = 0;
  Verdict verdict = Verdict::pass;

  [[nodiscard]] bool passed() const { return verdict != Verdict::fail; }
};

/// Fills in per-color pass flags and the verdict.
inline void finalize(VerificationReport& r) {
  bool ok = r.uncovered_total == 0 && r.errors.empty();
  bool empty_color = false;
  for (ColorRecord& c : r.colors) {
    c.bound_pass = c.max_diameter <= c.declared_bound;
    c.separation_pass = !c.min_separation || *c.min_separation >= c.declared_separation;
    ok = ok && c.bound_pass && c.separation_pass;
    empty_color = empty_color || c.cells_seen == 0;
  }
  if (!ok) {
    r.verdict = Verdict::fail;
  } else {
    r.verdict = empty_color ? Verdict::pass_with_empty_color : Verdict::pass;
  }
}

}  // namespace coarse

namespace coarse {

struct VerifyOptions {
  std::size_t workers = 1;
  Int max_uncovered_listed = 20;
  Int samples = 4000;          // structured path: consistency samples
  std::uint64_t seed = 0x5eed;
  Int point_limit = 250'000;   // auto method switches to structured above this
};

}  // namespace coarse
