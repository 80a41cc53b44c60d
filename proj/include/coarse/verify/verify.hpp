#pragma once

#include <stdexcept>
#include <string>

#include "coarse/verify/points.hpp"
#include "coarse/verify/structured.hpp"

namespace coarse {

enum class Method { automatic, points, structured };

inline Method parse_method(const std::string& name) {
  if (name == "auto") return Method::automatic;
  if (name == "points") return Method::points;
  if (name == "structured") return Method::structured;
  throw std::invalid_argument("unknown verification method " + name);
}

/// Measures every color of `s` on the window and compares with the declared values.
///
/// The point method enumerates the window; the structured method works from
/// the scheme's decomposition and is used automatically for large windows.
inline VerificationReport verify_cover(const CoverScheme& s, const Window& w, const VerifyOptions& opt = {},
                                       Method method = Method::automatic) {
  if (method == Method::automatic) {
    method = s.decompose && count_window_points(s.space, w) > opt.point_limit ? Method::structured : Method::points;
  }
  if (method == Method::structured) return verify_structured(s, w, opt);
  if (const Int points = count_window_points(s.space, w); points > opt.point_limit * 4) {
    throw std::invalid_argument("window has " + std::to_string(points) + " points, more than the enumeration limit " +
                                std::to_string(opt.point_limit * 4) + (s.decompose ? "" : "; " + s.name +
                                " has no structured decomposition"));
  }
  return verify_points(s, w, opt);
}

}  // namespace coarse
