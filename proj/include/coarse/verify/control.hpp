#pragma once

#include <vector>

#include "coarse/maps.hpp"
#include "coarse/metric.hpp"
#include "coarse/verify/parallel.hpp"
#include "coarse/window.hpp"

namespace coarse {

struct ControlViolation {
  Point a;
  Point b;
  Int domain_distance = 0;
  Int image_distance = 0;
};

struct ControlReport {
  Int pairs = 0;
  Int violation_total = 0;
  std::vector<ControlViolation> violations;  // truncated listing
  Int max_stretch = 0;       // greatest d(f a, f b) - d(a, b)
  Int max_compression = 0;   // greatest d(a, b) - d(f a, f b)
  Int max_upper_excess = 0;  // greatest d(f a, f b) - upper(d(a, b)), at most 0 when the upper control holds
  Int max_lower_excess = 0;  // greatest lower(d(a, b)) - d(f a, f b), at most 0 when the lower control holds
  bool check_lower = true;
  bool check_upper = true;

  [[nodiscard]] bool passed() const { return violation_total == 0; }
};

/// Checks lower(d(a, b)) <= d(f a, f b) <= upper(d(a, b)) on every pair of `points`.
inline ControlReport check_coarse_control(const MapSpec& f, const SpaceSpec& domain, const std::vector<Point>& points,
                                          std::size_t workers = 1, Int listed = 20, bool check_lower = true,
                                          bool check_upper = true) {
  const SpaceSpec codomain = map_codomain(f, domain);
  std::vector<Point> images;
  images.reserve(points.size());
  for (const Point& p : points) {
    validate(domain, p);
    Point q = evaluate_map(f, p);
    validate(codomain, q);
    images.push_back(std::move(q));
  }
  ControlReport out;
  out.check_lower = check_lower;
  out.check_upper = check_upper;
  out.max_stretch = out.max_compression = out.max_upper_excess = out.max_lower_excess = -kInfinity;
  std::vector<ControlReport> rows(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    ControlReport& local = rows[i];
    local.max_stretch = local.max_compression = local.max_upper_excess = local.max_lower_excess = -kInfinity;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Int dx = distance(domain, points[i], points[j]);
      const Int dy = distance(codomain, images[i], images[j]);
      ++local.pairs;
      local.max_stretch = std::max(local.max_stretch, dy - dx);
      local.max_compression = std::max(local.max_compression, dx - dy);
      local.max_upper_excess = std::max(local.max_upper_excess, dy - f.upper(dx));
      local.max_lower_excess = std::max(local.max_lower_excess, f.lower(dx) - dy);
      const bool bad = (check_lower && f.lower(dx) > dy) || (check_upper && dy > f.upper(dx));
      if (bad) {
        ++local.violation_total;
        if (static_cast<Int>(local.violations.size()) < listed) local.violations.push_back({points[i], points[j], dx, dy});
      }
    }
  });
  for (ControlReport& local : rows) {
    out.pairs += local.pairs;
    out.violation_total += local.violation_total;
    for (auto& v : local.violations) {
      if (static_cast<Int>(out.violations.size()) < listed) out.violations.push_back(std::move(v));
    }
    out.max_stretch = std::max(out.max_stretch, local.max_stretch);
    out.max_compression = std::max(out.max_compression, local.max_compression);
    out.max_upper_excess = std::max(out.max_upper_excess, local.max_upper_excess);
    out.max_lower_excess = std::max(out.max_lower_excess, local.max_lower_excess);
  }
  if (out.pairs == 0) out.max_stretch = out.max_compression = out.max_upper_excess = out.max_lower_excess = 0;
  return out;
}

inline ControlReport check_coarse_control(const MapSpec& f, const SpaceSpec& domain, const Window& w,
                                          std::size_t workers = 1, Int listed = 20, bool check_lower = true,
                                          bool check_upper = true) {
  return check_coarse_control(f, domain, enumerate_window(domain, w), workers, listed, check_lower, check_upper);
}

}  // namespace coarse
