#pragma once

#include <functional>
#include <memory>
#include <string>

#include "coarse/maps.hpp"
#include "coarse/scheme.hpp"

namespace coarse {

using Region = std::function<bool(const Point&)>;

/// Same classification inside `region`, nothing outside.
inline CoverScheme restrict_scheme(const CoverScheme& s, Region region, const std::string& note = "region") {
  CoverScheme out = s;
  out.name = s.name + "|" + note;
  out.domain_note = s.domain_note + " restricted to " + note;
  auto inner = s.classify;
  out.classify = [inner, region = std::move(region)](const Point& p) -> std::optional<Classification> {
    if (!region(p)) return std::nullopt;
    return inner(p);
  };
  out.decompose = nullptr;
  return out;
}

/// Points whose levels and coordinates lie inside the window bounds.
inline Region window_region(const SpaceSpec& spec, const Window& w) {
  auto set = std::make_shared<const SlabSet>(make_slabs(spec, w));
  return [set](const Point& p) {
    NativePoint np;
    try {
      np = to_native(set->layout, p);
    } catch (const std::exception&) {
      return false;
    }
    for (const Slab& slab : set->slabs) {
      if (slab.tag != np.tag || slab.axes.size() != np.coords.size()) continue;
      for (std::size_t i = 0; i < slab.axes.size(); ++i) {
        if (!slab.axes[i].contains(np.coords[i])) return false;
      }
      return true;
    }
    return false;
  };
}

/// Preimage cover: a point of the domain gets the classification of its image.
inline CoverScheme pullback_scheme(const CoverScheme& s, const MapSpec& f, const SpaceSpec& domain) {
  CoverScheme out = s;
  out.name = s.name + "<-" + f.name;
  out.space = domain;
  out.domain_note = "preimage under " + f.name + " of " + s.domain_note;
  auto inner = s.classify;
  const SpaceSpec target = s.space;
  out.classify = [inner, f, target](const Point& p) -> std::optional<Classification> {
    const Point image = evaluate_map(f, p);
    validate(target, image);
    return inner(image);
  };
  out.decompose = nullptr;
  return out;
}

}  // namespace coarse
