#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/scheme.hpp"

namespace coarse {

/// Which of the two alternating interval families of width `gap` holds v.
///
/// Side 1 is [2j*gap, (2j+1)*gap), side 0 is [(2j-1)*gap, 2j*gap); returns {side, j}.
struct Stripe {
  int side = 0;
  Int index = 0;
};

inline Stripe stripe_of(Int v, Int gap) {
  const Int q = floor_div(v, gap);
  if (floor_mod(q, 2) == 0) return {1, q / 2};
  return {0, (q + 1) / 2};
}

inline std::vector<Label> stripe_labels(const Run& axis, Int gap, int side) {
  return periodic_labels(axis, 2 * gap, side == 1 ? 0 : -gap, gap);
}

// ---------------------------------------------------------------------------
// Product grid: 2^dim colors, one per pattern of sides.

inline std::vector<Family> grid_families(const Slab& slab, Int gap) {
  const std::size_t dim = slab.axes.size();
  std::vector<Family> out;
  for (std::size_t color = 0; color < (std::size_t{1} << dim); ++color) {
    Family f{color, {}, {}};
    bool empty = false;
    for (std::size_t i = 0; i < dim && !empty; ++i) {
      const int side = static_cast<int>((color >> i) & 1U);
      auto labels = stripe_labels(slab.axes[i], gap, side);
      empty = labels.empty();
      f.axes.push_back(FamilyAxis{static_cast<int>(i), std::move(labels)});
    }
    if (!empty) out.push_back(std::move(f));
  }
  return out;
}

inline Classification grid_classify(const std::vector<Int>& coords, Int gap) {
  Classification c;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Stripe s = stripe_of(coords[i], gap);
    c.color |= static_cast<std::size_t>(s.side) << i;
    c.cell.push_back(s.index);
  }
  return c;
}

inline CoverScheme grid_cover(std::size_t dim, Int gap) {
  if (gap < 1) throw std::invalid_argument("grid cover needs gap >= 1");
  if (dim > 20) throw std::invalid_argument("grid cover dimension too large");
  CoverScheme s;
  s.name = "grid";
  s.space = SpaceSpec::integer_lattice(dim);
  s.colors = std::size_t{1} << dim;
  s.separation.assign(s.colors, gap);
  s.bound.assign(s.colors, dim == 0 ? 0 : gap - 1);
  s.domain_note = "all of Z^" + std::to_string(dim);
  s.classify = [gap](const Point& p) -> std::optional<Classification> {
    return grid_classify(std::get<LatticePoint>(p).coords, gap);
  };
  s.decompose = [gap](const NativeLayout&, const Slab& slab) { return grid_families(slab, gap); };
  return s;
}

// ---------------------------------------------------------------------------
// Staircase on (2^n Z)^dim x Z x [height]: the moving axis is cut into short
// I-intervals and long J-intervals whose phase depends on x mod 2^r.

struct StaircaseShape {
  Int n = 1;
  Int r = 2;
  std::size_t dim = 2;
  Interval height;
  Int total = 0;  // sum_{j=1}^{dim} 2^{rj}
  Int width = 0;  // r + n

  StaircaseShape(Int n_, Int r_, std::size_t dim_, Interval height_)
      : n(n_), r(r_), dim(dim_), height(height_) {
    if (!(r > n && n >= 1)) throw std::invalid_argument("staircase requires r > n >= 1");
    if (dim < 1) throw std::invalid_argument("staircase needs at least one x coordinate");
    if (height.empty()) throw std::invalid_argument("staircase height interval is empty");
    for (std::size_t j = 1; j <= dim; ++j) {
      total = checked_add(total, pow2(checked_mul(r, static_cast<Int>(j))));
    }
    width = r + n;
  }

  [[nodiscard]] Int period() const { return checked_mul(total, width); }

  /// Phase p(x) = sum_j (x_j mod 2^r) 2^{r(j-1)}.
  [[nodiscard]] Int phase(const std::vector<Int>& x) const {
    Int p = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      const Int residue = floor_mod(x[j], pow2(r));
      p = checked_add(p, checked_mul(residue, pow2(r * static_cast<Int>(j))));
    }
    return p;
  }

  /// A_k = (k T + p)(r + n).
  [[nodiscard]] Int anchor(Int k, Int p) const {
    return checked_mul(checked_add(checked_mul(k, total), p), width);
  }
};

inline constexpr std::size_t kStaircaseJ = 0;
inline constexpr std::size_t kStaircaseI = 1;

inline std::optional<Classification> staircase_classify(const StaircaseShape& sh,
                                                        const std::vector<Int>& coords) {
  const Int h = coords.at(sh.dim + 1);
  if (!sh.height.contains(h)) return std::nullopt;
  const std::vector<Int> x(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(sh.dim));
  const Int t = coords[sh.dim];
  const Int p = sh.phase(x);
  const Int u = floor_div(checked_add(t, sh.n), sh.width);
  const Int k = floor_div(u - p, sh.total);
  Classification c;
  c.color = t <= sh.anchor(k, p) ? kStaircaseI : kStaircaseJ;
  c.cell = x;
  c.cell.push_back(k);
  return c;
}

inline std::vector<Family> staircase_families(const StaircaseShape& sh, const Slab& slab) {
  const Run height = clip_run(slab.axes.at(sh.dim + 1), sh.height.lo, sh.height.hi);
  if (height.empty()) return {};
  const Int modulus = pow2(sh.r);
  // Per x axis: values grouped by residue mod 2^r.
  std::vector<std::vector<std::pair<Int, std::vector<Label>>>> groups(sh.dim);
  for (std::size_t j = 0; j < sh.dim; ++j) {
    const Run& axis = slab.axes[j];
    std::map<Int, std::vector<Label>> by_residue;
    for (Int i = 0; i < axis.count(); ++i) {
      const Int v = axis.at(i);
      by_residue[floor_mod(v, modulus)].push_back(Label{v, {Run{v, v, axis.step}}});
    }
    for (auto& [res, labels] : by_residue) groups[j].emplace_back(res, std::move(labels));
    if (groups[j].empty()) return {};
  }
  std::vector<Family> out;
  std::vector<std::size_t> pick(sh.dim, 0);
  const Int period = sh.period();
  while (true) {
    std::vector<Int> residues(sh.dim);
    for (std::size_t j = 0; j < sh.dim; ++j) residues[j] = groups[j][pick[j]].first;
    const Int p = sh.phase(residues);
    const Int a0 = sh.anchor(0, p);
    const Run& moving = slab.axes[sh.dim];
    for (std::size_t color : {kStaircaseJ, kStaircaseI}) {
      auto labels = color == kStaircaseI
                        ? periodic_labels(moving, period, a0 - sh.n, sh.n + 1)
                        : periodic_labels(moving, period, a0 + 1, period - sh.n - 1);
      if (labels.empty()) continue;
      Family f{color, residues, {}};
      for (std::size_t j = 0; j < sh.dim; ++j) {
        f.axes.push_back(FamilyAxis{static_cast<int>(j), groups[j][pick[j]].second});
      }
      f.axes.push_back(FamilyAxis{static_cast<int>(sh.dim), std::move(labels)});
      f.axes.push_back(FamilyAxis{static_cast<int>(sh.dim + 1), whole_label(height)});
      out.push_back(std::move(f));
    }
    std::size_t j = 0;
    while (j < sh.dim && ++pick[j] == groups[j].size()) pick[j++] = 0;
    if (j == sh.dim) break;
  }
  return out;
}

inline CoverScheme staircase_cover(Int n, Int r, std::size_t dim, Interval height) {
  const StaircaseShape sh(n, r, dim, height);
  CoverScheme s;
  s.name = "staircase";
  std::vector<Int> steps(dim, pow2(n));
  steps.push_back(1);
  steps.push_back(1);
  s.space = SpaceSpec::lattice(steps);
  s.colors = 2;
  const Int hspan = height.hi - height.lo;
  s.separation = {n, r};
  s.bound = {std::max(sh.period(), hspan), std::max(n, hspan)};
  s.domain_note = "(2^" + std::to_string(n) + "Z)^" + std::to_string(dim) + " x Z x [" +
                  std::to_string(height.lo) + "," + std::to_string(height.hi) + "]";
  s.classify = [sh](const Point& p) { return staircase_classify(sh, std::get<LatticePoint>(p).coords); };
  s.decompose = [sh](const NativeLayout&, const Slab& slab) { return staircase_families(sh, slab); };
  return s;
}

// ---------------------------------------------------------------------------
// Striped grid: the shared skeleton of the mixed grid and of one shift-union
// block. Leading "x" axes are cut into long C and short D intervals whose
// phase depends on the stripe pattern l of the trailing "y" axes.

struct StripedGrid {
  std::size_t x_count = 0;
  std::size_t y_count = 0;
  Int period = 1;     // C/D period
  Int d_width = 1;    // width of a D interval
  Int l_step = 1;     // D offset grows by l_step per pattern index
  Int d_base = 0;     // D offset = l * l_step + d_base
  Int x_gap = 1;      // stripe width on x axes
  Int y_gap = 1;      // stripe width on y axes

  [[nodiscard]] std::size_t types() const { return x_count * (std::size_t{1} << x_count) + 1; }
  [[nodiscard]] Int d_offset(Int l) const { return l * l_step + d_base; }

  /// Type 0 is the all-C family; type 2^x(s-1)+t has its first D interval on axis s.
  struct Hit {
    std::size_t type = 0;
    CellKey key;
  };

  [[nodiscard]] Hit classify(const std::vector<Int>& v) const {
    Int l = 1;
    std::vector<Int> w_index;
    for (std::size_t i = 0; i < y_count; ++i) {
      const Stripe s = stripe_of(v[x_count + i], y_gap);
      l += static_cast<Int>(s.side) << i;
      w_index.push_back(s.index);
    }
    const Int off = d_offset(l);
    std::size_t first_d = x_count;
    std::vector<Int> cd_index(x_count);
    for (std::size_t i = 0; i < x_count; ++i) {
      const Int u = v[i] - off;
      const Int j = floor_div(u, period);
      if (u - j * period < d_width) {
        cd_index[i] = j;
        if (first_d == x_count) first_d = i;
      } else {
        cd_index[i] = j + 1;
      }
    }
    Hit h;
    h.key.push_back(l);
    if (first_d == x_count) {
      h.key.insert(h.key.end(), cd_index.begin(), cd_index.end());
    } else {
      std::size_t t = 0;
      for (std::size_t i = 0; i < x_count; ++i) {
        const Stripe s = stripe_of(v[i], x_gap);
        t |= static_cast<std::size_t>(s.side) << i;
        h.key.push_back(i == first_d ? cd_index[i] : s.index);
      }
      h.type = (std::size_t{1} << x_count) * first_d + t + 1;
    }
    h.key.insert(h.key.end(), w_index.begin(), w_index.end());
    return h;
  }

  /// Families on a lattice slab with x_count + y_count axes; family color is the type.
  [[nodiscard]] std::vector<Family> families(const Slab& slab) const {
    std::vector<Family> out;
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << y_count); ++pattern) {
      const Int l = static_cast<Int>(pattern) + 1;
      std::vector<FamilyAxis> w_axes;
      bool empty = false;
      for (std::size_t i = 0; i < y_count && !empty; ++i) {
        auto labels = stripe_labels(slab.axes[x_count + i], y_gap, static_cast<int>((pattern >> i) & 1U));
        empty = labels.empty();
        w_axes.push_back(FamilyAxis{static_cast<int>(x_count + i), std::move(labels)});
      }
      if (empty) continue;
      const Int off = d_offset(l);
      std::vector<std::vector<Label>> c_labels(x_count), d_labels(x_count);
      std::vector<std::array<std::vector<Label>, 2>> v_labels(x_count);
      for (std::size_t i = 0; i < x_count; ++i) {
        c_labels[i] = periodic_labels(slab.axes[i], period, off + d_width - period, period - d_width);
        d_labels[i] = periodic_labels(slab.axes[i], period, off, d_width);
        v_labels[i][0] = stripe_labels(slab.axes[i], x_gap, 0);
        v_labels[i][1] = stripe_labels(slab.axes[i], x_gap, 1);
      }
      auto emit = [&](std::size_t type, std::vector<FamilyAxis> x_axes) {
        for (const FamilyAxis& a : x_axes) {
          if (a.labels.empty()) return;
        }
        Family f{type, {l, static_cast<Int>(type)}, std::move(x_axes)};
        f.axes.insert(f.axes.end(), w_axes.begin(), w_axes.end());
        out.push_back(std::move(f));
      };
      {
        std::vector<FamilyAxis> x_axes;
        for (std::size_t i = 0; i < x_count; ++i) x_axes.push_back(FamilyAxis{static_cast<int>(i), c_labels[i]});
        emit(0, std::move(x_axes));
      }
      for (std::size_t s = 0; s < x_count; ++s) {
        for (std::size_t t = 0; t < (std::size_t{1} << x_count); ++t) {
          std::vector<FamilyAxis> x_axes;
          for (std::size_t i = 0; i < x_count; ++i) {
            const auto& v = v_labels[i][(t >> i) & 1U];
            std::vector<Label> labels;
            if (i < s) {
              labels = intersect_labels(v, c_labels[i]);
            } else if (i == s) {
              labels = intersect_labels(d_labels[i], v);
            } else {
              labels = v;
            }
            x_axes.push_back(FamilyAxis{static_cast<int>(i), std::move(labels)});
          }
          emit((std::size_t{1} << x_count) * s + t + 1, std::move(x_axes));
        }
      }
    }
    return out;
  }
};

/// Cover of Z^m x (kZ)^n with one k-disjoint color and m 2^m R-disjoint colors.
inline StripedGrid mixed_grid_shape(std::size_t m, std::size_t n, Int k, Int R) {
  if (n < 1) throw std::invalid_argument("mixed grid needs n >= 1");
  if (k < 1 || R < 1) throw std::invalid_argument("mixed grid needs k >= 1 and R >= 1");
  if (m > 16 || n > 16) throw std::invalid_argument("mixed grid dimensions too large");
  StripedGrid g;
  g.x_count = m;
  g.y_count = n;
  const Int S = checked_add(R, k);
  g.period = checked_mul(checked_mul(pow2(static_cast<Int>(n)), static_cast<Int>(n)), S);
  g.d_width = k;
  g.l_step = S;
  g.d_base = -R - k;
  g.x_gap = R;
  g.y_gap = R;
  return g;
}

inline CoverScheme mixed_grid_cover(std::size_t m, std::size_t n, Int k, Int R) {
  const StripedGrid g = mixed_grid_shape(m, n, k, R);
  CoverScheme s;
  s.name = "mixed-grid";
  std::vector<Int> steps(m, 1);
  steps.resize(m + n, k);
  s.space = SpaceSpec::lattice(steps);
  s.colors = g.types();
  s.separation.assign(s.colors, R);
  s.separation[0] = k;
  s.bound.assign(s.colors, std::max(R - 1, k - 1));
  s.bound[0] = std::max(g.period - k - 1, R - 1);
  s.domain_note = "Z^" + std::to_string(m) + " x (" + std::to_string(k) + "Z)^" + std::to_string(n);
  s.classify = [g](const Point& p) -> std::optional<Classification> {
    auto h = g.classify(std::get<LatticePoint>(p).coords);
    return Classification{h.type, std::move(h.key)};
  };
  s.decompose = [g](const NativeLayout&, const Slab& slab) { return g.families(slab); };
  return s;
}

}  // namespace coarse
