#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <tuple>
#include <stdexcept>
#include <vector>

#include "coarse/scheme.hpp"

namespace coarse {

enum class OracleOutcome { feasible, infeasible, inconclusive };

inline const char* outcome_name(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::feasible:
      return "feasible";
    case OracleOutcome::infeasible:
      return "infeasible";
    case OracleOutcome::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

struct OracleAssignment {
  Int point = 0;
  std::size_t color = 0;
  Int cell = 0;
};

struct OracleResult {
  OracleOutcome outcome = OracleOutcome::inconclusive;
  Int nodes = 0;
  Int memo_states = 0;
  std::vector<OracleAssignment> assignment;  // feasible only
};

/// Exhaustive search for `colors` families of n-disjoint, R-bounded cells covering [lo, hi].
///
/// Points are assigned left to right. The state keeps, per color, the
/// clusters that can still grow or still constrain the next point, written
/// as offsets from it; states are canonical up to permuting colors, and
/// failed states are memoized.
inline OracleResult oracle_1d_nocover(Int n, Int R, std::size_t colors, Interval window, Int node_budget) {
  if (n < 1 || R < 0) throw std::invalid_argument("oracle needs n >= 1 and R >= 0");
  if (colors < 1 || colors > 2) throw std::invalid_argument("oracle supports 1 or 2 colors");
  if (window.empty()) throw std::invalid_argument("oracle window is empty");
  struct Cluster {
    Int from_min = 0;  // next point minus the cluster's least point
    Int from_max = 0;  // next point minus the cluster's greatest point
    Int id = 0;
    bool operator<(const Cluster& o) const {
      return std::tie(from_min, from_max) < std::tie(o.from_min, o.from_max);
    }
  };
  using State = std::vector<std::vector<Cluster>>;
  using Key = std::vector<std::vector<std::pair<Int, Int>>>;
  auto canonical = [](const State& st, Int remaining) {
    Key key;
    for (const auto& color : st) {
      std::vector<std::pair<Int, Int>> c;
      for (const Cluster& cl : color) c.emplace_back(cl.from_min, cl.from_max);
      std::sort(c.begin(), c.end());
      key.push_back(std::move(c));
    }
    std::sort(key.begin(), key.end());
    key.push_back({{remaining, 0}});
    return key;
  };
  OracleResult result;
  std::set<Key> failed;
  std::vector<Int> next_id(colors, 0);
  std::vector<OracleAssignment> path;
  bool exhausted_budget = false;

  auto advance = [n, R](State st) {
    for (auto& color : st) {
      std::vector<Cluster> kept;
      for (Cluster c : color) {
        ++c.from_min;
        ++c.from_max;
        if (c.from_min <= R || c.from_max < n) kept.push_back(c);
      }
      color = std::move(kept);
    }
    return st;
  };

  auto dfs = [&](auto&& self, Int p, const State& st) -> bool {
    if (p > window.hi) return true;
    if (++result.nodes > node_budget) {
      exhausted_budget = true;
      return false;
    }
    const Key key = canonical(st, window.hi - p);
    if (failed.count(key) > 0) return false;
    for (std::size_t c = 0; c < colors; ++c) {
      const auto& clusters = st[c];
      auto others_clear = [&](std::size_t skip) {
        for (std::size_t j = 0; j < clusters.size(); ++j) {
          if (j != skip && clusters[j].from_max < n) return false;
        }
        return true;
      };
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (clusters[j].from_min > R || !others_clear(j)) continue;
        State next = st;
        next[c][j].from_max = 0;
        path.push_back({p, c, clusters[j].id});
        if (self(self, p + 1, advance(next))) return true;
        path.pop_back();
        if (exhausted_budget) return false;
      }
      if (others_clear(clusters.size())) {
        State next = st;
        const Int id = next_id[c]++;
        next[c].push_back(Cluster{0, 0, id});
        path.push_back({p, c, id});
        if (self(self, p + 1, advance(next))) return true;
        path.pop_back();
        --next_id[c];
        if (exhausted_budget) return false;
      }
    }
    failed.insert(key);
    return false;
  };

  const bool found = dfs(dfs, window.lo, State(colors));
  result.memo_states = static_cast<Int>(failed.size());
  if (found) {
    result.outcome = OracleOutcome::feasible;
    result.assignment = path;
  } else {
    result.outcome = exhausted_budget ? OracleOutcome::inconclusive : OracleOutcome::infeasible;
  }
  return result;
}

/// The oracle's assignment as a scheme on Z, so it can be checked by the verifier.
inline CoverScheme assignment_scheme(const std::vector<OracleAssignment>& assignment, std::size_t colors, Int n, Int R) {
  auto table = std::make_shared<std::map<Int, std::pair<std::size_t, Int>>>();
  for (const OracleAssignment& a : assignment) (*table)[a.point] = {a.color, a.cell};
  CoverScheme s;
  s.name = "oracle-assignment";
  s.space = SpaceSpec::integer_lattice(1);
  s.colors = colors;
  s.separation.assign(colors, n);
  s.bound.assign(colors, R);
  s.domain_note = "the oracle window";
  s.classify = [table](const Point& p) -> std::optional<Classification> {
    auto it = table->find(std::get<LatticePoint>(p).coords.at(0));
    if (it == table->end()) return std::nullopt;
    return Classification{it->second.first, {it->second.second}};
  };
  return s;
}

}  // namespace coarse
