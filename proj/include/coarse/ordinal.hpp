#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "coarse/integer.hpp"

namespace coarse {

/// A finite set of nonempty finite sets of naturals.
using FinSet = std::vector<Int>;  // sorted, distinct
using FinFamily = std::set<FinSet>;

inline FinSet make_finset(std::vector<Int> members) {
  for (Int v : members) {
    if (v < 0) throw std::invalid_argument("finite sets hold naturals only");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

inline FinFamily make_family(const std::vector<std::vector<Int>>& members) {
  FinFamily out;
  for (const auto& m : members) {
    FinSet s = make_finset(m);
    if (s.empty()) throw std::invalid_argument("family members must be nonempty");
    out.insert(std::move(s));
  }
  return out;
}

inline FinSet support(const FinFamily& M) {
  std::set<Int> all;
  for (const FinSet& s : M) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

/// { tau nonempty : tau disjoint from sigma, tau union sigma in M }.
inline FinFamily derived_family(const FinFamily& M, const FinSet& sigma) {
  FinFamily out;
  for (const FinSet& m : M) {
    if (!std::includes(m.begin(), m.end(), sigma.begin(), sigma.end())) continue;
    FinSet tau;
    std::set_difference(m.begin(), m.end(), sigma.begin(), sigma.end(), std::back_inserter(tau));
    if (!tau.empty()) out.insert(std::move(tau));
  }
  return out;
}

/// Ord M: 0 for the empty family, else 1 + max over support points a of Ord M^{a}.
class OrdRank {
 public:
  Int operator()(const FinFamily& M) {
    if (M.empty()) return 0;
    if (auto it = memo_.find(M); it != memo_.end()) return it->second;
    Int best = 0;
    for (Int a : support(M)) best = std::max(best, (*this)(derived_family(M, {a})));
    memo_.emplace(M, best + 1);
    return best + 1;
  }

 private:
  std::map<FinFamily, Int> memo_;
};

inline Int ord_rank(const FinFamily& M) { return OrdRank{}(M); }

inline Int max_member_size(const FinFamily& M) {
  Int best = 0;
  for (const FinSet& s : M) best = std::max(best, static_cast<Int>(s.size()));
  return best;
}

/// All nonempty subsets of members.
inline FinFamily inclusive_closure(const FinFamily& M) {
  FinFamily out;
  for (const FinSet& m : M) {
    if (m.size() > 20) throw std::invalid_argument("member too large for subset closure");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m.size()); ++mask) {
      FinSet sub;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if ((mask >> i) & 1U) sub.push_back(m[i]);
      }
      out.insert(std::move(sub));
    }
  }
  return out;
}

/// Every nonempty subset of a member is a member.
inline bool is_inclusive(const FinFamily& M) {
  for (const FinSet& m : M) {
    for (std::size_t i = 0; i < m.size() && m.size() > 1; ++i) {
      FinSet drop = m;
      drop.erase(drop.begin() + static_cast<std::ptrdiff_t>(i));
      if (M.count(drop) == 0) return false;
    }
  }
  return true;
}

}  // namespace coarse
