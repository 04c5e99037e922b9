#pragma once

// Brute-force ground truth for small instances: enumerates every matching.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/weight.hpp"

namespace profmatch {

inline constexpr std::size_t oracle_edge_limit = 24;

namespace detail {

inline void check_oracle_size(const Instance& inst) {
  if (inst.edge_count() > oracle_edge_limit)
    throw Error(ErrorCode::too_large, std::to_string(inst.edge_count()) +
                                          " edges exceed the enumeration limit of " +
                                          std::to_string(oracle_edge_limit));
}

}  // namespace detail

/// Calls `visit` once per matching of inst, the empty matching included.
/// Order: recursive exclusion before inclusion over the edge list.
inline void for_each_matching(const Instance& inst, const std::function<void(const Matching&)>& visit) {
  detail::check_oracle_size(inst);
  Matching current(inst.a_count(), inst.b_count());
  std::function<void(EdgeId)> recurse = [&](EdgeId e) {
    if (e == inst.edge_count()) {
      visit(current);
      return;
    }
    recurse(e + 1);
    const Edge& edge = inst.edge(e);
    if (!current.partner_of_a(edge.a) && !current.partner_of_b(edge.b)) {
      current.add(edge.a, edge.b);
      recurse(e + 1);
      current.remove(edge.a, edge.b);
    }
  };
  recurse(0);
}

inline std::vector<Matching> enumerate_matchings(const Instance& inst) {
  std::vector<Matching> out;
  for_each_matching(inst, [&](const Matching& m) { out.push_back(m); });
  return out;
}

/// Lexicographically largest profile and every matching attaining it.
inline std::pair<Profile, std::vector<Matching>> brute_force_optimal(const Instance& inst) {
  Profile best(inst.r());
  std::vector<Matching> argmax;
  for_each_matching(inst, [&](const Matching& m) {
    const Profile p = profile_of(m, inst);
    const auto order = cmp_profile(p, best);
    if (order > 0 || argmax.empty()) {
      best = p;
      argmax.clear();
      argmax.push_back(m);
    } else if (order == 0) {
      argmax.push_back(m);
    }
  });
  return {best, argmax};
}

/// Largest total weight over all matchings of inst and its attaining set.
inline std::pair<Weight, std::vector<Matching>> brute_force_max_weight(const Instance& inst,
                                                                      const WeightAssignment& w) {
  Weight best = -1;
  std::vector<Matching> argmax;
  for_each_matching(inst, [&](const Matching& m) {
    Weight total = 0;
    for (const Edge& pair : m.pairs()) total += w.at(pair.a, pair.b);
    if (total > best) {
      best = total;
      argmax.clear();
      argmax.push_back(m);
    } else if (total == best) {
      argmax.push_back(m);
    }
  });
  return {best, argmax};
}

}  // namespace profmatch
