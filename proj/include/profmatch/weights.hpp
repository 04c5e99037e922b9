#pragma once

// Weight functions for reducing profile-based matching to maximum-weight
// matching: the mixed-radix construction, the exact checker for the
// "singleton beats the displaced pair" weight condition, and the preset
// families for rank-maximal, minimum-cost rank-maximal and fair matching.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/weight.hpp"

namespace profmatch {

/// Digit base at position i is spread * U_i + 1. A spread of 2 gives the
/// classic 2 U_i + 1 radix; a spread of k (the largest possible matching
/// size) makes the weight order of whole matchings exactly lexicographic.
enum class RadixBase {
  two_u_plus_one,
  matching_bound,
};

/// Place value of each utility position: prod_{j > i} (spread U_j + 1).
inline std::vector<Weight> radix_place_values(std::span<const Utility> bounds, std::uint64_t spread = 2) {
  std::vector<Weight> place(bounds.size());
  Weight running = 1;
  for (std::size_t i = bounds.size(); i-- > 0;) {
    place[i] = running;
    running *= Weight(spread) * bounds[i] + 1;
  }
  return place;
}

/// prod_i (spread U_i + 1); every mixed-radix weight is strictly below it.
inline Weight radix_bound(std::span<const Utility> bounds, std::uint64_t spread = 2) {
  Weight running = 1;
  for (const Utility u : bounds) running *= Weight(spread) * u + 1;
  return running;
}

/// Spread used by `base` on `completed`: 2, or min(|A|, |B|) of the original
/// sides (at least 1).
inline std::uint64_t radix_spread(const CompletedInstance& completed, RadixBase base) {
  if (base == RadixBase::two_u_plus_one) return 2;
  return std::max<std::uint64_t>(1, std::min(completed.original_a_count(), completed.original_b_count()));
}

/// Reads the utility vector as digits of a mixed-radix number (position 0
/// most significant) given the place values.
inline Weight mixed_radix_weight(std::span<const Utility> utilities, std::span<const Weight> place) {
  Weight w = 0;
  for (std::size_t i = 0; i < utilities.size(); ++i) w += place[i] * utilities[i];
  return w;
}

/// With the default base the weights stay below prod (2 U_i + 1) but the
/// heaviest matching is only guaranteed optimal when at most two pairs can be
/// matched; a 3 x 3 instance can trade one unit of the first utility for a
/// three-pair cycle. RadixBase::matching_bound is always exact.
inline WeightAssignment mixed_radix(const CompletedInstance& completed,
                                    RadixBase base = RadixBase::two_u_plus_one) {
  WeightAssignment out(completed.a_count(), completed.b_count());
  const auto spread = radix_spread(completed, base);
  const auto place = radix_place_values(completed.bounds(), spread);
  if (fits_narrow(radix_bound(completed.bounds(), spread))) {
    std::vector<std::int64_t> narrow_place(place.size());
    for (std::size_t i = 0; i < place.size(); ++i) narrow_place[i] = static_cast<std::int64_t>(place[i]);
    for (std::size_t a = 0; a < completed.a_count(); ++a)
      for (std::size_t b = 0; b < completed.b_count(); ++b) {
        const auto u = completed.utilities(a, b);
        std::int64_t w = 0;
        for (std::size_t i = 0; i < u.size(); ++i) w += narrow_place[i] * static_cast<std::int64_t>(u[i]);
        out.set(a, b, w);
      }
    return out;
  }
  for (std::size_t a = 0; a < completed.a_count(); ++a)
    for (std::size_t b = 0; b < completed.b_count(); ++b)
      out.set(a, b, mixed_radix_weight(completed.utilities(a, b), place));
  return out;
}

/// A vertex-sharing triple (a,b), (a,b'), (a',b) where the singleton profile of
/// (a,b) beats the pair but w(a,b) <= w(a,b') + w(a',b).
struct Counterexample {
  Edge ab;
  Edge ab_prime;
  Edge a_prime_b;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;

  std::string to_string() const {
    auto e = [](const Edge& x) { return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")"; };
    return e(ab) + " vs " + e(ab_prime) + " + " + e(a_prime_b);
  }
};

namespace detail {

template <class W>
std::vector<W> dense_weights(const WeightAssignment& w) {
  if constexpr (std::is_same_v<W, std::int64_t>) {
    return *w.narrow();
  } else {
    if (const auto* wide = w.wide()) return *wide;
    const auto& n = *w.narrow();
    return std::vector<W>(n.begin(), n.end());
  }
}

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <class W>
std::size_t hash_weight(const W& w) {
  if constexpr (std::is_same_v<W, std::int64_t>) {
    return std::hash<std::int64_t>{}(w);
  } else {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(w & Weight(~std::uint64_t{0})));
  }
}

// Edges with identical (utility vector, weight) behave identically in the
// condition, so the scan works on interned classes and memoizes per
// (edge class, row class set, column class set).
template <class W>
std::optional<Counterexample> find_violation(const CompletedInstance& c, const std::vector<W>& w) {
  const std::size_t na = c.a_count();
  const std::size_t nb = c.b_count();

  struct Key {
    std::span<const Utility> u;
    const W* w;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = hash_weight(*k.w);
      for (const Utility x : k.u) h = hash_mix(h, std::hash<Utility>{}(x));
      return h;
    }
  };
  struct KeyEq {
    bool operator()(const Key& x, const Key& y) const {
      return *x.w == *y.w && std::equal(x.u.begin(), x.u.end(), y.u.begin());
    }
  };

  std::unordered_map<Key, std::uint32_t, KeyHash, KeyEq> intern;
  std::vector<Key> classes;
  std::vector<std::uint32_t> class_of(na * nb);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t cell = a * nb + b;
      Key k{c.utilities(a, b), &w[cell]};
      const auto [it, inserted] = intern.emplace(k, static_cast<std::uint32_t>(classes.size()));
      if (inserted) classes.push_back(k);
      class_of[cell] = it->second;
    }

  // Per-vertex class multisets, interned as sorted (class, count) lists.
  using ClassCounts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  std::map<ClassCounts, std::uint32_t> set_ids;
  std::vector<ClassCounts> sets;
  auto intern_set = [&](ClassCounts s) {
    const auto [it, inserted] = set_ids.emplace(s, static_cast<std::uint32_t>(sets.size()));
    if (inserted) sets.push_back(std::move(s));
    return it->second;
  };
  auto counts_of = [](std::vector<std::uint32_t> ids) {
    std::sort(ids.begin(), ids.end());
    ClassCounts out;
    for (const auto id : ids) {
      if (!out.empty() && out.back().first == id)
        ++out.back().second;
      else
        out.push_back({id, 1});
    }
    return out;
  };
  std::vector<std::uint32_t> row_set(na), col_set(nb);
  std::vector<std::uint32_t> scratch;
  for (std::size_t a = 0; a < na; ++a) {
    scratch.assign(class_of.begin() + static_cast<std::ptrdiff_t>(a * nb),
                   class_of.begin() + static_cast<std::ptrdiff_t>((a + 1) * nb));
    row_set[a] = intern_set(counts_of(scratch));
  }
  for (std::size_t b = 0; b < nb; ++b) {
    scratch.clear();
    for (std::size_t a = 0; a < na; ++a) scratch.push_back(class_of[a * nb + b]);
    col_set[b] = intern_set(counts_of(scratch));
  }

  constexpr std::uint32_t none = ~std::uint32_t{0};
  // Class of the edge itself leaves the neighbour set when it occurs once.
  auto excluded = [&](std::uint32_t set, std::uint32_t cls) {
    const auto& s = sets[set];
    const auto it = std::lower_bound(s.begin(), s.end(), std::pair<std::uint32_t, std::uint32_t>{cls, 0});
    return (it != s.end() && it->first == cls && it->second == 1) ? cls : none;
  };

  struct MemoKey {
    std::uint32_t cls, rows, row_ex, cols, col_ex;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      std::size_t h = k.cls;
      for (const auto v : {k.rows, k.row_ex, k.cols, k.col_ex}) h = hash_mix(h, v);
      return h;
    }
  };
  std::unordered_map<MemoKey, bool, MemoHash> memo;

  auto violates = [&](const Key& x, const Key& y, const Key& z) {
    return lex_greater_than_sum(x.u, y.u, z.u) && *x.w <= *y.w + *z.w;
  };

  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      const std::uint32_t cls = class_of[a * nb + b];
      const MemoKey key{cls, row_set[a], excluded(row_set[a], cls), col_set[b],
                        excluded(col_set[b], cls)};
      auto it = memo.find(key);
      if (it == memo.end()) {
        bool bad = false;
        for (const auto& [rc, rn] : sets[key.rows]) {
          if (rc == key.row_ex) continue;
          for (const auto& [cc, cn] : sets[key.cols]) {
            if (cc == key.col_ex) continue;
            if (violates(classes[cls], classes[rc], classes[cc])) {
              bad = true;
              break;
            }
          }
          if (bad) break;
        }
        it = memo.emplace(key, bad).first;
      }
      if (!it->second) continue;
      // Canonical witness: ascending b', then a'.
      for (std::size_t bp = 0; bp < nb; ++bp) {
        if (bp == b) continue;
        for (std::size_t ap = 0; ap < na; ++ap) {
          if (ap == a) continue;
          if (violates(classes[cls], classes[class_of[a * nb + bp]], classes[class_of[ap * nb + b]]))
            return Counterexample{{a, b}, {a, bp}, {ap, b}};
        }
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Exhaustive check of the weight condition over every vertex-sharing triple
/// of the completed instance. Returns the first violation in ascending
/// (a, b, b', a') order, or nullopt when the condition holds.
///
/// Pass a square completion (Balance::square): on unbalanced grids a vertex
/// without a partner on the other side escapes every triple.
inline std::optional<Counterexample> satisfies_condition(const CompletedInstance& completed,
                                                         const WeightAssignment& w) {
  if (w.a_count() != completed.a_count() || w.b_count() != completed.b_count())
    throw Error(ErrorCode::length_mismatch, "weight grid does not match the completed instance");
  if (w.narrow()) return detail::find_violation(completed, detail::dense_weights<std::int64_t>(w));
  return detail::find_violation(completed, detail::dense_weights<Weight>(w));
}

/// Non-exhaustive variant: tests `samples` uniformly random triples drawn from
/// a generator seeded with `seed`. A nullopt result is evidence, not proof.
inline std::optional<Counterexample> satisfies_condition_sampled(const CompletedInstance& completed,
                                                                 const WeightAssignment& w,
                                                                 std::size_t samples, std::uint64_t seed) {
  if (w.a_count() != completed.a_count() || w.b_count() != completed.b_count())
    throw Error(ErrorCode::length_mismatch, "weight grid does not match the completed instance");
  const std::size_t na = completed.a_count();
  const std::size_t nb = completed.b_count();
  if (na < 2 || nb < 2) return std::nullopt;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t a = rng() % na;
    const std::size_t b = rng() % nb;
    std::size_t bp = rng() % (nb - 1);
    std::size_t ap = rng() % (na - 1);
    if (bp >= b) ++bp;
    if (ap >= a) ++ap;
    if (detail::lex_greater_than_sum(completed.utilities(a, b), completed.utilities(a, bp),
                                     completed.utilities(ap, b)) &&
        w.at(a, b) <= w.at(a, bp) + w.at(ap, b))
      return Counterexample{{a, b}, {a, bp}, {ap, b}};
  }
  return std::nullopt;
}

/// Rank-ladder weights with w[r] = 1, w[r-1] = 2 and
/// w[i] = w[i+1] + w[i+2] + 1. Index 0 holds rank 1.
inline std::vector<Weight> grp_weights(std::size_t r) {
  if (r < 2) throw Error(ErrorCode::r_too_small, "grp_weights needs r >= 2, got " + std::to_string(r));
  std::vector<Weight> w(r);
  w[r - 1] = 1;
  w[r - 2] = 2;
  for (std::size_t i = r - 2; i-- > 0;) w[i] = w[i + 1] + w[i + 2] + 1;
  return w;
}

/// Per-edge ranks (1 = best) aligned with an instance's edge list, plus
/// optional per-edge distances in {0..max_distance}.
struct RankSystem {
  std::vector<std::uint32_t> rank;
  std::optional<std::vector<Utility>> distance;
  Utility max_distance = 0;
};

namespace detail {

inline void check_ranks(const Instance& inst, const RankSystem& ranks, std::size_t r) {
  if (ranks.rank.size() != inst.edge_count())
    throw Error(ErrorCode::length_mismatch, "rank system does not cover every edge");
  for (EdgeId e = 0; e < ranks.rank.size(); ++e)
    if (ranks.rank[e] < 1 || ranks.rank[e] > r)
      throw Error(ErrorCode::rank_out_of_bounds, "edge " + std::to_string(e) + " has rank " +
                                                     std::to_string(ranks.rank[e]) + ", allowed 1.." +
                                                     std::to_string(r));
}

}  // namespace detail

/// 2^(r - rank + 1) - 1. With r = 4 this is the 15/7/3/1 ladder.
inline Weight rm_rank_weight(std::uint32_t rank, std::size_t r) {
  return (Weight(1) << (r - rank + 1)) - 1;
}

/// Rank-maximal weights for every instance edge; pairs outside the edge set
/// get 0. The exponent base r generalizes the four-rank formula.
inline WeightAssignment rm_weights(const Instance& inst, const RankSystem& ranks, std::size_t r) {
  detail::check_ranks(inst, ranks, r);
  WeightAssignment out(inst.a_count(), inst.b_count());
  std::vector<Weight> ladder(r + 1);
  for (std::uint32_t k = 1; k <= r; ++k) ladder[k] = rm_rank_weight(k, r);
  for (EdgeId e = 0; e < inst.edge_count(); ++e)
    out.set(inst.edge(e).a, inst.edge(e).b, ladder[ranks.rank[e]]);
  return out;
}

/// (D + 1) 2^(r - rank) - D - d(e). Throws NegativeWeight where the closed
/// form drops below zero; the mixed-radix weights over
/// <rank indicators..., D - d(e)> are the safe alternative.
inline WeightAssignment mcrm_weights(const Instance& inst, const RankSystem& ranks, std::size_t r) {
  detail::check_ranks(inst, ranks, r);
  if (!ranks.distance)
    throw Error(ErrorCode::missing_distance, "minimum-cost rank-maximal weights need distances");
  const auto& d = *ranks.distance;
  if (d.size() != inst.edge_count())
    throw Error(ErrorCode::missing_distance, "distance list does not cover every edge");
  const Weight big_d = ranks.max_distance;
  WeightAssignment out(inst.a_count(), inst.b_count());
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    if (d[e] > ranks.max_distance)
      throw Error(ErrorCode::invalid_instance, "distance of edge " + std::to_string(e) + " exceeds D");
    const Weight w = (big_d + 1) * (Weight(1) << (r - ranks.rank[e])) - big_d - d[e];
    if (w < 0)
      throw Error(ErrorCode::negative_weight,
                  "closed-form weight of edge (" + std::to_string(inst.edge(e).a) + "," +
                      std::to_string(inst.edge(e).b) + ") is " + w.str() +
                      "; use the mixed-radix weights over rank indicators and D - d instead");
    out.set(inst.edge(e).a, inst.edge(e).b, w);
  }
  return out;
}

/// Instance with r rank-indicator utilities: u_i(e) = 1 iff rank(e) = i.
inline Instance rank_indicator_instance(const Instance& shape, const RankSystem& ranks, std::size_t r) {
  detail::check_ranks(shape, ranks, r);
  Instance out(shape.a_count(), shape.b_count(), std::vector<Utility>(r, 1));
  std::vector<Utility> u(r);
  for (EdgeId e = 0; e < shape.edge_count(); ++e) {
    std::fill(u.begin(), u.end(), 0);
    u[ranks.rank[e] - 1] = 1;
    out.add_edge(shape.edge(e).a, shape.edge(e).b, u);
  }
  return out;
}

/// Bounds <1, 2, ..., 2> of the fair-matching encoding with r ranks.
inline std::vector<Utility> fair_bounds(std::size_t r) {
  std::vector<Utility> bounds(r + 1, 2);
  bounds[0] = 1;
  return bounds;
}

/// r + 1 utilities of one edge: a constant 1 (cardinality), then for
/// threshold t = r, r-1, ..., 1 the number of endpoints ranking the other <= t.
inline std::vector<Utility> fair_utilities(std::uint32_t rank_by_a, std::uint32_t rank_by_b, std::size_t r) {
  if (rank_by_a < 1 || rank_by_a > r || rank_by_b < 1 || rank_by_b > r)
    throw Error(ErrorCode::rank_out_of_bounds, "fair ranks must lie in 1.." + std::to_string(r));
  std::vector<Utility> u(r + 1);
  u[0] = 1;
  for (std::size_t j = 1; j <= r; ++j) {
    const std::size_t threshold = r - j + 1;
    u[j] = Utility{rank_by_a <= threshold} + Utility{rank_by_b <= threshold};
  }
  return u;
}

struct RankedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::uint32_t rank_by_a = 1;  // how a ranks b
  std::uint32_t rank_by_b = 1;  // how b ranks a
};

inline Instance fair_instance(std::size_t a_count, std::size_t b_count, std::span<const RankedEdge> edges,
                              std::size_t r) {
  Instance out(a_count, b_count, fair_bounds(r));
  for (const auto& e : edges) out.add_edge(e.a, e.b, fair_utilities(e.rank_by_a, e.rank_by_b, r));
  return out;
}

/// True iff every utility bound equals w_max (weight-maximal instances).
inline bool validate_uniform_bound(const Instance& inst, Utility w_max) {
  return std::all_of(inst.bounds().begin(), inst.bounds().end(), [&](Utility u) { return u == w_max; });
}

}  // namespace profmatch
