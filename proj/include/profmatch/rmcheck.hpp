#pragma once

// Decides whether a weighted instance is a rank-maximal instance in disguise
// and recovers the rank of every edge.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "profmatch/error.hpp"
#include "profmatch/weight.hpp"
#include "profmatch/weights.hpp"

namespace profmatch {

/// Sort-and-sweep test as literally stated: ascending order, reject at the
/// first element not exceeding the sum of its two predecessors (missing
/// predecessors count as 0). Any duplicate value is rejected.
inline bool is_rank_maximal(std::span<const Weight> weights) {
  if (weights.size() < 2) return true;
  std::vector<Weight> sorted(weights.begin(), weights.end());
  std::stable_sort(sorted.begin(), sorted.end());
  Weight current = sorted[0], prev = 0, prev2 = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    prev2 = prev;
    prev = current;
    current = sorted[i];
    if (current <= prev + prev2) return false;
  }
  return true;
}

/// Variant that treats equal weights as one rank: every distinct value above
/// the smallest must exceed the sum of the two largest weights strictly below
/// it, counted with multiplicity.
inline bool is_rank_maximal_grouped(std::span<const Weight> weights) {
  if (weights.size() < 2) return true;
  std::vector<Weight> sorted(weights.begin(), weights.end());
  std::stable_sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (i > 0) {
      const Weight below = (i >= 2) ? sorted[i - 1] + sorted[i - 2] : sorted[i - 1];
      if (sorted[i] <= below) return false;
    }
    i = j;
  }
  return true;
}

/// Rank 1 for the largest distinct weight, rank 2 for the next, and so on.
/// Throws NotReducible unless the grouped check passes.
inline RankSystem to_ranks(std::span<const Weight> weights) {
  if (!is_rank_maximal_grouped(weights))
    throw Error(ErrorCode::not_reducible, "weights do not form a rank-maximal ladder");
  std::vector<Weight> distinct(weights.begin(), weights.end());
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  RankSystem out;
  out.rank.reserve(weights.size());
  for (const auto& w : weights) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), w, std::greater<>());
    out.rank.push_back(static_cast<std::uint32_t>(it - distinct.begin()) + 1);
  }
  return out;
}

/// Number of ranks in a rank system (its largest rank).
inline std::size_t rank_count(const RankSystem& ranks) {
  std::uint32_t r = 0;
  for (const auto k : ranks.rank) r = std::max(r, k);
  return r;
}

}  // namespace profmatch
