#pragma once

// Random generators and independent reference computations shared by the
// test binaries. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/weight.hpp"
#include "profmatch/weights.hpp"

namespace profmatch::testing {

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

struct InstanceShape {
  std::size_t max_a = 4;
  std::size_t max_b = 4;
  std::size_t max_r = 3;
  Utility max_bound = 2;
};

/// Random instance: sides in 1..max, r in 1..max_r, bounds in 0..max_bound,
/// each pair present with a per-instance random density.
inline Instance random_instance(std::mt19937_64& rng, const InstanceShape& shape = {}) {
  const std::size_t a = pick(rng, 1, shape.max_a);
  const std::size_t b = pick(rng, 1, shape.max_b);
  const std::size_t r = pick(rng, 1, shape.max_r);
  std::vector<Utility> bounds(r);
  for (auto& u : bounds) u = pick(rng, 0, shape.max_bound);
  Instance inst(a, b, bounds);
  const std::size_t density = pick(rng, 1, 10);
  std::vector<Utility> u(r);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      if (pick(rng, 1, 10) > density) continue;
      for (std::size_t k = 0; k < r; ++k) u[k] = pick(rng, 0, bounds[k]);
      inst.add_edge(i, j, u);
    }
  return inst;
}

/// Plain lexicographic comparison of x against y + z.
inline bool singleton_beats_pair(std::span<const Utility> x, std::span<const Utility> y, std::span<const Utility> z) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto rhs = static_cast<unsigned __int128>(y[i]) + z[i];
    if (x[i] > rhs) return true;
    if (x[i] < rhs) return false;
  }
  return false;
}

/// Four nested loops over (a, b, b', a'); first violation or nullopt.
inline std::optional<Counterexample> naive_condition_scan(const CompletedInstance& c, const WeightAssignment& w) {
  for (std::size_t a = 0; a < c.a_count(); ++a)
    for (std::size_t b = 0; b < c.b_count(); ++b)
      for (std::size_t bp = 0; bp < c.b_count(); ++bp) {
        if (bp == b) continue;
        for (std::size_t ap = 0; ap < c.a_count(); ++ap) {
          if (ap == a) continue;
          if (singleton_beats_pair(c.utilities(a, b), c.utilities(a, bp), c.utilities(ap, b)) &&
              w.at(a, b) <= w.at(a, bp) + w.at(ap, b))
            return Counterexample{{a, b}, {a, bp}, {ap, b}};
        }
      }
  return std::nullopt;
}

/// Best total over all n! permutations of a square weight matrix.
template <class T>
T brute_force_assignment(const std::vector<std::vector<T>>& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T best = 0;
  bool first = true;
  do {
    T total = 0;
    for (std::size_t i = 0; i < n; ++i) total += w[i][perm[i]];
    if (first || total > best) best = total;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// How each endpoint of a pair ranks the other (1 = best).
struct RankPair {
  std::uint32_t by_a = 1;
  std::uint32_t by_b = 1;
};

/// Sum of u . place over positions, evaluated independently of the library.
inline Weight positional_value(std::span<const Utility> u, std::span<const Utility> bounds) {
  Weight w = 0;
  for (std::size_t i = 0; i < u.size(); ++i) w = w * (2 * Weight(bounds[i]) + 1) + u[i];
  return w;
}

}  // namespace profmatch::testing
