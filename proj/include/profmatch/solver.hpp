#pragma once

// Exact maximum-weight perfect matching on a square complete bipartite graph
// (the assignment problem). Shortest augmenting paths with vertex potentials,
// O(n^3) operations on the weight type.

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/weight.hpp"

namespace profmatch {

/// Dense n x n weight matrix, row = A-side vertex, column = B-side vertex.
template <class T>
class AssignmentProblem {
 public:
  AssignmentProblem() = default;
  explicit AssignmentProblem(std::size_t n) : n_(n), weights_(n * n, T(0)) {}
  AssignmentProblem(std::size_t n, std::vector<T> row_major) : n_(n), weights_(std::move(row_major)) {
    if (weights_.size() != n * n)
      throw Error(ErrorCode::length_mismatch, "assignment matrix must hold n*n weights");
  }

  std::size_t size() const noexcept { return n_; }
  const T& at(std::size_t a, std::size_t b) const { return weights_[a * n_ + b]; }
  T& at(std::size_t a, std::size_t b) { return weights_[a * n_ + b]; }
  const T* row(std::size_t a) const { return weights_.data() + a * n_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> weights_;
};

/// Optimal assignment together with its dual certificate:
/// row_potential[a] + col_potential[b] >= w(a, b) everywhere, with equality
/// on matched pairs.
template <class T>
struct AssignmentSolution {
  std::vector<std::size_t> col_of_row;
  std::vector<T> row_potential;
  std::vector<T> col_potential;
  T total{0};

  Matching matching() const {
    Matching m(col_of_row.size(), col_of_row.size());
    for (std::size_t a = 0; a < col_of_row.size(); ++a) m.add(a, col_of_row[a]);
    return m;
  }
};

/// Ties between equally short augmenting choices go to the lowest column
/// index, so the output is a deterministic function of the matrix; an
/// all-zero matrix yields the identity assignment.
template <class T>
AssignmentSolution<T> max_weight_matching(const AssignmentProblem<T>& problem) {
  const std::size_t n = problem.size();
  // Minimizes cost = -weight over 1-based vertex arrays; slot 0 is the
  // virtual source column of each Dijkstra-like phase.
  std::vector<T> u(n + 1, T(0)), v(n + 1, T(0)), min_slack(n + 1, T(0));
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::fill(used.begin(), used.end(), 0);
    bool first_pass = true;
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      const T* w = problem.row(i0 - 1);
      const T ui = u[i0];
      T delta(0);
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const T cur = -w[j - 1] - ui - v[j];
        if (first_pass || cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (j1 == 0 || min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      first_pass = false;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentSolution<T> out;
  out.col_of_row.assign(n, 0);
  out.row_potential.assign(n, T(0));
  out.col_potential.assign(n, T(0));
  for (std::size_t j = 1; j <= n; ++j) out.col_of_row[row_of_col[j] - 1] = j - 1;
  for (std::size_t k = 0; k < n; ++k) {
    out.row_potential[k] = -u[k + 1];
    out.col_potential[k] = -v[k + 1];
    out.total += problem.at(k, out.col_of_row[k]);
  }
  return out;
}

template <class T>
T matching_weight(const Matching& m, const AssignmentProblem<T>& problem) {
  T total(0);
  for (const Edge& pair : m.pairs()) {
    if (pair.a >= problem.size() || pair.b >= problem.size())
      throw Error(ErrorCode::unknown_edge, "pair (" + std::to_string(pair.a) + "," +
                                               std::to_string(pair.b) + ") outside the problem");
    total += problem.at(pair.a, pair.b);
  }
  return total;
}

/// True when the dual certificate proves `solution` optimal for `problem`.
template <class T>
bool verify_certificate(const AssignmentProblem<T>& problem, const AssignmentSolution<T>& solution) {
  const std::size_t n = problem.size();
  if (solution.col_of_row.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = solution.col_of_row[a];
    if (b >= n || seen[b]) return false;
    seen[b] = 1;
    if (solution.row_potential[a] + solution.col_potential[b] != problem.at(a, b)) return false;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (solution.row_potential[a] + solution.col_potential[b] < problem.at(a, b)) return false;
  return true;
}

/// Largest weight for which the 64-bit solver cannot overflow on an n x n
/// problem (potentials and path lengths stay within a few n * max weight).
inline bool narrow_solver_safe(const Weight& max_weight, std::size_t n) {
  return max_weight >= 0 && max_weight * (4 * Weight(n) + 8) < narrow_weight_limit;
}

/// Same bound for the 128-bit solver.
inline bool int128_solver_safe(const Weight& max_weight, std::size_t n) {
  return max_weight >= 0 && max_weight * (4 * Weight(n) + 8) < (Weight(1) << 124);
}

inline __int128 to_int128(const Weight& w) {
  const Weight mask = Weight(~std::uint64_t{0});
  const Weight magnitude = w < 0 ? Weight(-w) : w;
  const auto lo = static_cast<std::uint64_t>(magnitude & mask);
  const auto hi = static_cast<std::uint64_t>((magnitude >> 64) & mask);
  const auto v = static_cast<__int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  return w < 0 ? -v : v;
}

inline Weight from_int128(__int128 v) {
  const bool negative = v < 0;
  const auto magnitude = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Weight w = Weight(static_cast<std::uint64_t>(magnitude >> 64));
  w <<= 64;
  w += static_cast<std::uint64_t>(magnitude);
  return negative ? Weight(-w) : w;
}

/// Builds the square problem of the given size from a weight grid; cells
/// outside the grid (dummy vertices) weigh 0.
template <class T>
AssignmentProblem<T> to_assignment_problem(const WeightAssignment& w, std::size_t n) {
  if (w.a_count() > n || w.b_count() > n)
    throw Error(ErrorCode::length_mismatch, "weight grid larger than the assignment problem");
  AssignmentProblem<T> p(n);
  const auto* narrow = w.narrow();
  for (std::size_t a = 0; a < w.a_count(); ++a)
    for (std::size_t b = 0; b < w.b_count(); ++b) {
      const std::size_t cell = a * w.b_count() + b;
      if constexpr (std::is_same_v<T, std::int64_t>) {
        if (!narrow) throw Error(ErrorCode::length_mismatch, "weights do not fit 64-bit storage");
        p.at(a, b) = (*narrow)[cell];
      } else if constexpr (std::is_same_v<T, __int128>) {
        p.at(a, b) = narrow ? T((*narrow)[cell]) : to_int128((*w.wide())[cell]);
      } else {
        p.at(a, b) = narrow ? T((*narrow)[cell]) : (*w.wide())[cell];
      }
    }
  return p;
}

}  // namespace profmatch
