#pragma once

// Problem data model for profile-based bipartite matching: instances with r
// prioritized utility functions, matchings, lexicographic profiles, and the
// completion of an arbitrary bipartite graph to A x B with zero-utility padding.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "profmatch/error.hpp"

namespace profmatch {

using Utility = std::uint64_t;
using ProfileValue = unsigned __int128;
using EdgeId = std::size_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(ProfileValue v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Lexicographically ordered r-tuple of utility sums.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::size_t r) : values_(r, 0) {}
  explicit Profile(std::vector<ProfileValue> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  ProfileValue operator[](std::size_t i) const { return values_[i]; }
  ProfileValue& operator[](std::size_t i) { return values_[i]; }
  std::span<const ProfileValue> values() const noexcept { return values_; }

  Profile& operator+=(const Profile& other) {
    if (other.size() != size())
      throw Error(ErrorCode::length_mismatch, "profile lengths differ");
    for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  friend Profile operator+(Profile lhs, const Profile& rhs) { return lhs += rhs; }
  friend bool operator==(const Profile&, const Profile&) = default;

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i != 0) out += ",";
      out += profmatch::to_string(values_[i]);
    }
    return out + ">";
  }

 private:
  std::vector<ProfileValue> values_;
};

/// Lexicographic comparison; throws LengthMismatch on different lengths.
inline std::strong_ordering cmp_profile(const Profile& p, const Profile& q) {
  if (p.size() != q.size())
    throw Error(ErrorCode::length_mismatch, "cannot compare profiles of length " +
                                                std::to_string(p.size()) + " and " +
                                                std::to_string(q.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != q[i]) return p[i] < q[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace detail {

// Lexicographic test of x > y + z on raw utility vectors of equal length.
inline bool lex_greater_than_sum(std::span<const Utility> x, std::span<const Utility> y,
                                 std::span<const Utility> z) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const ProfileValue lhs = x[i];
    const ProfileValue rhs = static_cast<ProfileValue>(y[i]) + z[i];
    if (lhs != rhs) return lhs > rhs;
  }
  return false;
}

}  // namespace detail

/// A set of vertex-disjoint (a, b) pairs with partner lookup in both directions.
class Matching {
 public:
  Matching() = default;
  Matching(std::size_t a_count, std::size_t b_count)
      : partner_of_a_(a_count, npos), partner_of_b_(b_count, npos) {}

  std::size_t a_count() const noexcept { return partner_of_a_.size(); }
  std::size_t b_count() const noexcept { return partner_of_b_.size(); }

  void add(std::size_t a, std::size_t b) {
    if (a >= a_count() || b >= b_count())
      throw Error(ErrorCode::unknown_edge, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                               ") outside the vertex range");
    if (partner_of_a_[a] != npos || partner_of_b_[b] != npos)
      throw Error(ErrorCode::invalid_instance, "vertex already matched when adding (" +
                                                   std::to_string(a) + "," + std::to_string(b) + ")");
    partner_of_a_[a] = b;
    partner_of_b_[b] = a;
    ++size_;
  }

  void remove(std::size_t a, std::size_t b) {
    if (!contains(a, b)) return;
    partner_of_a_[a] = npos;
    partner_of_b_[b] = npos;
    --size_;
  }

  bool contains(std::size_t a, std::size_t b) const {
    return a < a_count() && b < b_count() && partner_of_a_[a] == b;
  }

  std::optional<std::size_t> partner_of_a(std::size_t a) const {
    if (a >= a_count() || partner_of_a_[a] == npos) return std::nullopt;
    return partner_of_a_[a];
  }
  std::optional<std::size_t> partner_of_b(std::size_t b) const {
    if (b >= b_count() || partner_of_b_[b] == npos) return std::nullopt;
    return partner_of_b_[b];
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Pairs in ascending order of a.
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    out.reserve(size_);
    for (std::size_t a = 0; a < partner_of_a_.size(); ++a)
      if (partner_of_a_[a] != npos) out.push_back({a, partner_of_a_[a]});
    return out;
  }

  bool is_perfect() const noexcept {
    return a_count() == b_count() && size_ == a_count();
  }

  friend bool operator==(const Matching& x, const Matching& y) {
    return x.partner_of_a_ == y.partner_of_a_ && x.partner_of_b_ == y.partner_of_b_;
  }

 private:
  std::vector<std::size_t> partner_of_a_;
  std::vector<std::size_t> partner_of_b_;
  std::size_t size_ = 0;
};

/// Bipartite graph with r integer utility functions u_i : E -> {0..U_i}.
/// Function 0 has the highest priority.
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t a_count, std::size_t b_count, std::vector<Utility> bounds)
      : a_count_(a_count), b_count_(b_count), bounds_(std::move(bounds)) {
    if (bounds_.empty()) throw Error(ErrorCode::invalid_instance, "r must be at least 1");
  }

  EdgeId add_edge(std::size_t a, std::size_t b, std::span<const Utility> utilities) {
    if (a >= a_count_ || b >= b_count_)
      throw Error(ErrorCode::invalid_instance, "edge (" + std::to_string(a) + "," +
                                                   std::to_string(b) + ") outside the vertex range");
    if (utilities.size() != r())
      throw Error(ErrorCode::invalid_instance, "edge (" + std::to_string(a) + "," +
                                                   std::to_string(b) + ") has " +
                                                   std::to_string(utilities.size()) +
                                                   " utilities, expected " + std::to_string(r()));
    for (std::size_t i = 0; i < r(); ++i)
      if (utilities[i] > bounds_[i])
        throw Error(ErrorCode::invalid_instance,
                    "utility " + std::to_string(i + 1) + " of edge (" + std::to_string(a) + "," +
                        std::to_string(b) + ") exceeds its bound " + std::to_string(bounds_[i]));
    const auto [it, inserted] = index_.emplace(key(a, b), edges_.size());
    if (!inserted)
      throw Error(ErrorCode::invalid_instance,
                  "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    edges_.push_back({a, b});
    utilities_.insert(utilities_.end(), utilities.begin(), utilities.end());
    return it->second;
  }

  EdgeId add_edge(std::size_t a, std::size_t b, std::initializer_list<Utility> utilities) {
    return add_edge(a, b, std::span<const Utility>(utilities.begin(), utilities.size()));
  }

  std::size_t a_count() const noexcept { return a_count_; }
  std::size_t b_count() const noexcept { return b_count_; }
  std::size_t r() const noexcept { return bounds_.size(); }
  std::span<const Utility> bounds() const noexcept { return bounds_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::span<const Utility> utilities(EdgeId e) const {
    return std::span<const Utility>(utilities_).subspan(e * r(), r());
  }

  std::optional<EdgeId> find(std::size_t a, std::size_t b) const {
    if (a >= a_count_ || b >= b_count_) return std::nullopt;
    const auto it = index_.find(key(a, b));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_complete() const noexcept { return edges_.size() == a_count_ * b_count_; }

 private:
  std::uint64_t key(std::size_t a, std::size_t b) const {
    return static_cast<std::uint64_t>(a) * b_count_ + b;
  }

  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::vector<Utility> bounds_{0};
  std::vector<Edge> edges_;
  std::vector<Utility> utilities_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

/// Profile of a singleton edge set {e}.
inline Profile edge_profile(std::span<const Utility> utilities) {
  Profile p(utilities.size());
  for (std::size_t i = 0; i < utilities.size(); ++i) p[i] = utilities[i];
  return p;
}

inline Profile profile_of(const Matching& m, const Instance& inst) {
  Profile p(inst.r());
  for (const Edge& pair : m.pairs()) {
    const auto e = inst.find(pair.a, pair.b);
    if (!e)
      throw Error(ErrorCode::unknown_edge, "pair (" + std::to_string(pair.a) + "," +
                                               std::to_string(pair.b) + ") is not an edge");
    const auto u = inst.utilities(*e);
    for (std::size_t i = 0; i < inst.r(); ++i) p[i] += u[i];
  }
  return p;
}

enum class Balance { none, square };

/// The instance over A' x B' where every pair missing from the original edge
/// set is a zero-utility padding edge. With Balance::square, the smaller side
/// is extended with dummy vertices (indices past the original count) so the
/// result is square; all dummy-incident edges are padding.
class CompletedInstance {
 public:
  CompletedInstance() = default;

  std::size_t a_count() const noexcept { return a_count_; }
  std::size_t b_count() const noexcept { return b_count_; }
  std::size_t original_a_count() const noexcept { return original_a_; }
  std::size_t original_b_count() const noexcept { return original_b_; }
  std::size_t r() const noexcept { return bounds_.size(); }
  std::span<const Utility> bounds() const noexcept { return bounds_; }
  std::size_t edge_count() const noexcept { return a_count_ * b_count_; }

  std::span<const Utility> utilities(std::size_t a, std::size_t b) const {
    return std::span<const Utility>(utilities_).subspan((a * b_count_ + b) * r(), r());
  }
  bool is_padding(std::size_t a, std::size_t b) const { return padding_[a * b_count_ + b]; }
  std::size_t padding_count() const {
    return static_cast<std::size_t>(std::count(padding_.begin(), padding_.end(), true));
  }

  /// The completed graph as a plain instance (edges in row-major order).
  Instance to_instance() const {
    Instance out(a_count_, b_count_, bounds_);
    for (std::size_t a = 0; a < a_count_; ++a)
      for (std::size_t b = 0; b < b_count_; ++b) out.add_edge(a, b, utilities(a, b));
    return out;
  }

  friend CompletedInstance complete(const Instance& inst, Balance balance);

 private:
  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::size_t original_a_ = 0;
  std::size_t original_b_ = 0;
  std::vector<Utility> bounds_;
  std::vector<Utility> utilities_;
  std::vector<bool> padding_;
};

inline CompletedInstance complete(const Instance& inst, Balance balance = Balance::none) {
  CompletedInstance out;
  out.original_a_ = inst.a_count();
  out.original_b_ = inst.b_count();
  out.a_count_ = inst.a_count();
  out.b_count_ = inst.b_count();
  if (balance == Balance::square) out.a_count_ = out.b_count_ = std::max(out.a_count_, out.b_count_);
  out.bounds_.assign(inst.bounds().begin(), inst.bounds().end());
  const std::size_t r = inst.r();
  out.utilities_.assign(out.a_count_ * out.b_count_ * r, 0);
  out.padding_.assign(out.a_count_ * out.b_count_, true);
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    const Edge& edge = inst.edge(e);
    const std::size_t cell = edge.a * out.b_count_ + edge.b;
    out.padding_[cell] = false;
    std::copy_n(inst.utilities(e).begin(), r, out.utilities_.begin() + cell * r);
  }
  return out;
}

inline Profile profile_of(const Matching& m, const CompletedInstance& completed) {
  Profile p(completed.r());
  for (const Edge& pair : m.pairs()) {
    if (pair.a >= completed.a_count() || pair.b >= completed.b_count())
      throw Error(ErrorCode::unknown_edge, "pair (" + std::to_string(pair.a) + "," +
                                               std::to_string(pair.b) + ") is not an edge");
    const auto u = completed.utilities(pair.a, pair.b);
    for (std::size_t i = 0; i < completed.r(); ++i) p[i] += u[i];
  }
  return p;
}

/// Drops padding pairs (and dummy vertices) from a matching of the completion.
inline Matching restrict(const Matching& m, const Instance& inst, const CompletedInstance& completed) {
  Matching out(inst.a_count(), inst.b_count());
  for (const Edge& pair : m.pairs()) {
    if (pair.a >= inst.a_count() || pair.b >= inst.b_count()) continue;
    if (completed.is_padding(pair.a, pair.b)) continue;
    out.add(pair.a, pair.b);
  }
  return out;
}

/// First pair (a, b) not in m, in ascending (a, b) order, whose singleton
/// profile beats the combined profile of (a, M(a)) and (M(b), b).
inline std::optional<Edge> improving_pair(const Matching& m, const CompletedInstance& completed) {
  if (completed.a_count() != completed.b_count() || !m.is_perfect() ||
      m.a_count() != completed.a_count())
    throw Error(ErrorCode::not_perfect,
                "improving pairs are defined for perfect matchings of a balanced completion");
  for (std::size_t a = 0; a < completed.a_count(); ++a) {
    const std::size_t mate_of_a = *m.partner_of_a(a);
    for (std::size_t b = 0; b < completed.b_count(); ++b) {
      if (b == mate_of_a) continue;
      const std::size_t mate_of_b = *m.partner_of_b(b);
      if (detail::lex_greater_than_sum(completed.utilities(a, b), completed.utilities(a, mate_of_a),
                                       completed.utilities(mate_of_b, b)))
        return Edge{a, b};
    }
  }
  return std::nullopt;
}

/// Swaps (a, M(a)), (M(b), b) for (a, b), (M(b), M(a)). The pair must be improving.
inline Matching improve(const Matching& m, const CompletedInstance& completed, Edge pair) {
  const auto mate_of_a = m.partner_of_a(pair.a);
  const auto mate_of_b = m.partner_of_b(pair.b);
  if (!mate_of_a || !mate_of_b || *mate_of_a == pair.b ||
      !detail::lex_greater_than_sum(completed.utilities(pair.a, pair.b),
                                    completed.utilities(pair.a, *mate_of_a),
                                    completed.utilities(*mate_of_b, pair.b)))
    throw Error(ErrorCode::not_improving, "(" + std::to_string(pair.a) + "," +
                                              std::to_string(pair.b) + ") is not an improving pair");
  Matching out = m;
  out.remove(pair.a, *mate_of_a);
  out.remove(*mate_of_b, pair.b);
  out.add(pair.a, pair.b);
  out.add(*mate_of_b, *mate_of_a);
  return out;
}

/// Repeats improve() until no improving pair remains.
inline Matching improve_until_stable(Matching m, const CompletedInstance& completed) {
  while (const auto pair = improving_pair(m, completed)) m = improve(m, completed, *pair);
  return m;
}

}  // namespace profmatch
