#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"

namespace profmatch {

/// Arbitrary-precision edge weight.
using Weight = boost::multiprecision::cpp_int;

/// Weights up to this value are held in 64-bit storage. Sums of two or three
/// such weights still fit in int64.
inline constexpr std::int64_t narrow_weight_limit = std::int64_t{1} << 60;

inline bool fits_narrow(const Weight& w) { return w >= 0 && w < narrow_weight_limit; }

/// Edge -> Weight map over the dense a_count x b_count vertex grid. Values are
/// stored in 64 bits while every weight fits and widen to big integers
/// transparently otherwise.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  WeightAssignment(std::size_t a_count, std::size_t b_count)
      : a_count_(a_count), b_count_(b_count), values_(std::vector<std::int64_t>(a_count * b_count, 0)) {}

  std::size_t a_count() const noexcept { return a_count_; }
  std::size_t b_count() const noexcept { return b_count_; }

  Weight at(std::size_t a, std::size_t b) const {
    check_range(a, b);
    const std::size_t cell = a * b_count_ + b;
    if (const auto* n = std::get_if<Narrow>(&values_)) return Weight((*n)[cell]);
    return std::get<Wide>(values_)[cell];
  }

  void set(std::size_t a, std::size_t b, const Weight& w) {
    check_range(a, b);
    if (w < 0)
      throw Error(ErrorCode::negative_weight, "weight of (" + std::to_string(a) + "," +
                                                  std::to_string(b) + ") is negative");
    const std::size_t cell = a * b_count_ + b;
    if (auto* n = std::get_if<Narrow>(&values_)) {
      if (fits_narrow(w)) {
        (*n)[cell] = static_cast<std::int64_t>(w);
        return;
      }
      widen();
    }
    std::get<Wide>(values_)[cell] = w;
  }

  void set(std::size_t a, std::size_t b, std::int64_t w) {
    if (auto* n = std::get_if<Narrow>(&values_); n && w >= 0 && w < narrow_weight_limit) {
      check_range(a, b);
      (*n)[a * b_count_ + b] = w;
      return;
    }
    set(a, b, Weight(w));
  }

  /// Row-major 64-bit storage, or nullptr once any weight needed widening.
  const std::vector<std::int64_t>* narrow() const { return std::get_if<Narrow>(&values_); }
  const std::vector<Weight>* wide() const { return std::get_if<Wide>(&values_); }

  Weight max_weight() const {
    Weight best = 0;
    if (const auto* n = narrow()) {
      std::int64_t m = 0;
      for (auto v : *n) m = std::max(m, v);
      return Weight(m);
    }
    for (const auto& v : *wide()) best = std::max(best, v);
    return best;
  }

  /// Copy extended with zero-weight rows/columns up to the given size.
  WeightAssignment padded(std::size_t a_count, std::size_t b_count) const {
    if (a_count < a_count_ || b_count < b_count_)
      throw Error(ErrorCode::length_mismatch, "padding cannot shrink a weight assignment");
    WeightAssignment out(a_count, b_count);
    if (wide()) out.widen();
    for (std::size_t a = 0; a < a_count_; ++a)
      for (std::size_t b = 0; b < b_count_; ++b) {
        if (const auto* n = narrow())
          out.set(a, b, (*n)[a * b_count_ + b]);
        else
          out.set(a, b, (*wide())[a * b_count_ + b]);
      }
    return out;
  }

  friend bool operator==(const WeightAssignment& x, const WeightAssignment& y) {
    if (x.a_count_ != y.a_count_ || x.b_count_ != y.b_count_) return false;
    for (std::size_t a = 0; a < x.a_count_; ++a)
      for (std::size_t b = 0; b < x.b_count_; ++b)
        if (x.at(a, b) != y.at(a, b)) return false;
    return true;
  }

 private:
  using Narrow = std::vector<std::int64_t>;
  using Wide = std::vector<Weight>;

  void check_range(std::size_t a, std::size_t b) const {
    if (a >= a_count_ || b >= b_count_)
      throw Error(ErrorCode::unknown_edge, "(" + std::to_string(a) + "," + std::to_string(b) +
                                               ") outside the weight grid");
  }

  void widen() {
    if (auto* n = std::get_if<Narrow>(&values_)) {
      Wide w(n->begin(), n->end());
      values_ = std::move(w);
    }
  }

  std::size_t a_count_ = 0;
  std::size_t b_count_ = 0;
  std::variant<Narrow, Wide> values_{Narrow{}};
};

}  // namespace profmatch
