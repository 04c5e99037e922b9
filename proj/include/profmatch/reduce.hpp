#pragma once

// Profile-optimal matching by reduction: complete and balance the graph,
// weigh every pair, solve the assignment problem, drop the padding.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/solver.hpp"
#include "profmatch/weight.hpp"
#include "profmatch/weights.hpp"

namespace profmatch {

/// Raised by optimal_matching_with when the supplied weights fail the check.
class ConditionViolated : public Error {
 public:
  explicit ConditionViolated(Counterexample witness)
      : Error(ErrorCode::condition_violated, "weight condition fails on " + witness.to_string()),
        witness_(witness) {}

  const Counterexample& witness() const noexcept { return witness_; }

 private:
  Counterexample witness_;
};

enum class WeightSource { mixed_radix, supplied };
enum class ConditionCheck { checked, unchecked };
enum class Arithmetic { int64, int128, big_integer };

struct ReduceResult {
  Matching matching;
  Profile profile;
  Weight total_weight;        // over the balanced completion
  WeightSource source = WeightSource::mixed_radix;
  bool condition_checked = false;
  Arithmetic arithmetic = Arithmetic::int64;
  std::optional<RadixBase> radix;  // set when the weights came from mixed_radix
};

inline std::string to_string(Arithmetic a) {
  switch (a) {
    case Arithmetic::int64: return "int64";
    case Arithmetic::int128: return "int128";
    case Arithmetic::big_integer: break;
  }
  return "big-integer";
}

inline std::string to_string(RadixBase base) {
  return base == RadixBase::two_u_plus_one ? "2u+1" : "matching-bound";
}

namespace detail {

inline ReduceResult solve_completed(const Instance& inst, const CompletedInstance& completed,
                                    const WeightAssignment& weights) {
  const std::size_t n = completed.a_count();
  ReduceResult out;
  Matching full;
  if (weights.narrow() && narrow_solver_safe(weights.max_weight(), n)) {
    const auto problem = to_assignment_problem<std::int64_t>(weights, n);
    const auto solution = max_weight_matching(problem);
    full = solution.matching();
    out.total_weight = solution.total;
    out.arithmetic = Arithmetic::int64;
  } else if (const Weight maxw = weights.max_weight(); int128_solver_safe(maxw, n)) {
    const auto problem = to_assignment_problem<__int128>(weights, n);
    const auto solution = max_weight_matching(problem);
    full = solution.matching();
    out.total_weight = from_int128(solution.total);
    out.arithmetic = Arithmetic::int128;
  } else {
    const auto problem = to_assignment_problem<Weight>(weights, n);
    const auto solution = max_weight_matching(problem);
    full = solution.matching();
    out.total_weight = solution.total;
    out.arithmetic = Arithmetic::big_integer;
  }
  out.matching = restrict(full, inst, completed);
  out.profile = profile_of(out.matching, inst);
  return out;
}

}  // namespace detail

/// Profile-optimal matching of `inst` through mixed-radix weights. The
/// default base is exact for every instance; RadixBase::two_u_plus_one keeps
/// the weights short but can miss the optimum once three or more pairs are
/// matched (see mixed_radix).
inline ReduceResult optimal_matching(const Instance& inst, RadixBase base = RadixBase::matching_bound) {
  const auto completed = complete(inst, Balance::square);
  auto out = detail::solve_completed(inst, completed, mixed_radix(completed, base));
  out.source = WeightSource::mixed_radix;
  out.radix = base;
  out.condition_checked = false;
  return out;
}

/// Same pipeline with caller-supplied weights over inst's A x B grid (or over
/// the already balanced grid). Pairs outside the grid weigh 0. Unless
/// `check` is unchecked, the weight condition is verified first and a
/// failure raises ConditionViolated.
inline ReduceResult optimal_matching_with(const Instance& inst, const WeightAssignment& w,
                                          ConditionCheck check = ConditionCheck::checked) {
  const auto completed = complete(inst, Balance::square);
  const std::size_t n = completed.a_count();
  if (w.a_count() > n || w.b_count() > n || w.a_count() < inst.a_count() || w.b_count() < inst.b_count())
    throw Error(ErrorCode::length_mismatch, "weight grid does not cover the instance");
  const WeightAssignment padded =
      (w.a_count() == n && w.b_count() == n) ? w : w.padded(n, n);
  if (check == ConditionCheck::checked) {
    if (auto witness = satisfies_condition(completed, padded)) throw ConditionViolated(*witness);
  }
  auto out = detail::solve_completed(inst, completed, padded);
  out.source = WeightSource::supplied;
  out.condition_checked = check == ConditionCheck::checked;
  return out;
}

}  // namespace profmatch
