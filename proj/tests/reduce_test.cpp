#include "profmatch/reduce.hpp"

#include <random>

#include "gtest/gtest.h"
#include "profmatch/oracle.hpp"
#include "test_support.hpp"

namespace profmatch {
namespace {

TEST(OptimalMatching, EmptyEdgeSet) {
  const auto result = optimal_matching(Instance(3, 2, {2, 2}));
  EXPECT_TRUE(result.matching.empty());
  EXPECT_EQ(result.profile.to_string(), "<0,0>");
}

TEST(OptimalMatching, TwoByTwoExample) {
  Instance inst(2, 2, {1, 2});
  inst.add_edge(0, 0, {1, 0});
  inst.add_edge(0, 1, {0, 2});
  inst.add_edge(1, 1, {1, 0});
  for (const auto base : {RadixBase::matching_bound, RadixBase::two_u_plus_one}) {
    const auto result = optimal_matching(inst, base);
    EXPECT_TRUE(result.matching.contains(0, 0));
    EXPECT_TRUE(result.matching.contains(1, 1));
    EXPECT_EQ(result.matching.size(), 2u);
    EXPECT_EQ(result.profile.to_string(), "<2,0>");
    EXPECT_EQ(result.source, WeightSource::mixed_radix);
    EXPECT_FALSE(result.condition_checked);
    EXPECT_EQ(result.arithmetic, Arithmetic::int64);
  }
}

TEST(OptimalMatching, BeatsEverySingleEdge) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_instance(rng, {6, 6, 3, 3});
    const auto result = optimal_matching(inst);
    for (EdgeId e = 0; e < inst.edge_count(); ++e)
      EXPECT_TRUE(cmp_profile(result.profile, edge_profile(inst.utilities(e))) >= 0);
  }
}

TEST(OptimalMatching, EqualsBruteForce) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = testing::random_instance(rng);
    const auto result = optimal_matching(inst);
    EXPECT_EQ(result.profile, brute_force_optimal(inst).first);
    EXPECT_EQ(result.profile, profile_of(result.matching, inst));
  }
}

TEST(OptimalMatching, Deterministic) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng, {7, 7, 3, 3});
    EXPECT_EQ(optimal_matching(inst).matching, optimal_matching(inst).matching);
  }
}

// Three pairs can trade a unit of the first utility for a three-edge cycle
// that no two-pair swap reaches. Base 2U+1 weighs the diagonal at 5 + 2 each
// (total 21) against 10 + 5 + 5 for the cycle (total 20).
Instance three_cycle() {
  Instance inst(3, 3, {2, 2});
  for (std::size_t i = 0; i < 3; ++i) inst.add_edge(i, i, {1, 2});
  inst.add_edge(0, 1, {2, 0});
  inst.add_edge(1, 2, {1, 0});
  inst.add_edge(2, 0, {1, 0});
  return inst;
}

TEST(OptimalMatching, TwoUPlusOneBaseMissesLongCycles) {
  const auto inst = three_cycle();
  EXPECT_EQ(brute_force_optimal(inst).first.to_string(), "<4,0>");
  EXPECT_EQ(optimal_matching(inst, RadixBase::two_u_plus_one).profile.to_string(), "<3,6>");
  EXPECT_EQ(optimal_matching(inst).profile.to_string(), "<4,0>");
}

TEST(OptimalMatching, LargeWeightsSwitchArithmetic) {
  std::vector<Utility> bounds(30, 9);
  Instance inst(2, 2, bounds);
  std::vector<Utility> u(30, 9);
  inst.add_edge(0, 1, u);
  u[0] = 8;
  inst.add_edge(1, 0, u);
  const auto result = optimal_matching(inst);
  EXPECT_EQ(result.arithmetic, Arithmetic::big_integer);
  EXPECT_EQ(result.matching.size(), 2u);
  EXPECT_EQ(result.profile, brute_force_optimal(inst).first);
}

TEST(OptimalMatchingWith, MixedRadixWeightsGiveTheSameResult) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_instance(rng);
    const auto c = complete(inst, Balance::square);
    for (const auto base : {RadixBase::two_u_plus_one, RadixBase::matching_bound}) {
      const auto direct = optimal_matching(inst, base);
      const auto supplied = optimal_matching_with(inst, mixed_radix(c, base));
      EXPECT_EQ(direct.matching, supplied.matching);
      EXPECT_EQ(direct.total_weight, supplied.total_weight);
      EXPECT_TRUE(supplied.condition_checked);
      EXPECT_EQ(supplied.source, WeightSource::supplied);
    }
  }
}

TEST(OptimalMatchingWith, UniformWeightsViolate) {
  Instance inst(2, 2, {3});
  inst.add_edge(0, 0, {3});
  inst.add_edge(0, 1, {1});
  inst.add_edge(1, 0, {1});
  WeightAssignment w(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) w.set(a, b, std::int64_t{1});
  try {
    optimal_matching_with(inst, w);
    FAIL();
  } catch (const ConditionViolated& e) {
    EXPECT_EQ(e.code(), ErrorCode::condition_violated);
    EXPECT_EQ(e.witness(), (Counterexample{{0, 0}, {0, 1}, {1, 0}}));
  }
  const auto unchecked = optimal_matching_with(inst, w, ConditionCheck::unchecked);
  EXPECT_FALSE(unchecked.condition_checked);
  EXPECT_EQ(unchecked.total_weight, 2);
}

TEST(OptimalMatchingWith, UnbalancedGridsAreCheckedOnTheSquare) {
  // One A vertex, two B vertices: the single a prefers b1 but w favours b0.
  Instance inst(1, 2, {2});
  inst.add_edge(0, 0, {1});
  inst.add_edge(0, 1, {2});
  WeightAssignment w(1, 2);
  w.set(0, 0, std::int64_t{5});
  w.set(0, 1, std::int64_t{1});
  EXPECT_THROW(optimal_matching_with(inst, w), ConditionViolated);
}

TEST(OptimalMatchingWith, GridMustCoverTheInstance) {
  Instance inst(2, 2, {1});
  EXPECT_THROW(optimal_matching_with(inst, WeightAssignment(1, 2)), Error);
  EXPECT_THROW(optimal_matching_with(inst, WeightAssignment(3, 2)), Error);
}

TEST(OptimalMatchingWith, RankMaximalWeightsOnRankIndicators) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t na = testing::pick(rng, 1, 4), nb = testing::pick(rng, 1, 4);
    Instance shape(na, nb, {1});
    RankSystem ranks;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        if (rng() % 3 == 0) continue;
        shape.add_edge(a, b, {0});
        ranks.rank.push_back(static_cast<std::uint32_t>(testing::pick(rng, 1, 4)));
      }
    const auto indicators = rank_indicator_instance(shape, ranks, 4);
    const auto result = optimal_matching_with(indicators, rm_weights(shape, ranks, 4));
    EXPECT_EQ(result.profile, brute_force_optimal(indicators).first);
  }
}

TEST(Restriction, RestrictedSolutionKeepsItsProfile) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_instance(rng, {5, 5, 3, 3});
    const auto c = complete(inst, Balance::square);
    const auto w = mixed_radix(c, RadixBase::matching_bound);
    const auto solution = max_weight_matching(to_assignment_problem<Weight>(w, c.a_count()));
    const auto m = solution.matching();
    EXPECT_EQ(profile_of(restrict(m, inst, c), inst), profile_of(m, c));
  }
}

TEST(ToString, Names) {
  EXPECT_EQ(to_string(Arithmetic::int64), "int64");
  EXPECT_EQ(to_string(Arithmetic::int128), "int128");
  EXPECT_EQ(to_string(Arithmetic::big_integer), "big-integer");
  EXPECT_EQ(to_string(RadixBase::two_u_plus_one), "2u+1");
}

}  // namespace
}  // namespace profmatch
