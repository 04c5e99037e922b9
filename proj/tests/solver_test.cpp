#include "profmatch/solver.hpp"

#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace profmatch {
namespace {

template <class T>
AssignmentProblem<T> from_rows(const std::vector<std::vector<T>>& rows) {
  AssignmentProblem<T> p(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows.size(); ++b) p.at(a, b) = rows[a][b];
  return p;
}

std::vector<std::vector<std::int64_t>> random_rows(std::mt19937_64& rng, std::size_t n, std::int64_t hi) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (auto& row : rows)
    for (auto& x : row) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi + 1));
  return rows;
}

TEST(MaxWeightMatching, TwoByTwo) {
  const auto p = from_rows<std::int64_t>({{2, 1}, {1, 2}});
  const auto s = max_weight_matching(p);
  EXPECT_EQ(s.col_of_row, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.total, 4);
}

TEST(MaxWeightMatching, AllZeroGivesIdentity) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto s = max_weight_matching(AssignmentProblem<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a) EXPECT_EQ(s.col_of_row[a], a);
    EXPECT_EQ(matching_weight(s.matching(), AssignmentProblem<std::int64_t>(n)), 0);
  }
}

TEST(MaxWeightMatching, AntiDiagonal) {
  const auto p = from_rows<std::int64_t>({{0, 0, 9}, {0, 9, 0}, {9, 0, 0}});
  const auto s = max_weight_matching(p);
  EXPECT_EQ(s.col_of_row, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(s.total, 27);
  EXPECT_EQ(matching_weight(s.matching(), p), 27);
}

TEST(MaxWeightMatching, EmptyProblem) {
  const auto s = max_weight_matching(AssignmentProblem<std::int64_t>(0));
  EXPECT_TRUE(s.col_of_row.empty());
  EXPECT_EQ(s.total, 0);
}

TEST(MatchingWeight, EmptyAndOutOfRange) {
  const auto p = from_rows<std::int64_t>({{2, 1}, {1, 2}});
  EXPECT_EQ(matching_weight(Matching(2, 2), p), 0);
  Matching outside(3, 3);
  outside.add(2, 2);
  EXPECT_THROW(matching_weight(outside, p), Error);
}

TEST(MaxWeightMatching, EqualsPermutationOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = testing::pick(rng, 1, 5);
    const auto rows = random_rows(rng, n, seed % 2 ? 9 : 1000);
    const auto s = max_weight_matching(from_rows(rows));
    EXPECT_EQ(s.total, testing::brute_force_assignment(rows)) << "seed " << seed;
  }
}

TEST(MaxWeightMatching, CertificateHoldsOnRandomProblems) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::pick(rng, 1, 16);
    const auto p = from_rows(random_rows(rng, n, trial % 3 == 0 ? 3 : 1000000));
    const auto s = max_weight_matching(p);
    EXPECT_TRUE(verify_certificate(p, s));
    EXPECT_EQ(matching_weight(s.matching(), p), s.total);
    EXPECT_TRUE(s.matching().is_perfect());
  }
}

TEST(VerifyCertificate, RejectsTamperedSolutions) {
  const auto p = from_rows<std::int64_t>({{2, 1}, {1, 2}});
  auto s = max_weight_matching(p);
  ASSERT_TRUE(verify_certificate(p, s));
  auto wrong = s;
  wrong.col_of_row = {1, 0};
  EXPECT_FALSE(verify_certificate(p, wrong));
  auto loose = s;
  loose.row_potential[0] -= 1;
  EXPECT_FALSE(verify_certificate(p, loose));
}

TEST(MaxWeightMatching, AddingAConstantShiftsTotalOnly) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::pick(rng, 1, 8);
    auto rows = random_rows(rng, n, 50);
    const auto c = static_cast<std::int64_t>(rng() % 20);
    const auto base = max_weight_matching(from_rows(rows));
    for (auto& row : rows)
      for (auto& x : row) x += c;
    const auto shifted_problem = from_rows(rows);
    const auto shifted = max_weight_matching(shifted_problem);
    EXPECT_EQ(shifted.total, base.total + static_cast<std::int64_t>(n) * c);
    // The old optimum is still optimal after the shift.
    EXPECT_EQ(matching_weight(base.matching(), shifted_problem), shifted.total);
  }
}

TEST(MaxWeightMatching, ArithmeticBackendsAgree) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testing::pick(rng, 1, 10);
    const auto rows = random_rows(rng, n, 1000);
    std::vector<std::vector<Weight>> big(n, std::vector<Weight>(n));
    std::vector<std::vector<__int128>> mid(n, std::vector<__int128>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        big[a][b] = rows[a][b];
        mid[a][b] = rows[a][b];
      }
    const auto s64 = max_weight_matching(from_rows(rows));
    const auto s128 = max_weight_matching(from_rows(mid));
    const auto sbig = max_weight_matching(from_rows(big));
    EXPECT_EQ(s64.col_of_row, s128.col_of_row);
    EXPECT_EQ(s64.col_of_row, sbig.col_of_row);
    EXPECT_EQ(Weight(s64.total), sbig.total);
  }
}

TEST(MaxWeightMatching, HugeWeights) {
  // Weights near 2^200: only the big-integer backend is exact here.
  const Weight big = Weight(1) << 200;
  const auto p = from_rows<Weight>({{big, big + 1, 0}, {big + 1, big, 0}, {0, 0, 1}});
  const auto s = max_weight_matching(p);
  EXPECT_EQ(s.total, 2 * big + 3);
  EXPECT_TRUE(verify_certificate(p, s));
}

TEST(Int128, RoundTrip) {
  for (const Weight& w : {Weight(0), Weight(1), Weight(-5), (Weight(1) << 100) + 7, -(Weight(1) << 120)})
    EXPECT_EQ(from_int128(to_int128(w)), w);
}

TEST(ToAssignmentProblem, PadsWithZeros) {
  WeightAssignment w(1, 2);
  w.set(0, 1, std::int64_t{5});
  const auto p = to_assignment_problem<std::int64_t>(w, 3);
  EXPECT_EQ(p.at(0, 1), 5);
  EXPECT_EQ(p.at(2, 2), 0);
  EXPECT_THROW(to_assignment_problem<std::int64_t>(w, 1), Error);
}

}  // namespace
}  // namespace profmatch
