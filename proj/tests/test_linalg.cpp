#include <gtest/gtest.h>

#include <random>

#include "nilaut/errors.hpp"
#include "nilaut/linalg.hpp"
#include "oracles.hpp"

using namespace nilaut;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int spread = 5) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = Rational(static_cast<long>(rng() % (2 * spread + 1)) - spread, 1 + static_cast<long>(rng() % 4));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j).canonicalize();
  return m;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
  return m;
}

}  // namespace

TEST(Solve, IdentitySystemReturnsRightHandSide) {
  const RatVector b{Rational(1), Rational(-2, 3), Rational(5)};
  const auto x = solve(RatMatrix::identity(3), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(Solve, InconsistentSystemHasNoSolution) {
  RatMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 2;
  a(1, 1) = 2;
  EXPECT_FALSE(solve(a, {Rational(1), Rational(3)}));
  EXPECT_TRUE(solve(a, {Rational(1), Rational(2)}));
}

TEST(Solve, RandomInvertibleSystemsHaveZeroResidual) {
  std::mt19937_64 rng(21);
  int solved = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RatMatrix a = random_matrix(rng, 8, 8);
    if (oracle::rank(a) != 8) continue;
    RatVector b(8);
    for (auto& v : b) {
      v = Rational(static_cast<long>(rng() % 11) - 5, 7);
      v.canonicalize();
    }
    const auto x = solve(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(mat_vec(a, *x), b);
    ++solved;
  }
  EXPECT_GT(solved, 10);
}

TEST(Solve, DimensionMismatchThrows) {
  EXPECT_THROW(solve(RatMatrix::identity(2), {Rational(1)}), DimensionMismatch);
}

TEST(Nullspace, ZeroMatrixGivesStandardBasis) {
  const auto ns = nullspace(RatMatrix(2, 3));
  ASSERT_EQ(ns.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ns[i][j], i == j ? 1 : 0);
}

TEST(Nullspace, FullRankSquareIsEmpty) { EXPECT_TRUE(nullspace(RatMatrix::identity(4)).empty()); }

TEST(Nullspace, AgreesWithGaussJordanOracle) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % 6;
    RatMatrix a = random_matrix(rng, r, c, 2);
    if (r > 1 && trial % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j) * 2;
    const auto ns = nullspace(a);
    EXPECT_EQ(ns.size(), c - oracle::rank(a));
    EXPECT_EQ(matrix_rank(a), oracle::rank(a));
    for (const auto& v : ns)
      for (const auto& entry : mat_vec(a, v)) EXPECT_EQ(entry, 0);
  }
}

TEST(IndependentRows, ChoosesGreedily) {
  RatMatrix a(3, 2);
  a(0, 0) = 1;
  a(1, 0) = 2;
  a(2, 1) = 1;
  EXPECT_EQ(independent_rows(a), (std::vector<std::size_t>{0, 2}));
}

TEST(Determinant, KnownValues) {
  EXPECT_EQ(int_determinant(IntMatrix::identity(5)), 1);
  IntMatrix m(1, 1);
  m(0, 0) = 1 - 2 * 2;
  EXPECT_EQ(int_determinant(m), -3);
  EXPECT_FALSE(is_unimodular(m));
  IntMatrix diag = IntMatrix::identity(4);
  diag(3, 3) = -1;
  EXPECT_EQ(int_determinant(diag), -1);
  EXPECT_TRUE(is_unimodular(diag));
  EXPECT_EQ(int_determinant(IntMatrix(0, 0)), 1);
  EXPECT_THROW(int_determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(Determinant, NeedsRowSwaps) {
  IntMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  EXPECT_EQ(int_determinant(m), -1);
}

TEST(Determinant, MatchesCofactorOracleAndIsMultiplicative) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = random_int_matrix(rng, n);
    const IntMatrix b = random_int_matrix(rng, n);
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    EXPECT_EQ(int_determinant(a), oracle::determinant(rows));
    EXPECT_EQ(int_determinant(mat_mul(a, b)), int_determinant(a) * int_determinant(b));
  }
}

TEST(SelfCheck, IsEnabledForTests) { EXPECT_TRUE(linalg_self_check()); }
