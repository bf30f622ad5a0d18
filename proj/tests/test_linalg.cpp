#include <gtest/gtest.h>

#include <random>

#include "bcr/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace bcr;

namespace {

SparseRationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density) {
  SparseRationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (static_cast<int>(rng() % 100) >= density) continue;
      const int num = static_cast<int>(rng() % 11) - 5;
      const int den = 1 + static_cast<int>(rng() % 4);
      Rational q(num, den);
      q.canonicalize();
      m.set(i, j, q);
    }
  }
  return m;
}

// Rank-deficient matrix: a product of thin random factors.
SparseRationalMatrix low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t inner) {
  return multiply(random_matrix(rng, rows, inner, 70), random_matrix(rng, inner, cols, 70));
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

TEST(Rank, Trivial) {
  EXPECT_EQ(rank(SparseRationalMatrix(4, 5)), 0u);
  SparseRationalMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, 1);
  EXPECT_EQ(rank(id), 3u);
  EXPECT_TRUE(kernel_basis(id).empty());
  EXPECT_EQ(rank(SparseRationalMatrix(0, 3)), 0u);
  EXPECT_EQ(kernel_basis(SparseRationalMatrix(0, 3)).size(), 3u);
}

TEST(Matrix, NoStoredZeros) {
  SparseRationalMatrix m(2, 2);
  m.set(0, 0, Rational(1, 2));
  m.add(0, 0, Rational(-1, 2));
  m.set(1, 1, 0);
  EXPECT_EQ(m.nonzeros(), 0u);
  EXPECT_EQ(m.get(0, 0), 0);
}

TEST(Kernel, RowOfOnes) {
  SparseRationalMatrix m(1, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  const auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_NE(k[0][0], 0);
}

TEST(Rank, MatchesDenseElimination) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    const auto m = trial % 2 ? random_matrix(rng, rows, cols, 40) : low_rank(rng, rows, cols, 1 + rng() % 4);
    ASSERT_EQ(rank(m), oracle::dense_rank(m)) << trial;
  }
}

TEST(Kernel, VectorsAreAnnihilatedAndIndependent) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 10;
    const auto m = low_rank(rng, rows, cols, 1 + rng() % 5);
    const auto kernel = kernel_basis(m);
    ASSERT_EQ(kernel.size(), cols - rank(m));
    SparseRationalMatrix stacked(kernel.size(), cols);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      ASSERT_TRUE(is_zero(multiply(m, kernel[i])));
      for (std::size_t j = 0; j < cols; ++j) stacked.set(i, j, kernel[i][j]);
    }
    ASSERT_EQ(oracle::dense_rank(stacked), kernel.size());
  }
}

TEST(Rank, InvariantUnderRowAndColumnPermutation) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 2 + rng() % 7, cols = 2 + rng() % 7;
    const auto m = low_rank(rng, rows, cols, 1 + rng() % 3);
    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    SparseRationalMatrix p(rows, cols);
    for (const auto& [key, value] : m.entries()) p.set(rp[key.first], cp[key.second], value);
    ASSERT_EQ(rank(p), rank(m));
  }
}

TEST(SolveAffine, PinsAndInconsistency) {
  SparseRationalMatrix m(1, 3);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  const auto x = solve_affine(m, {{1, Rational(2)}});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[1], 2);
  EXPECT_EQ((*x)[0], -2);
  EXPECT_TRUE(is_zero(multiply(m, *x)));

  const auto none = solve_affine(m, {{0, Rational(1)}, {1, Rational(1)}});
  EXPECT_FALSE(none);

  const auto zero = solve_affine(m, {});
  ASSERT_TRUE(zero);
  EXPECT_TRUE(is_zero(*zero));

  SparseRationalMatrix id(2, 2);
  id.set(0, 0, 1);
  id.set(1, 1, 1);
  EXPECT_FALSE(solve_affine(id, {{0, Rational(1)}}));
}

TEST(SolveAffine, RandomPinsAreHonoured) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t cols = 3 + rng() % 6;
    const auto m = low_rank(rng, 1 + rng() % 5, cols, 1 + rng() % 2);
    const std::size_t index = rng() % cols;
    Rational value(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3));
    value.canonicalize();
    const auto x = solve_affine(m, {{index, value}});
    const auto kernel = kernel_basis(m);
    const bool pinnable = std::any_of(kernel.begin(), kernel.end(),
                                      [&](const RationalVector& v) { return v[index] != 0; });
    if (value == 0 || pinnable) {
      ASSERT_TRUE(x);
      EXPECT_EQ((*x)[index], value);
      EXPECT_TRUE(is_zero(multiply(m, *x)));
    } else {
      EXPECT_FALSE(x);
    }
  }
}

TEST(Multiply, Associativity) {
  std::mt19937 rng(15);
  const auto a = random_matrix(rng, 4, 5, 50), b = random_matrix(rng, 5, 3, 50), c = random_matrix(rng, 3, 6, 50);
  EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
}
