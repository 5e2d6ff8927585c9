#include <gtest/gtest.h>

#include <random>

#include "dgc/matrix.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

Matrix random_matrix(Field F, int r, int c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Matrix m(F, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = F.from_int(dist(rng));
  return m;
}

}  // namespace

TEST(Scalar, RationalArithmetic) {
  Scalar a = Q.parse("3/2"), b = Q.parse("-4");
  EXPECT_EQ((a * b).to_string(), "-6");
  EXPECT_EQ((a / b).to_string(), "-3/8");
  EXPECT_EQ((a + b).to_string(), "-5/2");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.inverse().to_string(), "2/3");
}

TEST(Scalar, PrimeField) {
  Field F7 = Field::prime(7);
  Scalar a = F7.parse("5 mod 7");
  EXPECT_EQ((a * a).to_string(), "4 mod 7");
  EXPECT_EQ(a.inverse().to_string(), "3 mod 7");
  EXPECT_EQ(F7.from_int(-1).to_string(), "6 mod 7");
  EXPECT_THROW(F7.parse("1 mod 5"), std::invalid_argument);
  EXPECT_THROW(Q.one() + F7.one(), std::invalid_argument);
}

TEST(Field, Specs) {
  EXPECT_EQ(Field::from_spec("q").name(), "Q");
  EXPECT_EQ(Field::from_spec("fp:5").spec(), "fp:5");
  EXPECT_THROW(Field::from_spec("fp:6"), std::invalid_argument);
}

TEST(Rref, IdentityAndZero) {
  Rref r = rref(Matrix::identity(Q, 3));
  EXPECT_EQ(r.rank, 3);
  EXPECT_EQ(r.pivots, (std::vector<int>{0, 1, 2}));
  Rref z = rref(Matrix::zero(Q, 2, 4));
  EXPECT_EQ(z.rank, 0);
  EXPECT_TRUE(z.pivots.empty());
}

TEST(Rref, RankOneByHand) {
  Rref r = rref(Matrix::from_ints(Q, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1);
  EXPECT_EQ(r.reduced, Matrix::from_ints(Q, {{1, 2}, {0, 0}}));
}

TEST(Kernel, Basic) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Q, 4)).cols(), 0);
  EXPECT_EQ(kernel_basis(Matrix::zero(Q, 2, 3)).cols(), 3);
  Matrix k = kernel_basis(Matrix::from_ints(F2, {{1, 1}}));
  ASSERT_EQ(k.cols(), 1);
  // the only nonzero vector of F_2^2 killed by (1 1)
  EXPECT_EQ(k, Matrix::from_ints(F2, {{1}, {1}}));
}

TEST(Cokernel, Basic) {
  EXPECT_EQ(cokernel(Matrix::identity(Q, 3)).projection.rows(), 0);
  Cokernel z = cokernel(Matrix::zero(Q, 3, 2));
  EXPECT_TRUE(z.projection.is_identity());
  Matrix diag = Matrix::from_ints(Q, {{1}, {1}});
  Cokernel c = cokernel(diag);
  EXPECT_EQ(c.projection.rows(), 1);
  EXPECT_TRUE((c.projection * diag).is_zero());
  EXPECT_TRUE((c.projection * c.section).is_identity());
}

TEST(Solve, ByHand) {
  auto x = solve(Matrix::from_ints(Q, {{1, 1}, {0, 1}}), Vector{Q.from_int(2), Q.from_int(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Q.one());
  EXPECT_EQ((*x)[1], Q.one());
  EXPECT_FALSE(solve(Matrix::zero(Q, 2, 2), Vector{Q.one(), Q.zero()}));
  Vector b{Q.from_int(5), Q.from_int(-7)};
  EXPECT_EQ(*solve(Matrix::identity(Q, 2), b), b);
  EXPECT_THROW(solve(Matrix::identity(Q, 2), Vector{Q.one()}), std::invalid_argument);
}

TEST(Inverse, SingularAndRegular) {
  EXPECT_FALSE(inverse(Matrix::from_ints(Q, {{1, 2}, {2, 4}})));
  Matrix m = Matrix::from_ints(Q, {{2, 1}, {1, 1}});
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_TRUE((m * *inv).is_identity());
}

TEST(LinalgProperties, RankNullityAndCokernelContract) {
  std::mt19937_64 rng(7);
  for (Field F : {Q, F2, Field::prime(5)}) {
    for (int t = 0; t < 60; ++t) {
      int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
      Matrix M = random_matrix(F, r, c, rng);
      Rref rr = rref(M);
      EXPECT_EQ(rank(rr.reduced), rr.rank);
      Matrix K = kernel_basis(M);
      EXPECT_EQ(K.cols() + rr.rank, c);
      EXPECT_TRUE((M * K).is_zero());
      Cokernel ck = cokernel(M);
      EXPECT_EQ(ck.projection.rows(), r - rr.rank);
      EXPECT_TRUE((ck.projection * M).is_zero());
      EXPECT_TRUE((ck.projection * ck.section).is_identity());
      if (rank(M) == c) EXPECT_TRUE((left_inverse(M) * M).is_identity());
    }
  }
}

TEST(LinalgProperties, RrefIsCanonical) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    Matrix M = random_matrix(Q, 3, 4, rng);
    Matrix P = random_matrix(Q, 3, 3, rng);
    if (!inverse(P)) continue;
    EXPECT_EQ(rref(P * M).reduced, rref(M).reduced);
  }
}
