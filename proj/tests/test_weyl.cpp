#include <gtest/gtest.h>

#include "eqlef/weyl.hpp"
#include "support.hpp"

using namespace eqlef;
using eqlef::testing::random_op;
using eqlef::testing::random_poly;

namespace {

const FormalDiffOp Y = FormalDiffOp::y(1, 0);
const FormalDiffOp D = FormalDiffOp::d(1, 0);
const FormalDiffOp ONE = FormalDiffOp::identity(1);

FormalDiffOp c(long v) { return FormalDiffOp::constant(1, Cyclotomic(v)); }

// Applies A to y^j for j <= 10; two operators agreeing here agree as operators
// of total degree < 10 in one variable.
bool same_action(const FormalDiffOp& a, const FormalDiffOp& b) {
  for (int j = 0; j <= 10; ++j) {
    const auto p = Polynomial::y_power(a.n(), 0, j);
    if (!(eqlef::apply(a, p) == eqlef::apply(b, p))) return false;
  }
  return true;
}

}  // namespace

TEST(Weyl, HeisenbergRelation) {
  EXPECT_EQ(D * Y, Y * D + ONE);
  EXPECT_EQ((Y * D) * (Y * D), Y * Y * D * D + Y * D);
}

TEST(Weyl, ComposeMatchesActionOnMonomials) {
  // (y d)^2 y^j = j^2 y^j and (y^2 d^2 + y d) y^j = (j(j-1) + j) y^j
  const auto lhs = (Y * D) * (Y * D);
  for (int j = 0; j <= 10; ++j) {
    const auto p = eqlef::apply(lhs, Polynomial::y_power(1, 0, j));
    EXPECT_EQ(p, Cyclotomic(j * j) * Polynomial::y_power(1, 0, j));
  }
}

TEST(Weyl, ApplyExamples) {
  EXPECT_EQ(eqlef::apply(Y * D, Polynomial::y_power(1, 0, 3)), Cyclotomic(3) * Polynomial::y_power(1, 0, 3));
  EXPECT_EQ(eqlef::apply(D * D, Polynomial::y_power(1, 0, 4)), Cyclotomic(12) * Polynomial::y_power(1, 0, 2));
}

TEST(Weyl, GammaActExamples) {
  const DiagonalAction flip(2, {1});
  EXPECT_EQ(gamma_act(flip, Y * D), Y * D);
  EXPECT_EQ(gamma_act(flip, Y * Y * D), -(Y * Y * D));
  const DiagonalAction rot(4, {1});
  EXPECT_EQ(gamma_act(rot, Y), zeta(4, -1) * Y);
  EXPECT_EQ(gamma_act(rot, D), zeta(4, 1) * D);
}

TEST(Weyl, TwistedCommutatorExamples) {
  const auto id = DiagonalAction::identity(1);
  const auto a = Y * Y * D + c(3) * D;
  EXPECT_TRUE(twisted_commutator(a, a, id).is_zero());
  EXPECT_EQ(twisted_commutator(D, Y, id), ONE);
  EXPECT_EQ(twisted_commutator(D, Y, DiagonalAction(2, {1})), c(2) * Y * D + ONE);
}

TEST(Weyl, DimensionAndRankChecks) {
  EXPECT_THROW(FormalDiffOp::y(1, 0) * FormalDiffOp::y(2, 0), Error);
  EXPECT_THROW(FormalDiffOp(5, 1), Error);
  EXPECT_THROW(DiagonalAction(2, {1}, CMatrix::scalar(zeta(3, 1))), Error);
  EXPECT_THROW(gamma_act(DiagonalAction(2, {1, 1}), Y), Error);
}

TEST(Weyl, MatrixCoefficients) {
  CMatrix e(2, 2), f(2, 2);
  e(0, 1) = 1;
  f(1, 0) = 1;
  const auto a = FormalDiffOp::monomial(1, Monomial::d_power(0, 1), e);
  const auto b = FormalDiffOp::monomial(1, Monomial::y_power(0, 1), f);
  CMatrix ef = e * f;
  EXPECT_EQ(a * b, FormalDiffOp::monomial(1, Monomial{}, ef) + FormalDiffOp::monomial(1, Monomial{{1}, {1}}, ef));
  // a fiber swap conjugates e into f
  CMatrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  const DiagonalAction g(2, {1}, swap);
  EXPECT_EQ(gamma_act(g, a), -FormalDiffOp::monomial(1, Monomial::d_power(0, 1), f));
}

TEST(Weyl, TensorProductSplitsVariables) {
  const auto t = tensor(Y * D, D * D);
  EXPECT_EQ(t.n(), 2);
  EXPECT_EQ(t, FormalDiffOp::y(2, 0) * FormalDiffOp::d(2, 0) * FormalDiffOp::d(2, 1) * FormalDiffOp::d(2, 1));
}

TEST(Weyl, Rendering) {
  EXPECT_EQ(to_string(Y * Y * D * D + Y * D), "y^2 d^2 + y d");
  EXPECT_EQ(to_string(D * Y), "y d + 1");
  EXPECT_EQ(to_string(c(-3) * Y - ONE), "-3 y - 1");
  EXPECT_EQ(to_string(FormalDiffOp::y(2, 1) * FormalDiffOp::d(2, 0), "z"), "z2 d1");
}

TEST(Weyl, LaurentOperators) {
  // d o z^-1 = z^-1 d - z^-2
  const auto l = LaurentOp::term(0, 1) * LaurentOp::term(-1, 0);
  EXPECT_EQ(l, LaurentOp::term(-1, 1) - LaurentOp::term(-2, 0));
  EXPECT_TRUE(l.has_pole());
  EXPECT_THROW(l.to_formal(), Error);
  EXPECT_EQ(LaurentOp::from(D * Y).to_formal(), D * Y);
  LaurentPoly p{{-2, Cyclotomic(1)}};
  EXPECT_EQ(eqlef::apply(LaurentOp::term(1, 1), p), (LaurentPoly{{-2, Cyclotomic(-2)}}));
}

TEST(WeylProperty, Associativity) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const auto a = random_op(rng, n, 3, 4), b = random_op(rng, n, 3, 4), cc = random_op(rng, n, 3, 4);
    EXPECT_EQ((a * b) * cc, a * (b * cc));
  }
}

TEST(WeylProperty, AssociativityMatchesActionOracle) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_op(rng, 1, 3), b = random_op(rng, 1, 3), cc = random_op(rng, 1, 3);
    EXPECT_TRUE(same_action((a * b) * cc, a * (b * cc)));
    EXPECT_TRUE(same_action(a * b, a * b));
  }
}

TEST(WeylProperty, ApplicationIsCompatibleWithComposition) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const auto a = random_op(rng, n, 3, 3), b = random_op(rng, n, 3, 3);
    const auto p = random_poly(rng, n, 5);
    EXPECT_EQ(eqlef::apply(a * b, p), eqlef::apply(a, eqlef::apply(b, p)));
  }
}

TEST(WeylProperty, GammaActIsAnAutomorphismOfFiniteOrder) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const int N = 2 + trial % 5;
    std::vector<long> e(n);
    for (int i = 0; i < n; ++i) e[i] = 1 + (trial + i) % (N - 1);
    const DiagonalAction g(N, e);
    const auto a = random_op(rng, n, 3, N), b = random_op(rng, n, 3, N);
    EXPECT_EQ(gamma_act(g, a * b), gamma_act(g, a) * gamma_act(g, b));
    EXPECT_EQ(gamma_act(g, gamma_act(g.inverse(), a)), a);
    FormalDiffOp it = a;
    for (int k = 0; k < N; ++k) it = gamma_act(g, it);
    EXPECT_EQ(it, a);
  }
}

TEST(WeylProperty, OrderIsAdditive) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_op(rng, 2, 4), b = random_op(rng, 2, 4);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).order(), a.order() + b.order());
  }
}
