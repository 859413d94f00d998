#include <gtest/gtest.h>

#include "eqlef/orbifold.hpp"

using namespace eqlef;

namespace {

std::vector<GlobalDiffOp> rotation_invariant_ops(int k) {
  const auto e = sl2::e(k), f = sl2::f(k), h = sl2::h(k);
  return {sl2::one(k), h, h * h, e * f, f * e, h * h * h - Cyclotomic(3) * e * f};
}

InvariantOperatorProblem problem(const LaurentOp& op, int m = 2) { return {m, op}; }

}  // namespace

TEST(FiniteGroup, CyclicAndDihedralStructure) {
  const auto z6 = FiniteGroup::cyclic(6);
  EXPECT_EQ(z6.order(), 6u);
  EXPECT_EQ(z6.classes().size(), 6u);
  EXPECT_EQ(z6.element_order(1), 6u);
  const auto d4 = FiniteGroup::dihedral(2);
  EXPECT_EQ(d4.order(), 4u);
  EXPECT_EQ(d4.classes().size(), 4u);  // Klein four-group is abelian
  const auto d6 = FiniteGroup::dihedral(3);
  EXPECT_EQ(d6.classes().size(), 3u);
  for (std::size_t i = 0; i < d6.order(); ++i) EXPECT_EQ(d6.multiply(i, d6.inverse(i)), d6.identity_index());
  EXPECT_THROW(FiniteGroup({GroupElement::rotation(4, 1)}), Error);
}

TEST(FiniteGroup, GroupMatricesFormARepresentation) {
  for (int k : {-4, -2, 0, 2, 4}) {
    const auto s = make_cp1(k, 1);
    const auto G = FiniteGroup::dihedral(2);
    for (std::size_t i = 0; i < G.order(); ++i)
      for (std::size_t j = 0; j < G.order(); ++j) {
        const auto a = group_matrices(G.element(i), s), b = group_matrices(G.element(j), s);
        const auto ab = group_matrices(G.element(G.multiply(i, j)), s);
        EXPECT_EQ(a.h0 * b.h0, ab.h0);
        EXPECT_EQ(a.h1 * b.h1, ab.h1);
      }
  }
}

TEST(Orbifold, AveragingMatchesInvariantTrace) {
  for (int N : {2, 3, 4, 5})
    for (int k : {-3, -1, 0, 1, 2, 4}) {
      const auto s = make_cp1(k, 1);
      const auto G = FiniteGroup::cyclic(N);
      for (const auto& d : rotation_invariant_ops(k)) {
        const Cyclotomic inv = invariant_lefschetz(G, d, s);
        EXPECT_EQ(average_lefschetz(G, d, s, AverageForm::elementwise), inv) << N << " " << k;
        EXPECT_EQ(average_lefschetz(G, d, s, AverageForm::classwise), inv) << N << " " << k;
      }
    }
}

TEST(Orbifold, ProjectorOnIdentityCountsInvariants) {
  // invariant sections of O(4) under z -> -z: 1, z^2, z^4
  EXPECT_EQ(invariant_lefschetz(FiniteGroup::cyclic(2), sl2::one(4), make_cp1(4, 1)), Cyclotomic(3));
  EXPECT_EQ(average_lefschetz(FiniteGroup::cyclic(2), sl2::one(4), make_cp1(4, 1), AverageForm::elementwise),
            Cyclotomic(3));
  EXPECT_THROW(invariant_lefschetz(FiniteGroup::cyclic(3), sl2::e(2), make_cp1(2, 1)), Error);
}

TEST(Orbifold, DihedralOrderFour) {
  const auto G = FiniteGroup::dihedral(2);
  for (int k : {-4, -2, 0, 2, 4, 6}) {
    const auto s = make_cp1(k, 1);
    const auto e = sl2::e(k), f = sl2::f(k), h = sl2::h(k);
    for (const auto& d : {sl2::one(k), (e - f) * (e - f), h * h}) {
      ASSERT_TRUE(is_invariant(G, d, s));
      const Cyclotomic inv = invariant_lefschetz(G, d, s);
      EXPECT_EQ(average_lefschetz(G, d, s, AverageForm::elementwise), inv) << k;
      EXPECT_EQ(average_lefschetz(G, d, s, AverageForm::classwise), inv) << k;
    }
  }
}

TEST(Orbifold, InertiaStrata) {
  const auto st = inertia_strata(FiniteGroup::dihedral(3), make_cp1(0, 1));
  ASSERT_EQ(st.size(), 3u);
  Cyclotomic total(0);
  for (const auto& s : st) {
    total += s.weight;
    EXPECT_EQ(s.weight, Cyclotomic(1) / Cyclotomic(static_cast<long>(s.centralizer_order)));
    if (s.representative.is_identity()) {
      EXPECT_EQ(s.l, 0);
      EXPECT_EQ(s.m, 1u);
    } else {
      EXPECT_EQ(s.l, 2);
      EXPECT_EQ(s.fixed_set.size(), 2u);
      EXPECT_EQ(s.m, s.representative.flip ? 2u : 3u);
    }
  }
  EXPECT_EQ(total, Cyclotomic(1));
}

TEST(InvariantOperators, InverseZTimesDerivative) {
  // on u = z^2, (1/z) d_z = 2 d_u
  const auto p = problem(LaurentOp::term(-1, 1));
  for (long m = 0; m <= 6; ++m) {
    const auto img = eqlef::apply(p.op, LaurentPoly{{2 * m, Cyclotomic(1)}});
    if (m == 0) {
      EXPECT_TRUE(img.empty());
    } else {
      EXPECT_EQ(img, (LaurentPoly{{2 * m - 2, Cyclotomic(2 * m)}}));
    }
  }
  const auto ord = algebraic_order(p, 6, 12);
  ASSERT_TRUE(ord.order.has_value());
  EXPECT_EQ(*ord.order, 1);
  const auto g = is_geometric(p, 12, 6);
  EXPECT_EQ(g.verdict, Verdict::no);
  ASSERT_TRUE(g.certificate.has_value());
  EXPECT_LT(g.certificate->first, g.certificate->second);
  EXPECT_FALSE(g.certificate_value.is_zero());
}

TEST(InvariantOperators, GeometricOperatorsAreRecognized) {
  // z^3 d = z^4 (1/z) d = 2 u (u d_u)
  const auto g = is_geometric(problem(LaurentOp::term(3, 1)), 12, 6);
  ASSERT_EQ(g.verdict, Verdict::yes);
  ASSERT_EQ(g.rewriting.size(), 1u);
  EXPECT_EQ(g.rewriting[0], std::make_tuple(1, 1, Cyclotomic(2)));
  EXPECT_EQ(*algebraic_order(problem(LaurentOp::term(3, 1)), 6).order, 1);
  // z d = 2 u d_u, the Euler field
  EXPECT_EQ(is_geometric(problem(LaurentOp::term(1, 1))).verdict, Verdict::yes);
  EXPECT_EQ(*algebraic_order(problem(LaurentOp::term(0, 0)), 6).order, 0);
  EXPECT_EQ(*algebraic_order(problem(LaurentOp::term(-1, 1).pow(2)), 6).order, 2);
  EXPECT_THROW(algebraic_order(problem(LaurentOp::term(0, 1)), 6), Error);
}

TEST(InvariantOperators, HigherCyclicQuotients) {
  // on u = z^3, (1/z^2) d_z = 3 d_u
  const auto p = problem(LaurentOp::term(-2, 1), 3);
  EXPECT_EQ(*algebraic_order(p, 6).order, 1);
  EXPECT_EQ(is_geometric(p).verdict, Verdict::no);
  EXPECT_EQ(is_geometric(problem(LaurentOp::term(1, 1), 3)).verdict, Verdict::yes);
}
