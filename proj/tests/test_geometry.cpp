#include <gtest/gtest.h>

#include "eqlef/geometry.hpp"
#include "eqlef/lefschetz.hpp"

using namespace eqlef;

namespace {

const FormalDiffOp Z = FormalDiffOp::y(1, 0);
const FormalDiffOp D = FormalDiffOp::d(1, 0);
const FormalDiffOp ONE = FormalDiffOp::identity(1);

FormalDiffOp c(long v) { return FormalDiffOp::constant(1, Cyclotomic(v)); }

CMatrix diag(std::vector<Cyclotomic> d) { return CMatrix::diagonal(d); }

// (D s)_inf(v) = v^k (D s)(1/v) with s = z^j must equal D_inf applied to v^(k-j).
bool charts_agree(const FormalDiffOp& chart0, int k) {
  const GlobalDiffOp g(chart0, k);
  const LaurentOp d0 = LaurentOp::from(chart0), dinf = LaurentOp::from(g.chart_infinity());
  for (long j = -6; j <= 6; ++j) {
    LaurentPoly via0;
    for (const auto& [e, v] : eqlef::apply(d0, LaurentPoly{{j, Cyclotomic(1)}})) add_to(via0, k - e, v);
    if (!(via0 == eqlef::apply(dinf, LaurentPoly{{k - j, Cyclotomic(1)}}))) return false;
  }
  return true;
}

}  // namespace

TEST(Geometry, CohomologyDimensions) {
  EXPECT_EQ(cohomology_basis(make_cp1(0, 1)).h0.size(), 1u);
  EXPECT_EQ(cohomology_basis(make_cp1(0, 1)).h1.size(), 0u);
  EXPECT_EQ(cohomology_basis(make_cp1(2, 1)).h0.size(), 3u);
  EXPECT_EQ(cohomology_basis(make_cp1(-2, 1)).h1.size(), 1u);
  for (int k = -6; k <= 6; ++k) {
    const auto b = cohomology_basis(make_cp1(k, 1));
    EXPECT_EQ(static_cast<int>(b.h0.size()) - static_cast<int>(b.h1.size()), k + 1);
  }
}

TEST(Geometry, ChangeChartExamples) {
  EXPECT_EQ(change_chart(Z * D, make_cp1(0, 1)), -(Z * D));
  EXPECT_EQ(change_chart(Z * D, make_cp1(2, 1)), c(2) - Z * D);
  EXPECT_EQ(change_chart(D, make_cp1(2, 1)), c(2) * Z - Z * Z * D);
  EXPECT_THROW(change_chart(Z * Z * Z * D, make_cp1(0, 1)), Error);
  EXPECT_THROW(change_chart(Z, make_cp1(0, 1)), Error);
  EXPECT_THROW(change_chart(Z, make_cp1(1, 1)), Error);  // z maps O(1) to O(2)
}

TEST(Geometry, ChangeChartMatchesMonomialOracle) {
  for (int k = -3; k <= 4; ++k) {
    for (const auto& op : {ONE, D, Z * D, Z * Z * D - c(k) * Z, D * D, Z * Z * D * D + c(3) * D})
      EXPECT_TRUE(charts_agree(op, k)) << k << " " << to_string(op);
  }
}

TEST(Geometry, ChangeChartIsAnInvolution) {
  for (int k = -3; k <= 4; ++k) {
    const auto f = sl2::f(k), e = sl2::e(k), h = sl2::h(k);
    for (const auto& op : {e, f, h, e * f, f * h * e + e, h * h - f})
      EXPECT_EQ(change_chart(GlobalDiffOp(op.chart_infinity(), k), make_cp1(k, 1)), op.chart0());
  }
}

TEST(Geometry, CohomologyMatrixExamples) {
  const auto s2 = make_cp1(2, 1);
  const auto m = cohomology_matrices(sl2::z_d(2), GroupElement::identity(), s2);
  EXPECT_EQ(m.h0, diag({0, 1, 2}));
  for (int k = 0; k <= 4; ++k) {
    std::vector<Cyclotomic> d;
    for (int j = 0; j <= k; ++j) d.push_back(zeta(5, j));
    EXPECT_EQ(cohomology_matrices(sl2::one(k), GroupElement::rotation(5, 1), make_cp1(k, 1)).h0, diag(d));
  }
  const auto e = operator_matrices(sl2::e(2), s2).h0;
  EXPECT_TRUE(e.trace().is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= i; ++j) EXPECT_TRUE(e(i, j).is_zero());
}

TEST(Geometry, HOneActionIsWellDefined) {
  // on O(-4), H^1 = span{z^-1, z^-2, z^-3}; z d acts diagonally by the exponent
  const auto m = operator_matrices(sl2::z_d(-4), make_cp1(-4, 1)).h1;
  EXPECT_EQ(m, diag({-1, -2, -3}));
  // products of matrices represent compositions on both groups
  const auto a = sl2::e(-4), b = sl2::f(-4);
  const auto ma = operator_matrices(a, make_cp1(-4, 1)), mb = operator_matrices(b, make_cp1(-4, 1));
  EXPECT_EQ(operator_matrices(a * b, make_cp1(-4, 1)).h1, ma.h1 * mb.h1);
}

TEST(Geometry, JetExamples) {
  const auto s0 = make_cp1(0, 1), s2 = make_cp1(2, 1);
  EXPECT_EQ(jet_at(sl2::z_d(0), "0", s0), Z * D);
  EXPECT_EQ(jet_at(sl2::z_d(2), "inf", s2), c(2) - Z * D);
  EXPECT_EQ(jet_at(GlobalDiffOp(Z * Z * D * D, 2), "inf", s2), Z * Z * D * D - c(2) * Z * D + c(2));
}

TEST(Geometry, FlipConjugationOfSl2) {
  for (int k : {0, 2, 4}) {
    const auto s = make_cp1(k, 1);
    const auto flip = GroupElement::reflection(2, 0);
    EXPECT_EQ(act(flip, sl2::e(k), s), Cyclotomic(-1) * sl2::f(k));
    EXPECT_EQ(act(flip, sl2::h(k), s), Cyclotomic(-1) * sl2::h(k));
    EXPECT_EQ(act(flip, sl2::e(k) - sl2::f(k), s), sl2::e(k) - sl2::f(k));
  }
  EXPECT_THROW(group_matrices(GroupElement::reflection(2, 1), make_cp1(1, 1)), Error);
}

TEST(GeometryProperty, RepresentationIsEquivariant) {
  std::vector<std::pair<GroupElement, ModelSpace>> cases;
  for (int k = -3; k <= 4; ++k)
    for (int N : {2, 3, 4, 6}) cases.push_back({GroupElement::rotation(N, 1), make_cp1(k, 1)});
  for (int k : {-4, -2, 0, 2, 4})
    for (long r : {0, 1}) cases.push_back({GroupElement::reflection(2, r), make_cp1(k, 1, k % 4 == 0 ? 1 : -1)});
  for (const auto& [g, s] : cases) {
    const auto gm = group_matrices(g, s);
    for (const auto& d : {sl2::e(s.k), sl2::f(s.k), sl2::h(s.k) * sl2::e(s.k), sl2::f(s.k) * sl2::f(s.k)}) {
      const auto dm = operator_matrices(d, s);
      const auto am = operator_matrices(act(g, d, s), s);
      EXPECT_EQ(gm.h0 * dm.h0, am.h0 * gm.h0);
      EXPECT_EQ(gm.h1 * dm.h1, am.h1 * gm.h1);
    }
  }
}

TEST(GeometryProperty, Sl2RelationsInCohomology) {
  for (int k = -4; k <= 4; ++k) {
    const auto s = make_cp1(k, 1);
    const auto e = sl2::e(k), f = sl2::f(k), h = sl2::h(k);
    EXPECT_EQ(e * f - f * e, h);
    EXPECT_EQ(h * e - e * h, Cyclotomic(-2) * e);
    EXPECT_EQ(h * f - f * h, Cyclotomic(2) * f);
    const auto me = operator_matrices(e, s), mf = operator_matrices(f, s), mh = operator_matrices(h, s);
    EXPECT_EQ(me.h0 * mf.h0 - mf.h0 * me.h0, mh.h0);
    EXPECT_EQ(me.h1 * mf.h1 - mf.h1 * me.h1, mh.h1);
  }
}

TEST(Lefschetz, SpotValues) {
  const auto g4 = GroupElement::rotation(4, 1), g2 = GroupElement::rotation(2, 1);
  const auto r1 = verify_theorem(g4, sl2::one(1), make_cp1(1, 1));
  EXPECT_TRUE(r1.equal);
  EXPECT_EQ(r1.lhs, Cyclotomic(1) + zeta(4, 1));
  const auto r2 = verify_theorem(g2, sl2::z_d(0), make_cp1(0, 1));
  EXPECT_TRUE(r2.equal);
  EXPECT_TRUE(r2.lhs.is_zero());
  ASSERT_EQ(r2.per_point.size(), 2u);
  EXPECT_EQ(r2.per_point[0].trace.value, Cyclotomic::rational(-1, 4));
  EXPECT_EQ(r2.per_point[1].trace.value, Cyclotomic::rational(1, 4));
  const auto r3 = verify_theorem(g2, GlobalDiffOp(Z * Z * D * D, 2), make_cp1(2, 1));
  EXPECT_TRUE(r3.equal);
  EXPECT_EQ(r3.lhs, Cyclotomic(2));
  EXPECT_EQ(r3.per_point[0].trace.value, Cyclotomic::rational(1, 4));
  EXPECT_EQ(r3.per_point[1].trace.value, Cyclotomic::rational(7, 4));
  const auto r4 = verify_theorem(GroupElement::rotation(3, 1), sl2::one(3), make_cp1(3, 1));
  EXPECT_TRUE(r4.equal);
  EXPECT_EQ(r4.lhs, Cyclotomic(1));
}

TEST(Lefschetz, NegativeDegreeRiemannRoch) {
  for (int N : {2, 3, 5}) {
    const auto g = GroupElement::rotation(N, 1);
    const auto r = verify_theorem(g, sl2::one(-2), make_cp1(-2, 1));
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.lhs, -zeta(N, -1));
  }
}

TEST(Lefschetz, TrivialBaseAction) {
  const auto g = GroupElement::rotation(2, 1);
  const auto s = make_cp1(3, 2);
  EXPECT_EQ(lefschetz_fixed_point(g, sl2::one(3), s), Cyclotomic(4));
  EXPECT_EQ(lefschetz_cohomological(g, sl2::one(3), s), Cyclotomic(4));
  EXPECT_THROW(lefschetz_fixed_point(g, sl2::z_d(3), s), Error);
}

TEST(Lefschetz, FlipElements) {
  for (int k : {-4, -2, 0, 2, 4})
    for (int eps : {1, -1})
      for (long r : {0, 1}) {
        const auto s = make_cp1(k, 1, eps);
        const auto g = GroupElement::reflection(2, r);
        for (const auto& d : {sl2::one(k), sl2::e(k) - sl2::f(k), sl2::h(k) * sl2::h(k), sl2::e(k) * sl2::f(k)}) {
          const auto rep = verify_theorem(g, d, s);
          EXPECT_TRUE(rep.equal) << k << " " << eps << " " << r << " " << rep.op << ": " << rep.lhs << " vs " << rep.rhs;
        }
      }
  // on O(0) the flip has trace 1 on constants; two fixed points of weight 1/2
  const auto rep = verify_theorem(GroupElement::reflection(2, 0), sl2::one(0), make_cp1(0, 1));
  EXPECT_EQ(rep.lhs, Cyclotomic(1));
  EXPECT_EQ(rep.per_point.size(), 2u);
}

TEST(Lefschetz, ProductExamples) {
  const auto s = product(make_cp1(0, 1), make_cp1(0, 1));
  const ProductElement g{GroupElement::identity(), GroupElement::rotation(2, 1)};
  const ProductOp d{sl2::z_d(0), sl2::one(0)};
  const auto r = verify_theorem(g, d, s);
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.lhs.is_zero());
  EXPECT_EQ(r.method, "kunneth");
  const auto s11 = product(make_cp1(1, 1), make_cp1(1, 1));
  EXPECT_EQ(lefschetz_cohomological(ProductElement{}, ProductOp{sl2::one(1), sl2::one(1)}, s11), Cyclotomic(4));
  // both factors rotated: four isolated fixed points with two-variable traces
  const ProductElement both{GroupElement::rotation(3, 1), GroupElement::rotation(4, 1)};
  const ProductOp d2{sl2::e(2) * sl2::f(2), sl2::h(1)};
  const auto rb = verify_theorem(both, d2, product(make_cp1(2, 1), make_cp1(1, 1)));
  EXPECT_TRUE(rb.equal);
  EXPECT_EQ(rb.per_point.size(), 4u);
}
