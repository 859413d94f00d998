// Both sides of the equivariant Lefschetz formula on the model spaces.
//
// Cohomological side: sum_i (-1)^i tr(g o D | H^i).
// Fixed-point side: for isolated fixed points, sum_x Tr_{g,x}(jet_x D), where
// the local gamma-trace already carries the fiber weight and 1/det(1 - g^-1).
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqlef/geometry.hpp"
#include "eqlef/gtrace.hpp"

namespace eqlef {

struct PointContribution {
  std::string point;
  GammaTraceResult trace;
};

struct LefschetzReport {
  std::string gamma;
  std::string op;
  std::string space;
  Cyclotomic lhs;
  Cyclotomic rhs;
  std::vector<PointContribution> per_point;
  std::string method;  // "fixed_points", "riemann_roch" or "kunneth"
  bool equal = false;
};

inline Cyclotomic alternating_trace(const CohomologyMatrices& m) { return m.h0.trace() - m.h1.trace(); }

inline Cyclotomic lefschetz_cohomological(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space) {
  return alternating_trace(cohomology_matrices(d, g, space));
}

namespace detail {

/// Fixed-point side with per-point data; method names how the value was obtained.
inline Cyclotomic fixed_point_side(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space,
                                   std::vector<PointContribution>* points, std::string* method) {
  const auto pts = fixed_points(g, d, space);
  if (!pts) {
    // g acts trivially on the base and on O(k). The density integral reduces to
    // Riemann-Roch only for scalar D; anything else needs the untwisted cocycle.
    if (d.order() <= 0) {
      if (method) *method = "riemann_roch";
      return d.chart0().scalar_coefficient(Monomial{}) * Cyclotomic(space.k + 1);
    }
    throw Error("non-isolated fixed set: use product decomposition or out of scope");
  }
  if (method) *method = "fixed_points";
  Cyclotomic total(0);
  for (const auto& p : *pts) {
    const auto tr = gamma_trace(p.jet, p.action);
    total += tr.value;
    if (points) points->push_back({p.label, tr});
  }
  return total;
}

}  // namespace detail

inline Cyclotomic lefschetz_fixed_point(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space) {
  return detail::fixed_point_side(g, d, space, nullptr, nullptr);
}

inline LefschetzReport verify_theorem(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space) {
  LefschetzReport r;
  r.gamma = describe(g);
  r.op = to_string(d.chart0(), "z");
  r.space = describe(space);
  r.lhs = lefschetz_cohomological(g, d, space);
  r.rhs = detail::fixed_point_side(g, d, space, &r.per_point, &r.method);
  r.equal = r.lhs == r.rhs;
  return r;
}

/// D1 (x) D2 on a product, and a group element acting factorwise.
struct ProductOp {
  GlobalDiffOp first;
  GlobalDiffOp second;
};

struct ProductElement {
  GroupElement first;
  GroupElement second;
};

inline std::string describe(const ProductElement& g) { return "(" + describe(g.first) + ", " + describe(g.second) + ")"; }

/// Kunneth: sum over (a, b) of (-1)^(a+b) tr(M1_a (x) M2_b).
inline Cyclotomic lefschetz_cohomological(const ProductElement& g, const ProductOp& d, const ModelSpace& space) {
  if (space.is_cp1()) throw Error("product Lefschetz number needs a product space");
  const auto m1 = cohomology_matrices(d.first, g.first, space.factor(0));
  const auto m2 = cohomology_matrices(d.second, g.second, space.factor(1));
  const CMatrix* a[2] = {&m1.h0, &m1.h1};
  const CMatrix* b[2] = {&m2.h0, &m2.h1};
  Cyclotomic total(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Cyclotomic t = kron(*a[i], *b[j]).trace();
      total += (i + j) % 2 == 0 ? t : -t;
    }
  return total;
}

namespace detail {

inline Cyclotomic product_fixed_point_side(const ProductElement& g, const ProductOp& d, const ModelSpace& space,
                                           std::vector<PointContribution>* points, std::string* method) {
  if (space.is_cp1()) throw Error("product Lefschetz number needs a product space");
  const auto p1 = fixed_points(g.first, d.first, space.factor(0));
  const auto p2 = fixed_points(g.second, d.second, space.factor(1));
  if (p1 && p2) {
    // isolated fixed points (x1, x2) with the two-variable gamma-trace of the tensor jet
    if (method) *method = "fixed_points";
    Cyclotomic total(0);
    for (const auto& x : *p1)
      for (const auto& y : *p2) {
        const auto tr = gamma_trace(tensor(x.jet, y.jet), x.action.direct_sum(y.action));
        total += tr.value;
        if (points) points->push_back({x.label + "," + y.label, tr});
      }
    return total;
  }
  if (!p1 && !p2) return fixed_point_side(g.first, d.first, space.factor(0), points, method) *
                        fixed_point_side(g.second, d.second, space.factor(1), nullptr, nullptr);
  // positive-dimensional fixed set M1 x {pts}: L(g, D1 (x) D2) = L(g1, D1) L(g2, D2)
  // with the trivially acting factor evaluated cohomologically
  if (method) *method = "kunneth";
  if (!p1) {
    const Cyclotomic l1 = lefschetz_cohomological(g.first, d.first, space.factor(0));
    return l1 * fixed_point_side(g.second, d.second, space.factor(1), points, nullptr);
  }
  const Cyclotomic l2 = lefschetz_cohomological(g.second, d.second, space.factor(1));
  return fixed_point_side(g.first, d.first, space.factor(0), points, nullptr) * l2;
}

}  // namespace detail

inline Cyclotomic lefschetz_fixed_point(const ProductElement& g, const ProductOp& d, const ModelSpace& space) {
  return detail::product_fixed_point_side(g, d, space, nullptr, nullptr);
}

inline LefschetzReport verify_theorem(const ProductElement& g, const ProductOp& d, const ModelSpace& space) {
  LefschetzReport r;
  r.gamma = describe(g);
  r.op = "(" + to_string(d.first.chart0(), "z") + ") x (" + to_string(d.second.chart0(), "z") + ")";
  r.space = describe(space);
  r.lhs = lefschetz_cohomological(g, d, space);
  r.rhs = detail::product_fixed_point_side(g, d, space, &r.per_point, &r.method);
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace eqlef
