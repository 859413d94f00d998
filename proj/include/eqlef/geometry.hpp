// CP^1 with the line bundles O(k), finite rotations and flips, and products.
//
// Conventions. Sections over chart 0 are polynomials s(z) of degree <= k; the
// chart-infinity expression is s_inf(v) = v^k s(1/v). A group element is F^f R^r
// with
//   (R s)(z) = s(rho z),            rho = zeta_N^(r w),
//   (F s)(z) = eps z^k s(1/z),
// so H^0 carries diag(1, rho, ..., rho^k) and R has local eigenvalue rho^-1 at
// z = 0 and rho at z = infinity, with fiber weights 1 and rho^k. Flips need
// rho^k = 1 so that F R F = R^-1.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqlef/cyclotomic.hpp"
#include "eqlef/error.hpp"
#include "eqlef/gtrace.hpp"
#include "eqlef/weyl.hpp"

namespace eqlef {

struct ModelSpace {
  enum class Kind { cp1, product };
  Kind kind = Kind::cp1;
  int k = 0;         // bundle degree
  int w = 1;         // linearization weight
  int flip_sign = 1; // eps in the flip lift
  std::vector<ModelSpace> factors;

  bool is_cp1() const { return kind == Kind::cp1; }
  const ModelSpace& factor(int i) const { return factors.at(i); }
};

inline ModelSpace make_cp1(int k, int w, int flip_sign = 1) {
  if (flip_sign != 1 && flip_sign != -1) throw Error("flip sign must be +1 or -1");
  ModelSpace s;
  s.k = k;
  s.w = w;
  s.flip_sign = flip_sign;
  return s;
}

inline ModelSpace product(const ModelSpace& a, const ModelSpace& b) {
  if (!a.is_cp1() || !b.is_cp1()) throw Error("products combine CP^1 factors only");
  ModelSpace s;
  s.kind = ModelSpace::Kind::product;
  s.factors = {a, b};
  return s;
}

inline std::string describe(const ModelSpace& s) {
  if (s.is_cp1()) return "CP1 O(" + std::to_string(s.k) + ") w=" + std::to_string(s.w);
  return describe(s.factors[0]) + " x " + describe(s.factors[1]);
}

/// F^flip R^r with R the rotation by zeta_N (before the linearization weight).
struct GroupElement {
  int N = 1;
  long r = 0;
  bool flip = false;

  static GroupElement identity() { return {}; }
  static GroupElement rotation(int N, long r) { return {N, detail::mod(r, N), false}; }
  static GroupElement reflection(int N, long r) { return {N, detail::mod(r, N), true}; }

  bool is_identity() const { return !flip && detail::mod(r, N) == 0; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline std::string describe(const GroupElement& g) {
  if (g.is_identity()) return "1";
  std::string s = g.flip ? "flip" : "";
  if (detail::mod(g.r, g.N) != 0 || !g.flip) {
    if (!s.empty()) s += "*";
    s += "zeta" + std::to_string(g.N) + "^" + std::to_string(detail::mod(g.r, g.N));
  }
  return s;
}

inline Cyclotomic effective_rotation(const GroupElement& g, const ModelSpace& s) {
  return zeta(g.N, g.r * s.w);
}

namespace detail {

inline void require_cp1(const ModelSpace& s) {
  if (!s.is_cp1()) throw Error("this operation needs a CP^1 space");
}

inline void require_flip_compatible(const GroupElement& g, const ModelSpace& s) {
  if (!g.flip) return;
  // F R^r F = R^-r needs zeta_N^(w k) = 1, so all rotations of the group must satisfy it.
  if (!(zeta(g.N, static_cast<long>(s.w) * s.k) == Cyclotomic(1)))
    throw Error("flip elements need zeta_N^(w k) = 1 on the bundle");
}

/// sum c Z^a o Dz^b for a chart expression; Zinv is used for negative a.
inline LaurentOp substitute(const LaurentOp& op, const LaurentOp& Z, const std::optional<LaurentOp>& Zinv,
                            const LaurentOp& Dz) {
  LaurentOp out;
  for (const auto& [key, c] : op.terms()) {
    LaurentOp mult;
    if (key.first >= 0) {
      mult = Z.pow(static_cast<unsigned>(key.first));
    } else {
      if (!Zinv) throw Error("operator has a pole at the point");
      mult = Zinv->pow(static_cast<unsigned>(-key.first));
    }
    out += c * (mult * Dz.pow(static_cast<unsigned>(key.second)));
  }
  return out;
}

/// z^-k o D o z^k: the operator on s_inf-type densities before changing variable.
inline LaurentOp conjugate_by_power(const LaurentOp& op, long k) {
  return LaurentOp::term(-k, 0) * op * LaurentOp::term(k, 0);
}

/// Chart-infinity form as a Laurent operator in v.
inline LaurentOp chart_infinity_laurent(const LaurentOp& chart0, int k) {
  const LaurentOp conj = conjugate_by_power(chart0, k);
  // z = 1/v, d_z = -v^2 d_v
  return substitute(conj, LaurentOp::term(-1, 0), LaurentOp::term(1, 0), Cyclotomic(-1) * LaurentOp::term(2, 1));
}

}  // namespace detail

/// A global operator on O(k), given by its chart-0 expression.
class GlobalDiffOp {
 public:
  GlobalDiffOp(FormalDiffOp chart0, int k) : chart0_(std::move(chart0)), k_(k) {
    if (chart0_.n() != 1 || chart0_.rank() != 1) throw Error("global operators on CP^1 are scalar in one variable");
    const LaurentOp inf = detail::chart_infinity_laurent(LaurentOp::from(chart0_), k_);
    if (inf.has_pole()) throw Error("not a global operator: pole at infinity on O(" + std::to_string(k_) + ")");
    chart_inf_ = inf.to_formal();
  }

  const FormalDiffOp& chart0() const { return chart0_; }
  const FormalDiffOp& chart_infinity() const { return chart_inf_; }
  int bundle_degree() const { return k_; }
  int order() const { return chart0_.order(); }

  friend GlobalDiffOp operator+(const GlobalDiffOp& a, const GlobalDiffOp& b) {
    a.check(b);
    return GlobalDiffOp(a.chart0_ + b.chart0_, a.k_);
  }
  friend GlobalDiffOp operator-(const GlobalDiffOp& a, const GlobalDiffOp& b) {
    a.check(b);
    return GlobalDiffOp(a.chart0_ - b.chart0_, a.k_);
  }
  friend GlobalDiffOp operator*(const GlobalDiffOp& a, const GlobalDiffOp& b) {
    a.check(b);
    return GlobalDiffOp(a.chart0_ * b.chart0_, a.k_);
  }
  friend GlobalDiffOp operator*(const Cyclotomic& s, const GlobalDiffOp& a) { return GlobalDiffOp(s * a.chart0_, a.k_); }
  friend bool operator==(const GlobalDiffOp& a, const GlobalDiffOp& b) { return a.k_ == b.k_ && a.chart0_ == b.chart0_; }

 private:
  void check(const GlobalDiffOp& b) const {
    if (k_ != b.k_) throw Error("operators live on different bundles");
  }

  FormalDiffOp chart0_;
  FormalDiffOp chart_inf_;
  int k_;
};

/// Chart-infinity representation of D; "not a global operator" if poles survive.
inline FormalDiffOp change_chart(const FormalDiffOp& chart0, const ModelSpace& space) {
  detail::require_cp1(space);
  return GlobalDiffOp(chart0, space.k).chart_infinity();
}

inline FormalDiffOp change_chart(const GlobalDiffOp& d, const ModelSpace& space) {
  detail::require_cp1(space);
  if (d.bundle_degree() != space.k) throw Error("operator and space have different bundle degrees");
  return d.chart_infinity();
}

/// The sl2 operators e = d, h = 2 z d - k, f = z^2 d - k z on O(k).
namespace sl2 {

inline GlobalDiffOp e(int k) { return GlobalDiffOp(FormalDiffOp::d(1, 0), k); }
inline GlobalDiffOp h(int k) {
  return GlobalDiffOp(Cyclotomic(2) * FormalDiffOp::y(1, 0) * FormalDiffOp::d(1, 0) - FormalDiffOp::constant(1, Cyclotomic(k)), k);
}
inline GlobalDiffOp z_d(int k) { return GlobalDiffOp(FormalDiffOp::y(1, 0) * FormalDiffOp::d(1, 0), k); }
inline GlobalDiffOp f(int k) {
  const auto z = FormalDiffOp::y(1, 0);
  return GlobalDiffOp(z * z * FormalDiffOp::d(1, 0) - Cyclotomic(k) * z, k);
}
inline GlobalDiffOp one(int k) { return GlobalDiffOp(FormalDiffOp::identity(1), k); }

}  // namespace sl2

/// Monomial bases of H^0 (z^0..z^k) and H^1 (z^-1..z^(k+1)) in chart-0 terms.
struct CohomologyBasis {
  std::vector<long> h0;
  std::vector<long> h1;
};

inline CohomologyBasis cohomology_basis(const ModelSpace& space) {
  detail::require_cp1(space);
  CohomologyBasis b;
  for (long j = 0; j <= space.k; ++j) b.h0.push_back(j);
  for (long j = -1; j >= space.k + 1; --j) b.h1.push_back(j);
  return b;
}

struct CohomologyMatrices {
  CMatrix h0;
  CMatrix h1;
};

namespace detail {

inline long basis_index(const std::vector<long>& basis, long e) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == e) return static_cast<long>(i);
  return -1;
}

// In H^1 a Laurent monomial z^e is zero unless k < e < 0.
inline CMatrix laurent_matrix(const LaurentOp& op, const std::vector<long>& basis) {
  CMatrix m(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const LaurentPoly img = eqlef::apply(op, LaurentPoly{{basis[j], Cyclotomic(1)}});
    for (const auto& [e, c] : img) {
      const long i = basis_index(basis, e);
      if (i >= 0) m(i, j) += c;
    }
  }
  return m;
}

}  // namespace detail

/// Action of D on H^0 and H^1.
inline CohomologyMatrices operator_matrices(const GlobalDiffOp& d, const ModelSpace& space) {
  detail::require_cp1(space);
  if (d.bundle_degree() != space.k) throw Error("operator and space have different bundle degrees");
  const auto b = cohomology_basis(space);
  const LaurentOp op = LaurentOp::from(d.chart0());
  return {detail::laurent_matrix(op, b.h0), detail::laurent_matrix(op, b.h1)};
}

/// Action of a group element on H^0 and H^1.
inline CohomologyMatrices group_matrices(const GroupElement& g, const ModelSpace& space) {
  detail::require_cp1(space);
  detail::require_flip_compatible(g, space);
  const auto b = cohomology_basis(space);
  const Cyclotomic rho = effective_rotation(g, space);
  // The flip exchanges the two charts, so on Cech 1-cochains it also reverses
  // the ordering of the overlap: an extra sign on H^1.
  auto build = [&](const std::vector<long>& basis, int cech_sign) {
    CMatrix m(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const long e = basis[j];
      const Cyclotomic c = rho.pow(e);
      if (!g.flip) {
        m(j, j) = c;
      } else {
        const long i = detail::basis_index(basis, space.k - e);
        m(i, j) = Cyclotomic(space.flip_sign * cech_sign) * c;
      }
    }
    return m;
  };
  return {build(b.h0, 1), build(b.h1, -1)};
}

/// Matrices of g o D on H^0 and H^1.
inline CohomologyMatrices cohomology_matrices(const GlobalDiffOp& d, const GroupElement& g, const ModelSpace& space) {
  const auto gm = group_matrices(g, space);
  const auto dm = operator_matrices(d, space);
  return {gm.h0 * dm.h0, gm.h1 * dm.h1};
}

/// g D g^-1 as a global operator.
inline GlobalDiffOp act(const GroupElement& g, const GlobalDiffOp& d, const ModelSpace& space) {
  detail::require_cp1(space);
  detail::require_flip_compatible(g, space);
  const Cyclotomic rho = effective_rotation(g, space);
  // R D R^-1 is D with z -> rho z, d -> rho^-1 d.
  FormalDiffOp rotated(1, 1);
  for (const auto& [m, c] : d.chart0().terms()) rotated.add_term(m, c * rho.pow(m.y[0] - m.d[0]));
  if (!g.flip) return GlobalDiffOp(rotated, space.k);
  // F D F^-1 is the chart-infinity expression read in the chart-0 variable.
  return GlobalDiffOp(GlobalDiffOp(rotated, space.k).chart_infinity(), space.k);
}

/// An isolated fixed point with its local linear data and the jet of D there.
struct FixedPoint {
  std::string label;
  DiagonalAction action;  // local eigenvalue and fiber weight (1x1 fiber)
  FormalDiffOp jet;
};

namespace detail {

// Jet at a fixed point z0 of F R^r in the coordinate z = z0 (1+u)/(1-u) and the
// trivialization sigma(u) = (1-u)^k s(z). With s = 1 - u this is
// z = z0 (2/s - 1), d_z = -(s^2 / 2 z0) d_s.
inline FormalDiffOp flip_jet(const FormalDiffOp& chart0, const Cyclotomic& z0, int k) {
  const LaurentOp Z = (Cyclotomic(2) * z0) * LaurentOp::term(-1, 0) - z0 * LaurentOp::term(0, 0);
  const LaurentOp Dz = (Cyclotomic(-1) / (Cyclotomic(2) * z0)) * LaurentOp::term(2, 1);
  LaurentOp in_s = substitute(LaurentOp::from(chart0), Z, std::nullopt, Dz);
  in_s = LaurentOp::term(k, 0) * in_s * LaurentOp::term(-k, 0);
  if (in_s.has_pole()) throw Error("not a global operator: jet at a flip fixed point has a pole");
  // s -> 1 - u, d_s -> -d_u
  const FormalDiffOp u = FormalDiffOp::y(1, 0), du = FormalDiffOp::d(1, 0), one = FormalDiffOp::identity(1);
  FormalDiffOp out(1, 1);
  for (const auto& [key, c] : in_s.terms()) {
    const FormalDiffOp term = (one - u).pow(static_cast<unsigned>(key.first)) * (-du).pow(static_cast<unsigned>(key.second));
    out += c * term;
  }
  return out;
}

}  // namespace detail

/// Fixed points of g on CP^1; empty optional if g acts trivially on the base.
inline std::optional<std::vector<FixedPoint>> fixed_points(const GroupElement& g, const GlobalDiffOp& d,
                                                           const ModelSpace& space) {
  detail::require_cp1(space);
  detail::require_flip_compatible(g, space);
  const long e = g.r * space.w;
  const Cyclotomic rho = zeta(g.N, e);
  std::vector<FixedPoint> pts;
  if (!g.flip) {
    if (rho == Cyclotomic(1)) return std::nullopt;
    const CMatrix inf_fiber = CMatrix::scalar(rho.pow(space.k));
    pts.push_back({"0", DiagonalAction(g.N, {-e}), d.chart0()});
    pts.push_back({"inf", DiagonalAction(g.N, {e}, inf_fiber), d.chart_infinity()});
    return pts;
  }
  // z0^2 = rho, z0 = +- zeta_2N^e
  for (int sign : {1, -1}) {
    const Cyclotomic z0 = Cyclotomic(sign) * zeta(2 * g.N, e);
    const Cyclotomic fiber = Cyclotomic(space.flip_sign) * z0.pow(space.k);
    const std::string label = std::string(sign > 0 ? "+" : "-") + "sqrt(" + rho.to_string() + ")";
    pts.push_back({label, DiagonalAction(2, {1}, CMatrix::scalar(fiber)), detail::flip_jet(d.chart0(), z0, space.k)});
  }
  return pts;
}

inline FormalDiffOp jet_at(const GlobalDiffOp& d, const std::string& point, const ModelSpace& space) {
  detail::require_cp1(space);
  if (point == "0") return d.chart0();
  if (point == "inf") return d.chart_infinity();
  throw Error("jet_at: unknown point '" + point + "' (use 0, inf, or fixed_points for flips)");
}

}  // namespace eqlef
