// The gamma-twisted trace on polynomial differential operators.
//
// For a diagonal g with no eigenvalue 1 and mu_i = lambda_i^-1,
//   Tr_g(M y^a d^b) = 0                                          if a != b,
//   Tr_g(M y^b d^b) = tr(F M) prod_i b_i! mu_i^b_i / (1 - mu_i)^(b_i + 1),
// where F is the fiber action. This is the Abel-regularized trace of g o A on
// the polynomial module, normalized so that Tr_g(1) = tr(F) / det(1 - g^-1).
#pragma once

#include "eqlef/cyclotomic.hpp"
#include "eqlef/error.hpp"
#include "eqlef/weyl.hpp"

namespace eqlef {

struct GammaTraceResult {
  Cyclotomic value;
  Cyclotomic det_factor;   // prod_i 1 / (1 - lambda_i^-1)
  Cyclotomic fiber_trace;  // tr_E(g)
};

namespace detail {

inline void require_fully_twisted(const DiagonalAction& g) {
  for (int i = 0; i < g.n(); ++i)
    if (g.fixes_direction(i)) throw Error("untwisted direction " + std::to_string(i + 1) + ": split off the fixed subspace first");
}

}  // namespace detail

inline Cyclotomic det_factor(const DiagonalAction& g) {
  detail::require_fully_twisted(g);
  Cyclotomic r(1);
  for (int i = 0; i < g.n(); ++i) r *= (Cyclotomic(1) - g.lambda(i).inverse()).inverse();
  return r;
}

/// Scalar closed form for the diagonal monomial y^b d^b.
inline Cyclotomic gamma_trace_diagonal(const Monomial& m, const DiagonalAction& g) {
  Cyclotomic r(1);
  for (int i = 0; i < g.n(); ++i) {
    const Cyclotomic mu = g.lambda(i).inverse();
    const long b = m.d[i];
    r *= Cyclotomic(Rational(detail::factorial(b))) * mu.pow(b) / (Cyclotomic(1) - mu).pow(b + 1);
  }
  return r;
}

inline GammaTraceResult gamma_trace(const FormalDiffOp& a, const DiagonalAction& g) {
  detail::require_fully_twisted(g);
  if (a.n() != g.n()) throw Error("gamma_trace: dimension mismatch");
  if (a.rank() != g.rank()) throw Error("gamma_trace: fiber size mismatch");
  Cyclotomic value(0);
  for (const auto& [m, c] : a.terms()) {
    if (m.y != m.d) continue;
    const Cyclotomic t = (g.fiber() * c).trace();
    if (t.is_zero()) continue;
    value += t * gamma_trace_diagonal(m, g);
  }
  return {value, det_factor(g), g.fiber().trace()};
}

/// Tr_g(A B) == Tr_g(g^-1(B) A); the contract is that this always holds.
inline bool trace_property_check(const FormalDiffOp& a, const FormalDiffOp& b, const DiagonalAction& g) {
  return gamma_trace(a * b, g).value == gamma_trace(gamma_act(g.inverse(), b) * a, g).value;
}

}  // namespace eqlef
