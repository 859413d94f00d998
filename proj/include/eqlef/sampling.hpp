// Seeded random samplers for property checks.
#pragma once

#include <random>

#include "eqlef/hochschild.hpp"

namespace eqlef::sampling {

inline Cyclotomic random_scalar(std::mt19937& rng, int conductor) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), power(0, conductor - 1);
  Cyclotomic c(Rational(num(rng), den(rng)));
  if (conductor > 1) c *= zeta(conductor, power(rng));
  return c;
}

inline Monomial random_monomial(std::mt19937& rng, int n, int max_degree) {
  std::uniform_int_distribution<int> var(0, 2 * n - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  Monomial m;
  const int d = deg(rng);
  for (int k = 0; k < d; ++k) {
    const int v = var(rng);
    if (v < n) ++m.y[v];
    else ++m.d[v - n];
  }
  return m;
}

/// Up to `terms` random monomials of total degree <= max_degree.
inline FormalDiffOp random_op(std::mt19937& rng, int n, int max_degree, int conductor = 1, int terms = 4) {
  FormalDiffOp a(n, 1);
  for (int t = 0; t < terms; ++t)
    a.add_term(random_monomial(rng, n, max_degree), CMatrix::scalar(random_scalar(rng, conductor)));
  return a;
}

inline Polynomial random_poly(std::mt19937& rng, int n, int max_degree) {
  Polynomial p(n);
  std::uniform_int_distribution<int> e(0, max_degree), c(-3, 3);
  for (int t = 0; t < 4; ++t) {
    Exponent x{};
    for (int i = 0; i < n; ++i) x[i] = static_cast<std::int16_t>(e(rng));
    p.add(x, Cyclotomic(c(rng)));
  }
  return p;
}

/// Three random elementary tensors of the given chain degree.
inline TwistedChain random_chain(std::mt19937& rng, int n, int degree, int conductor) {
  TwistedChain c(n, degree);
  for (int t = 0; t < 3; ++t) {
    Tensor x;
    for (int s = 0; s <= degree; ++s) x.push_back(random_monomial(rng, n, 2));
    c.add(x, random_scalar(rng, conductor));
  }
  return c;
}

}  // namespace eqlef::sampling
