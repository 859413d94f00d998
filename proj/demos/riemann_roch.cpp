// Equivariant Riemann-Roch on CP^1: both sides of the Lefschetz formula for
// the identity operator on O(k) under rotation by a root of unity.
#include <iostream>

#include "eqlef/eqlef.hpp"

int main() {
  using namespace eqlef;
  for (int N : {2, 3, 4}) {
    const auto g = GroupElement::rotation(N, 1);
    for (int k = 0; k <= 3; ++k) {
      const auto r = verify_theorem(g, sl2::one(k), make_cp1(k, 1));
      std::cout << "N=" << N << " k=" << k << ": H^0 trace " << r.lhs.to_string() << " | fixed points";
      for (const auto& p : r.per_point) std::cout << " " << p.point << ":" << p.trace.value.to_string();
      std::cout << (r.equal ? "  ok" : "  MISMATCH") << "\n";
    }
  }
}
