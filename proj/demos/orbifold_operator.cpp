// On C/Z_2 with invariant coordinate u = z^2, (1/z) d acts on even polynomials
// as 2 d/du: a differential operator of order 1 in the algebraic sense that is
// not generated by u and the Euler field u d/du.
#include <iostream>

#include "eqlef/eqlef.hpp"

int main() {
  using namespace eqlef;
  for (const std::string src : {"(1/z) d", "z^4 (1/z) d", "z d"}) {
    const InvariantOperatorProblem p{2, parse_laurent(src)};
    const auto ord = algebraic_order(p, 6);
    const auto geo = is_geometric(p);
    std::cout << src << ": algebraic order " << (ord.order ? std::to_string(*ord.order) : "> 6") << ", geometric "
              << to_string(geo.verdict);
    if (geo.verdict == Verdict::yes) std::cout << " = " << rewriting_string(geo);
    if (geo.certificate)
      std::cout << " (coefficient of u^" << geo.certificate->first << " in P(u^" << geo.certificate->second
                << ") is " << geo.certificate_value.to_string() << ")";
    std::cout << "\n";
  }
}
