// Twisted heat supertraces at shrinking t approach 1/(1 - lambda^-1).
#include <iostream>

#include "eqlef/eqlef.hpp"

int main() {
  using namespace eqlef;
  const auto cfg = default_heat_config();
  for (int N : {2, 3, 4}) {
    const auto r = smalltime_limit(DiagonalAction(N, {1}), cfg);
    std::cout << "lambda = zeta" << N << ", exact limit " << r.exact << "\n";
    for (std::size_t i = 0; i < r.t.size(); ++i)
      std::cout << "  t=" << r.t[i] << "  value=" << r.values[i] << "  error=" << r.errors[i] << "\n";
  }
}
