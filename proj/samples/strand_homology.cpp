// Homology of the fiber strands M(P,Q) for e = g = 2 over F_2, one JSON line per strand.

#include <iostream>

#include "unires/tor/fiber.hpp"

int main() {
  using namespace unires;
  Params p(2, 2);
  auto k = CoefficientDomain::prime_field(2);
  for (int P = 0; P <= p.eg(); ++P)
    for (int Q = std::max(0, P - p.g); Q <= P + p.e; ++Q) {
      auto kind = P - Q == p.g ? FiberKind::Mtilde : FiberKind::M;
      auto s = fiber_strand(P, Q, p, k, kind);
      std::cout << strand_report(s, strand_homology(s)).dump() << '\n';
    }
}
