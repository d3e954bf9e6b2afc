// Betti table of the universal resolution for e = g = 2, assembled twice and checked
// against the stored reference.

#include <iostream>

#include "unires/betti/betti.hpp"

int main() {
  using namespace unires;
  Params p(2, 2);
  auto k = CoefficientDomain::rationals();
  auto table = betti_table(p, k);
  std::cout << table.to_text();
  bool same = table.graded() == betti_from_fiber(p, k).graded();
  std::cout << "fiber assembly agrees: " << (same ? "yes" : "no") << '\n';
  try {
    compare_reference(table);
    std::cout << "reference: equal\n";
  } catch (const Mismatch& m) {
    for (const auto& d : m.differences) std::cout << "reference: " << d << '\n';
    return 1;
  }
  return same ? 0 : 1;
}
