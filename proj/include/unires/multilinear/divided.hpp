#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "unires/multilinear/combinatorics.hpp"

namespace unires {

class DegreeZero : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// eps^(mu) = eps_1^(mu_1) ... eps_n^(mu_n) in D_a of a rank-n module; the same
/// exponent vectors index monomials of S_a.
struct DividedBasisElement {
  std::vector<int> exps;
  int n() const { return static_cast<int>(exps.size()); }
  int degree() const {
    int s = 0;
    for (int x : exps) s += x;
    return s;
  }
  bool operator==(const DividedBasisElement&) const = default;
};

inline std::vector<DividedBasisElement> enum_divided(int n, int a) {
  std::vector<DividedBasisElement> out;
  for (auto& c : enum_compositions(n, a)) out.push_back({std::move(c)});
  return out;
}

struct ComultTerm {
  DividedBasisElement rest;  // degree a-1 factor
  int index = 0;             // the degree-one factor eps_index
  std::int64_t coefficient = 1;
};

/// The (a-1, 1) component of the divided-power comultiplication.
inline std::vector<ComultTerm> comult_divided(const DividedBasisElement& x) {
  if (x.degree() == 0) throw DegreeZero("comult_divided: degree zero element");
  std::vector<ComultTerm> out;
  for (int k = 0; k < x.n(); ++k) {
    if (x.exps[k] == 0) continue;
    DividedBasisElement r = x;
    --r.exps[k];
    out.push_back({std::move(r), k, 1});
  }
  return out;
}

/// Fully iterated comultiplication into the m-fold tensor power, as the list of
/// sequences (u_1,...,u_m) each with coefficient 1.
inline std::vector<std::vector<int>> comult_iterated(const DividedBasisElement& x) {
  return multiset_sequences(x.exps);
}

}  // namespace unires
