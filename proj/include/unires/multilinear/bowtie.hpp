#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "unires/multilinear/combinatorics.hpp"
#include "unires/multilinear/divided.hpp"
#include "unires/multilinear/exterior.hpp"

namespace unires {

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index of the generator eps_k (x) gamma_i of E (x) G*; E-index major.
inline int cell_index(int k, int i, int g) { return k * g + i; }

// Wedge product of the cells c_1,...,c_m in the given order, as a signed mask.
inline SignedMask wedge_cells(std::vector<int> cells) {
  int s = sort_sign(cells);
  if (!s) return {};
  Mask m = 0;
  for (int c : cells) m |= bit(c);
  return {s, m};
}

/// U bowtie Y for U = eps^(mu) in D_m E and Y = gamma_y in wedge^m G*: the sum over the
/// distinct sequences u with multiset mu of (eps_{u_1} (x) gamma_{y_1}) ^ ... ^ (eps_{u_m} (x) gamma_{y_m}).
/// Distinct sequences give distinct cell sets, so the terms never collide.
inline std::vector<SignedMask> bowtie_terms(const std::vector<int>& mu, Mask y, int g) {
  std::vector<int> ys = mask_indices(y);
  int m = 0;
  for (int x : mu) m += x;
  if (m != static_cast<int>(ys.size())) throw DegreeMismatch("bowtie: degrees differ");
  std::vector<SignedMask> out;
  std::vector<int> cells(ys.size());
  for (const auto& seq : multiset_sequences(mu)) {
    for (std::size_t t = 0; t < ys.size(); ++t) cells[t] = cell_index(seq[t], ys[t], g);
    SignedMask s = wedge_cells(cells);
    if (s.sign) out.push_back(s);
  }
  return out;
}

// The mirror map wedge^m E (x) D_m G* -> wedge^m(E (x) G*). With `reversed` (the
// orientation used by the complex) the factors are wedged in decreasing order,
// (U_m (x) Y_m) ^ ... ^ (U_1 (x) Y_1), which differs from the increasing order by
// (-1)^{m(m-1)/2}.
inline std::vector<SignedMask> mirror_bowtie_terms(Mask u, const std::vector<int>& nu, int g,
                                                   bool reversed = true) {
  std::vector<int> us = mask_indices(u);
  int m = 0;
  for (int x : nu) m += x;
  if (m != static_cast<int>(us.size())) throw DegreeMismatch("mirror bowtie: degrees differ");
  std::vector<SignedMask> out;
  std::vector<int> cells(us.size());
  for (const auto& seq : multiset_sequences(nu)) {
    for (std::size_t t = 0; t < us.size(); ++t) {
      std::size_t pos = reversed ? us.size() - 1 - t : t;
      cells[pos] = cell_index(us[t], seq[t], g);
    }
    SignedMask s = wedge_cells(cells);
    if (s.sign) out.push_back(s);
  }
  return out;
}

inline ExteriorVector<std::int64_t> bowtie(const DividedBasisElement& u, const ExteriorBasisElement& y) {
  if (u.degree() != y.degree()) throw DegreeMismatch("bowtie: degrees differ");
  ExteriorVector<std::int64_t> out;
  for (auto s : bowtie_terms(u.exps, y.mask, y.n)) accumulate<std::int64_t>(out, s.mask, s.sign);
  return out;
}

inline ExteriorVector<std::int64_t> mirror_bowtie(const ExteriorBasisElement& u, const DividedBasisElement& y,
                                                  bool reversed = true) {
  if (u.degree() != y.degree()) throw DegreeMismatch("mirror bowtie: degrees differ");
  ExteriorVector<std::int64_t> out;
  for (auto s : mirror_bowtie_terms(u.mask, y.exps, y.n(), reversed))
    accumulate<std::int64_t>(out, s.mask, s.sign);
  return out;
}

}  // namespace unires
