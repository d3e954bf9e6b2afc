#pragma once

#include <vector>

#include "unires/linalg/sparse_matrix.hpp"
#include "unires/multilinear/bowtie.hpp"
#include "unires/multilinear/exterior.hpp"

namespace unires {

/// Sign of removing the cell c from Z under the left-derivation rule:
/// (-1)^{#{z in Z : z < c}}.
inline int derivation_sign(Mask z, int c) { return (popcount(z & (bit(c) - 1)) & 1) ? -1 : 1; }

/// Matrix of Y-check: wedge^d(E (x) G*) -> wedge^{d-1}(E (x) G*), on the lexicographic
/// bases, where y is the g x e matrix of Y: E -> G and Y-check(eps_k (x) gamma_i) = y(i,k).
template <class T>
SparseMatrix<T> koszul_differential(const DenseMatrix<T>& y, int d,
                                    CoefficientDomain domain = CoefficientDomain::integers()) {
  const int g = y.rows, e = y.cols, n = e * g;
  SubsetIndex src(n, d), dst(n, d - 1);
  std::vector<Triplet<T>> t;
  for (int j = 0; j < src.size(); ++j) {
    Mask z = src.at(j);
    for (int c : mask_indices(z)) {
      const T& v = y(c % g, c / g);
      if (v == T(0)) continue;
      int r = dst.find(z & ~bit(c));
      t.push_back({r, j, derivation_sign(z, c) == 1 ? v : T(0) - v});
    }
  }
  return SparseMatrix<T>::accumulate(dst.size(), src.size(), std::move(t), domain);
}

template <class T>
std::vector<SparseMatrix<T>> koszul_family(const DenseMatrix<T>& y,
                                           CoefficientDomain domain = CoefficientDomain::integers()) {
  std::vector<SparseMatrix<T>> out;
  for (int d = 0; d <= y.rows * y.cols; ++d) out.push_back(koszul_differential(y, d, domain));
  return out;
}

}  // namespace unires
