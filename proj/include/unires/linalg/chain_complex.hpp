#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unires/linalg/rank.hpp"
#include "unires/linalg/sparse_matrix.hpp"

namespace unires {

class CompositionNotZero : public std::runtime_error {
 public:
  CompositionNotZero(int position, int row, int col)
      : std::runtime_error("d_" + std::to_string(position - 1) + " * d_" + std::to_string(position) +
                           " nonzero at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
        position(position), row(row), col(col) {}
  int position, row, col;
};

/// Finite complex of free modules: dims[i] = rank of C_i, diffs[i] = d_i : C_i -> C_{i-1}.
/// Missing differentials are zero maps.
template <class T>
struct ChainComplex {
  CoefficientDomain domain = CoefficientDomain::rationals();
  std::map<int, int> dims;
  std::map<int, SparseMatrix<T>> diffs;

  int dim(int i) const {
    auto it = dims.find(i);
    return it == dims.end() ? 0 : it->second;
  }
  const SparseMatrix<T>* diff(int i) const {
    auto it = diffs.find(i);
    return it == diffs.end() ? nullptr : &it->second;
  }
};

template <class T>
void check_shapes(const ChainComplex<T>& c) {
  for (const auto& [i, d] : c.diffs)
    if (d.cols() != c.dim(i) || d.rows() != c.dim(i - 1))
      throw MatrixShapeError("differential d_" + std::to_string(i) + " has wrong shape");
}

/// Throws CompositionNotZero at the first nonzero entry of some d_{i-1} d_i.
template <class T>
void check_composition(const ChainComplex<T>& c) {
  for (const auto& [i, d] : c.diffs) {
    const SparseMatrix<T>* prev = c.diff(i - 1);
    if (!prev) continue;
    SparseMatrix<T> prod = multiply(*prev, d);
    if (!prod.is_zero()) {
      auto e = prod.entries().front();
      throw CompositionNotZero(i, e.row, e.col);
    }
  }
}

/// (position, dim H_i) for every position carrying a nonzero module, in increasing order.
/// Ranks are taken over c.domain when it is a field, else over each matrix's own domain.
inline std::vector<std::pair<int, std::int64_t>> homology_dims(const ChainComplex<std::int64_t>& c,
                                                               bool verify = true) {
  check_shapes(c);
  if (verify) check_composition(c);
  std::map<int, std::int64_t> rk;
  for (const auto& [i, d] : c.diffs) rk[i] = static_cast<std::int64_t>(c.domain.is_field() ? rank_over(d, c.domain) : rank(d));
  std::vector<std::pair<int, std::int64_t>> out;
  for (const auto& [i, n] : c.dims) {
    if (n == 0) continue;
    std::int64_t h = n - (rk.count(i) ? rk[i] : 0) - (rk.count(i + 1) ? rk[i + 1] : 0);
    out.emplace_back(i, h);
  }
  return out;
}

}  // namespace unires
