#pragma once

#include <map>
#include <vector>

#include "unires/complex/basis.hpp"
#include "unires/linalg/chain_complex.hpp"

namespace unires {

/// Positions with their bases and differentials. embedding[i], when present, is a matrix
/// whose columns span the free submodule of bases[i] actually used; diffs[i] is then
/// written in that column basis.
template <class T>
struct ChainComplexDesc {
  Params params;
  CoefficientDomain domain = CoefficientDomain::integers();
  std::map<int, FreeModuleBasis> bases;
  std::map<int, SparseMatrix<std::int64_t>> embedding;
  std::map<int, SparseMatrix<T>> diffs;  // diffs[i] : position i -> position i-1
  int truncation = 0;

  std::size_t rank_at(int i) const {
    auto s = embedding.find(i);
    if (s != embedding.end()) return static_cast<std::size_t>(s->second.cols());
    auto b = bases.find(i);
    return b == bases.end() ? 0 : b->second.size();
  }

  ChainComplex<T> as_chain_complex() const {
    ChainComplex<T> c;
    c.domain = domain;
    for (const auto& [i, b] : bases) c.dims[i] = static_cast<int>(rank_at(i));
    for (const auto& [i, d] : diffs) c.diffs.emplace(i, d);
    return c;
  }
};

}  // namespace unires
