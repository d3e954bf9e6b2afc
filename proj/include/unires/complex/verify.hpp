#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "unires/complex/differential.hpp"

namespace unires {

struct VerifyReport {
  bool passed = true;
  std::string mode;
  int max_position = 0;
  int seeds = 0;
  std::size_t columns_checked = 0;
  std::string witness;  // first failing entry, with summand coordinates
};

namespace detail {

inline std::string composition_witness(const ComplexF& cx, int i, std::size_t row, std::size_t col,
                                       const std::string& value) {
  return "d_" + std::to_string(i - 1) + "*d_" + std::to_string(i) + " at column " + cx.module(i).label(col) +
         ", row " + cx.module(i - 2).label(row) + ": " + value;
}

}  // namespace detail

/// d_{i-1} d_i = 0 for 2 <= i <= max_position, expanded over the generic ring.
inline VerifyReport verify_symbolic(const ComplexF& cx, int max_position) {
  VerifyReport rep;
  rep.mode = "symbolic";
  rep.max_position = max_position;
  auto data = make_generic(cx.params());
  if (max_position < 2) return rep;
  auto prev = differential_F(cx, 1, data);
  for (int i = 2; i <= max_position; ++i) {
    auto cur = differential_F(cx, i, data);
    auto prod = multiply(prev, cur);
    rep.columns_checked += static_cast<std::size_t>(cur.cols());
    if (!prod.is_zero()) {
      auto e = prod.entries().front();
      rep.passed = false;
      rep.witness = detail::composition_witness(cx, i, e.row, e.col, to_string(e.value, cx.params()));
      return rep;
    }
    prev = std::move(cur);
  }
  return rep;
}

/// d_{i-1} d_i = 0 at several specializations over F_p at once. Each differential is
/// emitted once as (row, coefficient, atom) triples; atom values are tabulated per seed,
/// so one pass over the column structure serves all seeds.
inline VerifyReport verify_specialized(const ComplexF& cx, int max_position, std::uint32_t p,
                                       const std::vector<std::uint64_t>& seeds) {
  VerifyReport rep;
  rep.mode = "specialized";
  rep.max_position = max_position;
  rep.seeds = static_cast<int>(seeds.size());
  if (max_position < 2 || seeds.empty()) return rep;
  const std::size_t S = seeds.size();
  auto gen = make_generic(cx.params());
  std::vector<ScalarData> data;
  for (auto s : seeds) data.push_back(specialize(gen, p, s));
  std::vector<ScalarAtoms> atoms;
  for (const auto& d : data) atoms.emplace_back(d);

  // weighted atoms: (atom, coefficient) -> id; vals[id*S + s] in [0,p)
  std::unordered_map<std::uint64_t, std::uint32_t> wid;
  std::vector<std::uint32_t> vals;
  auto weighted = [&](const DiffTerm& t) -> std::uint32_t {
    std::uint64_t key = t.atom.key() * 64 + static_cast<std::uint64_t>(t.coef + 32);
    auto it = wid.find(key);
    if (it != wid.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(wid.size());
    wid.emplace(key, id);
    for (std::size_t s = 0; s < S; ++s) {
      std::int64_t v = static_cast<std::int64_t>(atoms[s].value(t.atom)) * t.coef % p;
      vals.push_back(static_cast<std::uint32_t>(v < 0 ? v + p : v));
    }
    return id;
  };

  struct AtomMatrix {
    std::vector<std::size_t> ptr{0};
    std::vector<std::uint32_t> row, w;
  };
  std::vector<DiffTerm> terms;
  auto build = [&](int i) {
    AtomMatrix m;
    std::size_t n = cx.module(i).size();
    for (std::size_t col = 0; col < n; ++col) {
      cx.emit(i, col, terms);
      for (const auto& t : terms) {
        m.row.push_back(static_cast<std::uint32_t>(t.row));
        m.w.push_back(weighted(t));
      }
      m.ptr.push_back(m.row.size());
    }
    return m;
  };

  AtomMatrix prev = build(1);
  std::vector<std::uint64_t> acc;
  std::vector<char> touched;
  std::vector<std::uint32_t> list;
  std::vector<std::uint64_t> wv(S);
  for (int i = 2; i <= max_position; ++i) {
    AtomMatrix cur = build(i);
    std::size_t nrows = cx.module(i - 2).size();
    acc.assign(nrows * S, 0);
    touched.assign(nrows, 0);
    std::size_t ncols = cur.ptr.size() - 1;
    for (std::size_t col = 0; col < ncols; ++col) {
      list.clear();
      for (std::size_t k = cur.ptr[col]; k < cur.ptr[col + 1]; ++k) {
        std::uint32_t y = cur.row[k];
        const std::uint32_t* a = &vals[static_cast<std::size_t>(cur.w[k]) * S];
        for (std::size_t s = 0; s < S; ++s) wv[s] = a[s];
        for (std::size_t t = prev.ptr[y]; t < prev.ptr[y + 1]; ++t) {
          std::uint32_t z = prev.row[t];
          const std::uint32_t* b = &vals[static_cast<std::size_t>(prev.w[t]) * S];
          std::uint64_t* dst = &acc[static_cast<std::size_t>(z) * S];
          for (std::size_t s = 0; s < S; ++s) dst[s] += wv[s] * b[s];
          if (!touched[z]) {
            touched[z] = 1;
            list.push_back(z);
          }
        }
      }
      for (std::uint32_t z : list) {
        std::uint64_t* dst = &acc[static_cast<std::size_t>(z) * S];
        for (std::size_t s = 0; s < S; ++s) {
          if (rep.passed && dst[s] % p != 0) {
            rep.passed = false;
            rep.witness = detail::composition_witness(cx, i, z, col, std::to_string(dst[s] % p)) +
                          " (seed " + std::to_string(seeds[s]) + ")";
          }
          dst[s] = 0;
        }
        touched[z] = 0;
      }
      if (!rep.passed) return rep;
    }
    rep.columns_checked += ncols;
    prev = std::move(cur);
  }
  return rep;
}

}  // namespace unires
