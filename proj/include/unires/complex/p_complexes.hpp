#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "unires/linalg/chain_complex.hpp"
#include "unires/linalg/rank.hpp"
#include "unires/multilinear/combinatorics.hpp"
#include "unires/multilinear/exterior.hpp"
#include "unires/ring/generic_data.hpp"

namespace unires {

// The e = 1 complexes P and P' built from (b, v, X) with v the single column of V.
// P_i = wedge^i G* + wedge^i F* + wedge^{i-1} G*, and P' replaces P_1, P_0 by
// wedge^1 G* + wedge^1 F* and R.

struct PGenerator {
  char part = 'G';  // 'G': wedge^i G*, 'F': wedge^i F*, 'H': wedge^{i-1} G*, 'R': P'_0
  Mask set = 0;
  bool operator==(const PGenerator&) const = default;
};

struct PComplex {
  Params params;
  bool prime = false;
  std::map<int, std::vector<PGenerator>> basis;
  std::map<int, SparseMatrix<Polynomial>> diffs;

  int length() const { return basis.empty() ? 0 : basis.rbegin()->first; }

  /// Twist of a generator at position i, read off from the bidegrees of the entries:
  /// wedge^i G* at [-i,-i], wedge^i F* at [1-i,-g], wedge^{i-1} G* at [2-i,1-i-g].
  ABidegree twist(int i, const PGenerator& x) const {
    switch (x.part) {
      case 'G': return {-i, -i};
      case 'F': return {1 - i, -params.g};
      case 'H': return {2 - i, 1 - i - params.g};
      default: return {0, 0};
    }
  }

  std::string label(int i, const PGenerator& x) const {
    std::string s(1, x.part);
    s += "[";
    bool first = true;
    for (int t : mask_indices(x.set)) {
      s += (first ? "" : ",") + std::to_string(t + 1);
      first = false;
    }
    return s + "]@" + std::to_string(i);
  }

  ChainComplex<Polynomial> as_chain_complex() const {
    ChainComplex<Polynomial> c;
    for (const auto& [i, b] : basis) c.dims[i] = static_cast<int>(b.size());
    for (const auto& [i, d] : diffs) c.diffs.emplace(i, d);
    return c;
  }
};

namespace detail {

/// sum_{t in S} sgn(t, S\t) vec[t] * (S \ t): contraction by an element of G or F from the left.
inline void contract_vector(const std::vector<Polynomial>& vec, Mask S, std::map<Mask, Polynomial>& out,
                            long scale = 1) {
  for (int t : mask_indices(S)) {
    Mask rest = S & ~bit(t);
    if (vec[t].is_zero()) continue;
    out[rest] = out[rest] + vec[t].scaled(mpz_class(scale * shuffle_sign(bit(t), rest)));
  }
}

}  // namespace detail

/// Builds P (prime = false) or P' (prime = true) over the generic ring for e = 1.
inline PComplex build_P_complex(const GenericData& d, bool prime) {
  const Params& p = d.params;
  if (p.e != 1) throw ParameterError("the complexes P and P' are defined for e = 1");
  const int g = p.g, f = p.f();
  PComplex out;
  out.params = p;
  out.prime = prime;

  std::vector<Polynomial> v(f), xv(g);
  for (int j = 0; j < f; ++j) v[j] = d.V(j, 0);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < f; ++j) xv[i] = xv[i] + d.X(i, j) * v[j];
  }

  for (int i = 0; i <= f; ++i) {
    std::vector<PGenerator> b;
    if (prime && i == 0) {
      b.push_back({'R', 0});
    } else {
      for (Mask s : enum_subsets(g, i)) b.push_back({'G', s});
      for (Mask s : enum_subsets(f, i)) b.push_back({'F', s});
      if (!(prime && i == 1) && i >= 1)
        for (Mask s : enum_subsets(g, i - 1)) b.push_back({'H', s});
    }
    out.basis.emplace(i, std::move(b));
  }

  // B_i(phi_J) = [(wedge^{f-i} X)(phi_J[omega_F])](omega_G*)
  auto B = [&](Mask J, std::map<Mask, Polynomial>& o, long scale) {
    Mask Jc = full_mask(f) & ~J;
    int s1 = shuffle_sign(Jc, J);
    for (Mask I : enum_subsets(g, popcount(Jc))) {
      Mask Ic = full_mask(g) & ~I;
      Polynomial m = minor_det(d.X, I, Jc);
      if (m.is_zero()) continue;
      o[Ic] = o[Ic] + m.scaled(mpz_class(scale * s1 * shuffle_sign(I, Ic)));
    }
  };
  // A_i(gamma_I) = sum_J det X[I,J] phi_J
  auto A = [&](Mask I, std::map<Mask, Polynomial>& o) {
    for (Mask J : enum_subsets(f, popcount(I))) {
      Polynomial m = minor_det(d.X, I, J);
      if (!m.is_zero()) o[J] = o[J] + m;
    }
  };

  for (int i = 1; i <= f; ++i) {
    const auto& src = out.basis.at(i);
    const auto& dst = out.basis.at(i - 1);
    std::map<std::pair<char, Mask>, int> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[{dst[k].part, dst[k].set}] = static_cast<int>(k);
    std::vector<Triplet<Polynomial>> trip;
    auto put = [&](char part, const std::map<Mask, Polynomial>& m, int col) {
      for (const auto& [s, c] : m) {
        if (c.is_zero()) continue;
        auto it = pos.find({part, s});
        if (it == pos.end()) throw std::logic_error("P complex: target outside module");
        trip.push_back({it->second, col, c});
      }
    };
    const bool into_r = prime && i == 1;    // d'_1 = [X(v), B_1 + b v]
    const bool collapsed = prime && i == 2;  // d'_2 drops the last block row
    for (std::size_t col = 0; col < src.size(); ++col) {
      const PGenerator& x = src[col];
      int c = static_cast<int>(col);
      std::map<Mask, Polynomial> gpart, fpart, hpart;
      if (x.part == 'G') {
        detail::contract_vector(xv, x.set, gpart);
      } else if (x.part == 'F') {
        B(x.set, gpart, 1);
        if (into_r) gpart[0] = gpart[0] + d.b * v[mask_indices(x.set)[0]];
        else detail::contract_vector(v, x.set, fpart, -1);
      } else {
        long sb = collapsed ? -1 : ((i + 1) % 2 == 0 ? 1 : -1);
        gpart[x.set] = d.b.scaled(mpz_class(sb));
        A(x.set, fpart);
        if (!collapsed) detail::contract_vector(xv, x.set, hpart);
      }
      put(into_r ? 'R' : 'G', gpart, c);
      put('F', fpart, c);
      put('H', hpart, c);
    }
    out.diffs.emplace(i, SparseMatrix<Polynomial>::from_triplets(static_cast<int>(dst.size()),
                                                                  static_cast<int>(src.size()), std::move(trip)));
  }
  return out;
}

/// Evaluates a polynomial matrix at a specialization over F_p.
inline SparseMatrix<std::int64_t> specialize_matrix(const SparseMatrix<Polynomial>& m, const ScalarData& s) {
  std::vector<Triplet<std::int64_t>> trip;
  for (const auto& t : m.entries()) {
    std::uint32_t v = t.value.evaluate_mod(s.values, s.p);
    if (v) trip.push_back({t.row, t.col, static_cast<std::int64_t>(v)});
  }
  return SparseMatrix<std::int64_t>::from_triplets(m.rows(), m.cols(), std::move(trip),
                                                   CoefficientDomain::prime_field(s.p));
}

inline ChainComplex<std::int64_t> specialize_complex(const PComplex& c, const ScalarData& s) {
  ChainComplex<std::int64_t> out;
  out.domain = CoefficientDomain::prime_field(s.p);
  for (const auto& [i, b] : c.basis) out.dims[i] = static_cast<int>(b.size());
  for (const auto& [i, d] : c.diffs) out.diffs.emplace(i, specialize_matrix(d, s));
  return out;
}

/// Graded ranks (position, twist) -> count. Not minimal: B_f = wedge^0 X is the identity.
inline std::map<std::pair<int, std::pair<int, int>>, std::int64_t> graded_ranks(const PComplex& c) {
  std::map<std::pair<int, std::pair<int, int>>, std::int64_t> out;
  for (const auto& [i, b] : c.basis)
    for (const auto& x : b) {
      ABidegree t = c.twist(i, x);
      ++out[{i, {t.s, t.t}}];
    }
  return out;
}

/// Homology of P (x) K, K = R/(all variables), bucketed by (position, twist). Only the
/// constant entries survive, and they join generators of equal twist.
inline std::map<std::pair<int, std::pair<int, int>>, std::int64_t> fiber_homology(const PComplex& c,
                                                                                  const CoefficientDomain& k) {
  if (!k.is_field()) throw DomainError("fiber_homology: field required");
  std::vector<mpz_class> zero(static_cast<std::size_t>(VariableLayout{c.params}.count()), 0);
  using Key = std::pair<int, std::pair<int, int>>;
  auto key = [&](int i, const PGenerator& x) {
    ABidegree t = c.twist(i, x);
    return Key{i, {t.s, t.t}};
  };
  std::map<Key, std::int64_t> dims, out;
  for (const auto& [i, b] : c.basis)
    for (const auto& x : b) ++dims[key(i, x)];
  std::map<Key, std::int64_t> rk;  // rank of d_i restricted to the source twist at i
  for (const auto& [i, d] : c.diffs) {
    std::map<std::pair<int, int>, std::vector<Triplet<std::int64_t>>> by_twist;
    for (const auto& t : d.entries()) {
      mpz_class v = t.value.evaluate(zero);
      if (v == 0) continue;
      Key kc = key(i, c.basis.at(i)[t.col]);
      if (key(i - 1, c.basis.at(i - 1)[t.row]).second != kc.second)
        throw std::logic_error("P complex: constant entry between different twists");
      if (!v.fits_slong_p()) throw IntegerOverflow();
      by_twist[kc.second].push_back({t.row, t.col, v.get_si()});
    }
    for (auto& [tw, trip] : by_twist) {
      auto m = SparseMatrix<std::int64_t>::from_triplets(d.rows(), d.cols(), std::move(trip));
      rk[{i, tw}] = static_cast<std::int64_t>(rank_over(m, k));
    }
  }
  for (const auto& [kk, n] : dims) {
    std::int64_t h = n;
    if (auto it = rk.find(kk); it != rk.end()) h -= it->second;
    if (auto it = rk.find({kk.first + 1, kk.second}); it != rk.end()) h -= it->second;
    if (h) out[kk] = h;
  }
  return out;
}

}  // namespace unires
