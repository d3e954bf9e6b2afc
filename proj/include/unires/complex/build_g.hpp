#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unires/complex/chain_desc.hpp"
#include "unires/complex/differential.hpp"
#include "unires/complex/fiber_maps.hpp"
#include "unires/linalg/checked.hpp"
#include "unires/linalg/smith.hpp"

namespace unires {

struct NonUnitInvariantFactor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Basis of a complement A'(a,c,d) to the image of the top strand map
/// A(a+1,c+1,d-1) -> A(a,c,d) (a+c+d = eg). The map does not touch J, so the
/// complement is computed on the (mu,nu,Z) part and tensored with wedge^b F*.
/// Vectors are sparse over the local indices of M(a,c,d).
struct TopComplement {
  SummandId target;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> vectors;
  std::size_t pivots = 0;        // unit pivots found by elimination
  std::size_t residual_rank = 0;  // rank of the Schur complement handled by SNF
};

struct TopMapReport {
  bool all_units = true;
  std::size_t maps = 0, blocks = 0;
  std::uint64_t image_rank = 0, complement_rank = 0, target_rank = 0;  // J stripped
  std::string witness;
};

namespace detail {

using DenseI = std::vector<std::vector<std::int64_t>>;

struct BlockResult {
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> complement;  // block row coordinates
  std::size_t pivots = 0, residual_rank = 0;
  std::string non_unit;  // nonempty when some invariant factor is not a unit
};

/// Unit-pivot elimination of a dense integer block, then SNF of what is left.
inline BlockResult complement_of_image(DenseI m, std::size_t rows, std::size_t cols) {
  BlockResult out;
  std::vector<char> row_done(rows, 0), col_done(cols, 0);
  for (bool found = true; found;) {
    found = false;
    for (std::size_t c = 0; c < cols && !found; ++c) {
      if (col_done[c]) continue;
      for (std::size_t r = 0; r < rows; ++r) {
        if (row_done[r] || (m[r][c] != 1 && m[r][c] != -1)) continue;
        std::int64_t u = m[r][c];
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
          if (r2 == r || m[r2][c] == 0) continue;
          std::int64_t q = m[r2][c] * u;  // u = 1/u
          for (std::size_t j = 0; j < cols; ++j)
            if (m[r][j]) m[r2][j] = checked_sub(m[r2][j], checked_mul(q, m[r][j]));
        }
        row_done[r] = col_done[c] = 1;
        ++out.pivots;
        found = true;
        break;
      }
    }
  }
  std::vector<std::size_t> free_rows, free_cols;
  for (std::size_t r = 0; r < rows; ++r)
    if (!row_done[r]) free_rows.push_back(r);
  for (std::size_t c = 0; c < cols; ++c)
    if (!col_done[c]) free_cols.push_back(c);
  bool residual_zero = true;
  for (auto r : free_rows)
    for (auto c : free_cols)
      if (m[r][c]) residual_zero = false;
  if (residual_zero) {
    for (auto r : free_rows) out.complement.push_back({{r, 1}});
    return out;
  }
  MpzMatrix s(free_rows.size(), std::vector<mpz_class>(free_cols.size()));
  for (std::size_t i = 0; i < free_rows.size(); ++i)
    for (std::size_t j = 0; j < free_cols.size(); ++j) s[i][j] = static_cast<long>(m[free_rows[i]][free_cols[j]]);
  SmithForm snf = smith_normal_form_dense(std::move(s), free_rows.size(), free_cols.size());
  out.residual_rank = snf.rank;
  for (const auto& d : snf.invariant_factors)
    if (abs(d) != 1) {
      out.non_unit = d.get_str();
      return out;
    }
  for (std::size_t k = snf.rank; k < free_rows.size(); ++k) {
    std::vector<std::pair<std::size_t, std::int64_t>> v;
    for (std::size_t i = 0; i < free_rows.size(); ++i)
      if (snf.left[i][k] != 0) {
        if (!snf.left[i][k].fits_slong_p()) throw IntegerOverflow();
        v.emplace_back(free_rows[i], snf.left[i][k].get_si());
      }
    out.complement.push_back(std::move(v));
  }
  return out;
}

/// Runs the per-weight computation for one target A(a,c,d). With canonical_only, only
/// canonical weights are visited and counts are multiplied by the orbit size.
inline TopComplement top_complement_impl(const Params& p, int a, int c, int d, bool canonical_only,
                                         TopMapReport* rep) {
  TopComplement out;
  out.target = SummandId::A(a, c, d);
  SummandTable dst(p, SummandId{Species::M, a, c, d});
  auto groups = group_by_weight(p, dst, canonical_only);
  std::map<WeightKey, std::vector<std::size_t>> src_groups;
  std::optional<SummandTable> src;
  if (d >= 1) {
    src.emplace(p, SummandId{Species::M, a + 1, c + 1, d - 1});
    src_groups = group_by_weight(p, *src, canonical_only);
  }
  std::vector<std::size_t> pos(dst.size());
  LocalTerms terms;
  for (const auto& [w, rows] : groups) {
    for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
    const std::vector<std::size_t>* cols = nullptr;
    if (auto it = src_groups.find(w); it != src_groups.end()) cols = &it->second;
    std::size_t nc = cols ? cols->size() : 0;
    DenseI m(rows.size(), std::vector<std::int64_t>(nc, 0));
    for (std::size_t j = 0; j < nc; ++j) {
      m_down(p, *src, dst, (*cols)[j], terms);
      for (auto [r, v] : terms) m[pos[r]][j] += v;
    }
    BlockResult br = complement_of_image(std::move(m), rows.size(), nc);
    std::uint64_t mult = canonical_only ? orbit_size(w, p) : 1;
    if (rep) {
      ++rep->blocks;
      rep->target_rank += rows.size() * mult;
      rep->image_rank += (br.pivots + br.residual_rank) * mult;
      rep->complement_rank += br.complement.size() * mult;
      if (!br.non_unit.empty() && rep->all_units) {
        rep->all_units = false;
        rep->witness = "invariant factor " + br.non_unit + " in " + out.target.to_string();
      }
    }
    if (!br.non_unit.empty() && !rep)
      throw NonUnitInvariantFactor("invariant factor " + br.non_unit + " in the top strand map into " +
                                   out.target.to_string());
    out.pivots += br.pivots;
    out.residual_rank += br.residual_rank;
    for (auto& v : br.complement) {
      for (auto& [r, x] : v) r = rows[r];
      std::sort(v.begin(), v.end());
      out.vectors.push_back(std::move(v));
    }
  }
  return out;
}

inline std::vector<SummandId> top_targets(const Params& p) {
  std::vector<SummandId> out;
  for (const auto& id : summands_F(p.eg() + 1, p))
    if (id.species == Species::A) out.push_back(id);
  return out;
}

}  // namespace detail

/// Complement to the image of the top strand map into A(a,c,d), a+c+d = eg.
/// Throws NonUnitInvariantFactor when the image is not a direct summand.
inline TopComplement top_complement(const Params& p, const SummandId& target) {
  return detail::top_complement_impl(p, target.a, target.c, target.d, false, nullptr);
}

/// Checks that every top strand map into position eg+1 has unit invariant factors.
/// With use_symmetry only one weight per orbit of the permutation action on E and G
/// is computed (the maps are equivariant, so blocks in one orbit are isomorphic).
inline TopMapReport check_top_maps(const Params& p, bool use_symmetry) {
  TopMapReport rep;
  for (const auto& id : detail::top_targets(p)) {
    ++rep.maps;
    detail::top_complement_impl(p, id.a, id.c, id.d, use_symmetry, &rep);
  }
  return rep;
}

/// Embedding of G_{eg+1} = sum A'(a,c,d) into F_{eg+1}: columns ordered by summand,
/// then complement vector, then J.
inline SparseMatrix<std::int64_t> embedding_G_top(const Params& p, const CoefficientDomain& dom) {
  FreeModuleBasis fb = module_F(p.eg() + 1, p);
  std::vector<Triplet<std::int64_t>> trip;
  int col = 0;
  for (const auto& blk : fb.blocks()) {
    if (blk.id.species != Species::A) continue;
    TopComplement tc = top_complement(p, blk.id);
    std::size_t nj = static_cast<std::size_t>(blk.table->n_j());
    for (const auto& v : tc.vectors)
      for (std::size_t j = 0; j < nj; ++j, ++col)
        for (auto [r, x] : v) trip.push_back({static_cast<int>(blk.offset + r * nj + j), col, x});
  }
  return SparseMatrix<std::int64_t>::from_triplets(static_cast<int>(fb.size()), col, trip, dom);
}

/// The finite complex G over F_p at one specialization: F_0..F_eg, then A' at eg+1.
inline ChainComplexDesc<std::int64_t> build_G(const Params& p, const ScalarData& data) {
  ChainComplexDesc<std::int64_t> g;
  g.params = p;
  g.domain = CoefficientDomain::prime_field(data.p);
  g.truncation = p.eg() + 1;
  ComplexF cx(p, p.eg() + 1);
  for (int i = 0; i <= p.eg() + 1; ++i) g.bases.emplace(i, cx.module(i));
  for (int i = 1; i <= p.eg(); ++i) g.diffs.emplace(i, differential_F(cx, i, data));
  auto w = embedding_G_top(p, g.domain);
  g.diffs.emplace(p.eg() + 1, multiply(differential_F(cx, p.eg() + 1, data), w));
  g.embedding.emplace(p.eg() + 1, std::move(w));
  return g;
}

/// Buchsbaum-Eisenbud rank condition at one specialization: rank d_1 = 1,
/// rank G_i = rank d_i + rank d_{i+1}, and d_{eg+1} injective.
inline bool ranks_additive(const ChainComplexDesc<std::int64_t>& g, std::string* witness = nullptr) {
  std::map<int, std::size_t> rk;
  for (const auto& [i, d] : g.diffs) rk[i] = rank_over(d, g.domain);
  if (rk[1] != 1) {
    if (witness) *witness = "rank d_1 = " + std::to_string(rk[1]);
    return false;
  }
  for (int i = 1; i <= g.truncation; ++i) {
    std::size_t want = g.rank_at(i), got = rk[i] + (rk.count(i + 1) ? rk[i + 1] : 0);
    if (want != got) {
      if (witness)
        *witness = "position " + std::to_string(i) + ": rank " + std::to_string(want) + ", maps " +
                   std::to_string(got);
      return false;
    }
  }
  return true;
}

}  // namespace unires
