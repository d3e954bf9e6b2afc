#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "unires/complex/fiber_maps.hpp"
#include "unires/linalg/rank.hpp"

namespace unires {

// Fiber strands over a field: N(P,Q) (Koszul complexes on the identity of E0* (x) G0),
// M(P,Q) (their duals) and the augmented M~(P,P-g) ending in B0(P). Every map preserves
// the torus weight, so homology is computed one weight block at a time; with
// use_symmetry only one weight per orbit of S_e x S_g is visited.

enum class FiberKind { N, M, Mtilde };

inline const char* fiber_kind_name(FiberKind k) {
  switch (k) {
    case FiberKind::N: return "N";
    case FiberKind::M: return "M";
    case FiberKind::Mtilde: return "M~";
  }
  return "?";
}

struct FiberStrand {
  FiberKind kind = FiberKind::N;
  Params params;
  CoefficientDomain field = CoefficientDomain::rationals();
  int P = 0, Q = 0;
  std::vector<SummandId> terms;  // in arrow order: terms[k] -> terms[k+1]

  /// Multiplicity of the wedge^{P-Q+e} F0* factor in F (x) K.
  std::uint64_t multiplicity() const {
    if (kind == FiberKind::Mtilde) return 1;
    int b = P - Q + params.e;
    return (b < 0 || b > params.f()) ? 0 : binomial(params.f(), b);
  }
  /// Homological position of a term inside F (x) K.
  int position(const SummandId& t) const { return t.species == Species::B0 ? t.d : t.a + t.c + t.d + 1; }
};

inline FiberStrand fiber_strand(int P, int Q, const Params& p, const CoefficientDomain& field, FiberKind kind) {
  if (!field.is_field()) throw DomainError("fiber strands need a field");
  FiberStrand s;
  s.kind = kind;
  s.params = p;
  s.field = field;
  s.P = P;
  s.Q = Q;
  if (kind == FiberKind::Mtilde && P != Q + p.g) throw std::invalid_argument("M~(P,Q) needs P = Q + g");
  Species sp = kind == FiberKind::N ? Species::N : Species::M;
  std::vector<SummandId> ts;
  for (int d = 0; d <= p.eg(); ++d) {
    SummandId id{sp, P - d, Q - d, d};
    if (id.a >= 0 && id.c >= 0) ts.push_back(id);
  }
  if (kind == FiberKind::N) std::reverse(ts.begin(), ts.end());  // N(a,c,d) -> N(a+1,c+1,d-1)
  if (kind == FiberKind::Mtilde && P >= 0 && P <= p.eg()) ts.push_back(SummandId{Species::B0, 0, 0, P});
  s.terms = std::move(ts);
  return s;
}

struct StrandHomology {
  std::vector<std::uint64_t> term_dims;
  std::vector<std::uint64_t> homology_dims;
  std::size_t blocks = 0;
};

inline std::uint64_t term_dim(const SummandId& t, const Params& p) {
  if (t.species == Species::B0) return binomial(p.eg(), t.d);
  return divided_rank(p.e, t.a) * divided_rank(p.g, t.c) * binomial(p.eg(), t.d);
}

namespace detail {

/// Rank over a field of a small integer block given as (row, col, value) triples.
inline std::size_t block_rank(const std::vector<std::tuple<int, int, int>>& trip, int rows, int cols,
                              const CoefficientDomain& k) {
  if (trip.empty() || rows == 0 || cols == 0) return 0;
  if (k.kind() == DomainKind::prime_field) {
    const std::uint32_t p = k.characteristic();
    std::vector<ModRow> r(static_cast<std::size_t>(rows));
    for (auto [i, j, v] : trip) {
      std::int64_t m = v % static_cast<std::int64_t>(p);
      if (m < 0) m += p;
      if (m) r[i].emplace_back(j, static_cast<std::uint32_t>(m));
    }
    for (auto& row : r) std::sort(row.begin(), row.end());
    return rank_mod_p(std::move(r), cols, p);
  }
  std::vector<std::vector<std::pair<int, std::int64_t>>> r(static_cast<std::size_t>(rows));
  for (auto [i, j, v] : trip) r[i].emplace_back(j, v);
  for (auto& row : r) std::sort(row.begin(), row.end());
  return rank_rational_rows(r, cols);
}

inline void apply_map(const FiberStrand& s, const SummandTable& src, const SummandTable& dst, std::size_t col,
                      LocalTerms& out) {
  if (dst.id().species == Species::B0) gamma_map(s.params, src, dst, col, out);
  else if (s.kind == FiberKind::N) n_up(s.params, src, dst, col, out);
  else m_down(s.params, src, dst, col, out);
}

}  // namespace detail

/// Homology dimension at every term of a fiber strand.
inline StrandHomology strand_homology(const FiberStrand& s, bool use_symmetry = true) {
  StrandHomology out;
  const Params& p = s.params;
  const std::size_t n = s.terms.size();
  out.term_dims.resize(n);
  out.homology_dims.assign(n, 0);
  if (n == 0) return out;
  std::vector<std::shared_ptr<const SummandTable>> tables;
  std::vector<std::map<WeightKey, std::vector<std::size_t>>> groups;
  std::set<WeightKey> weights;
  for (const auto& t : s.terms) {
    tables.push_back(summand_table(p, t));
    groups.push_back(group_by_weight(p, *tables.back(), use_symmetry));
    for (const auto& [w, v] : groups.back()) weights.insert(w);
    out.term_dims[tables.size() - 1] = tables.back()->size();
  }
  std::vector<std::vector<int>> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[k].assign(tables[k]->size(), -1);
  LocalTerms terms;
  std::vector<std::tuple<int, int, int>> trip;
  static const std::vector<std::size_t> kEmpty;
  for (const auto& w : weights) {
    ++out.blocks;
    const std::uint64_t mult = use_symmetry ? orbit_size(w, p) : 1;
    std::vector<const std::vector<std::size_t>*> loc(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto it = groups[k].find(w);
      loc[k] = it == groups[k].end() ? &kEmpty : &it->second;
      for (std::size_t i = 0; i < loc[k]->size(); ++i) pos[k][(*loc[k])[i]] = static_cast<int>(i);
    }
    // rank of terms[k] -> terms[k+1]
    std::vector<std::size_t> rk(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (loc[k]->empty() || loc[k + 1]->empty()) continue;
      trip.clear();
      for (std::size_t j = 0; j < loc[k]->size(); ++j) {
        detail::apply_map(s, *tables[k], *tables[k + 1], (*loc[k])[j], terms);
        for (auto [r, v] : terms) {
          int row = pos[k + 1][r];
          if (row < 0) throw std::logic_error("fiber map leaves its weight block");
          trip.emplace_back(row, static_cast<int>(j), v);
        }
      }
      rk[k] = detail::block_rank(trip, static_cast<int>(loc[k + 1]->size()), static_cast<int>(loc[k]->size()),
                                 s.field);
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t h = loc[k]->size() - rk[k] - (k ? rk[k - 1] : 0);
      out.homology_dims[k] += h * mult;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (auto l : *loc[k]) pos[k][l] = -1;
  }
  return out;
}

/// Process-wide cache of strand homology keyed by (kind, e, g, field, P, Q).
class StrandCache {
 public:
  static StrandCache& instance() {
    static StrandCache c;
    return c;
  }
  StrandHomology get(const FiberStrand& s) {
    Key k{static_cast<int>(s.kind), s.params.e, s.params.g, s.field.to_string(), s.P, s.Q};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(k);
      if (it != cache_.end()) return it->second;
    }
    StrandHomology h = strand_homology(s);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(k, std::move(h)).first->second;
  }
  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.clear();
  }

 private:
  using Key = std::tuple<int, int, int, std::string, int, int>;
  std::mutex mu_;
  std::map<Key, StrandHomology> cache_;
};

inline StrandHomology cached_homology(int P, int Q, const Params& p, const CoefficientDomain& k, FiberKind kind) {
  return StrandCache::instance().get(fiber_strand(P, Q, p, k, kind));
}

/// Homology of the N-strand at N(a,c,d); zero if a or c is negative or d outside [0, eg].
inline std::uint64_t H_N(int a, int c, int d, const Params& p, const CoefficientDomain& k) {
  if (a < 0 || c < 0 || d < 0 || d > p.eg()) return 0;
  FiberStrand s = fiber_strand(a + d, c + d, p, k, FiberKind::N);
  auto h = StrandCache::instance().get(s);
  for (std::size_t i = 0; i < s.terms.size(); ++i)
    if (s.terms[i].d == d) return h.homology_dims[i];
  return 0;
}

/// Cohomology of the M-strand at M(a,c,d), computed from the dual maps.
inline std::uint64_t H_M(int a, int c, int d, const Params& p, const CoefficientDomain& k) {
  if (a < 0 || c < 0 || d < 0 || d > p.eg()) return 0;
  FiberStrand s = fiber_strand(a + d, c + d, p, k, FiberKind::M);
  auto h = StrandCache::instance().get(s);
  for (std::size_t i = 0; i < s.terms.size(); ++i)
    if (s.terms[i].d == d) return h.homology_dims[i];
  return 0;
}

inline nlohmann::ordered_json strand_report(const FiberStrand& s, const StrandHomology& h) {
  nlohmann::ordered_json j;
  j["kind"] = fiber_kind_name(s.kind);
  j["P"] = s.P;
  j["Q"] = s.Q;
  j["field"] = s.field.to_string();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms) terms.push_back(t.to_string());
  j["terms"] = terms;
  j["term_dims"] = h.term_dims;
  j["homology_dims"] = h.homology_dims;
  return j;
}

}  // namespace unires
