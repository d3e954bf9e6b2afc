#pragma once

#include <compare>
#include <string>
#include <vector>

#include "unires/complex/chain_desc.hpp"
#include "unires/complex/differential.hpp"

namespace unires {

struct StrandId {
  int P = 0, Q = 0;
  bool operator==(const StrandId&) const = default;
  /// Inverse lexicographic order: compare Q first, then P.
  bool inv_lex_le(const StrandId& o) const { return Q < o.Q || (Q == o.Q && P <= o.P); }
};

inline StrandId strand_of(const SummandId& s, const Params& p) {
  if (s.species == Species::B) return {s.d, s.d - p.g};
  return {s.a + s.d, s.c + s.d};
}

/// Summands of S(P,Q) from A(P,Q,0) down to A(P-eg,Q-eg,eg), then B(P) when Q = P-g.
inline std::vector<SummandId> strand_modules(int P, int Q, const Params& p) {
  std::vector<SummandId> out;
  for (int d = 0; d <= p.eg(); ++d) {
    SummandId id = SummandId::A(P - d, Q - d, d);
    if (id.valid(p)) out.push_back(id);
  }
  if (Q == P - p.g && P >= 0 && P <= p.eg()) out.push_back(SummandId::B(P));
  return out;
}

/// Layout of a strand by homological position (one summand per occupied position).
inline std::vector<std::vector<SummandId>> strand_layout(int P, int Q, const Params& p) {
  auto mods = strand_modules(P, Q, p);
  int top = 0;
  for (const auto& m : mods) top = std::max(top, m.position());
  std::vector<std::vector<SummandId>> layout(static_cast<std::size_t>(top) + 1);
  for (const auto& m : mods) layout[m.position()].push_back(m);
  return layout;
}

/// The homogeneous part of d on S(P,Q) over Z (its entries are integers).
inline ChainComplexDesc<std::int64_t> homogeneous_part(int P, int Q, const Params& p) {
  ChainComplexDesc<std::int64_t> c;
  c.params = p;
  auto layout = strand_layout(P, Q, p);
  ComplexF cx(p, layout);
  c.truncation = cx.max_position();
  for (int i = 0; i <= cx.max_position(); ++i)
    if (cx.module(i).size()) c.bases.emplace(i, cx.module(i));
  for (int i = 1; i <= cx.max_position(); ++i)
    if (cx.module(i).size() && cx.module(i - 1).size()) c.diffs.emplace(i, constant_part_F(cx, i));
  return c;
}

/// proj o d o incl on S(P,Q) over the generic ring; equals the constant part exactly.
inline ChainComplexDesc<Polynomial> homogeneous_part_symbolic(int P, int Q, const Params& p) {
  ChainComplexDesc<Polynomial> c;
  c.params = p;
  auto layout = strand_layout(P, Q, p);
  ComplexF cx(p, layout);
  auto data = make_generic(p);
  c.truncation = cx.max_position();
  for (int i = 0; i <= cx.max_position(); ++i)
    if (cx.module(i).size()) c.bases.emplace(i, cx.module(i));
  for (int i = 1; i <= cx.max_position(); ++i)
    if (cx.module(i).size() && cx.module(i - 1).size()) c.diffs.emplace(i, differential_F(cx, i, data));
  return c;
}

/// Strands that can be nonzero with P <= max_P: 0 <= P and -g <= Q-P <= e.
inline std::vector<StrandId> strands_up_to(int max_P, const Params& p) {
  std::vector<StrandId> out;
  for (int P = 0; P <= max_P; ++P)
    for (int Q = P - p.g; Q <= P + p.e; ++Q)
      if (Q >= 0 || Q == P - p.g) out.push_back({P, Q});
  return out;
}

struct GradingReport {
  bool passed = true;
  std::size_t terms_checked = 0;
  std::string witness;
};

/// Bidegree of an atom as a polynomial.
inline ABidegree atom_bidegree(const Atom& a, const Params& p) {
  switch (a.kind) {
    case AtomKind::One: return {0, 0};
    case AtomKind::V: return {1, 0};
    case AtomKind::X: return {0, 1};
    case AtomKind::XV: return {1, 1};
    case AtomKind::MinorX: return {0, popcount(a.m1)};
    case AtomKind::BMinorV: return {popcount(a.m1) - p.e, p.g};
  }
  return {};
}

/// Every term of d_i, 1 <= i <= max_position, has bidegree (target twist) - (source twist),
/// and lands in a strand that is <= the source strand in the inverse lexicographic order.
inline GradingReport check_grading_and_strands(const ComplexF& cx, int max_position) {
  GradingReport rep;
  const Params& p = cx.params();
  std::vector<DiffTerm> terms;
  for (int i = 1; i <= max_position; ++i) {
    const auto& src = cx.module(i);
    const auto& dst = cx.module(i - 1);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const SummandId& sid = src.blocks()[src.block_of(col)].id;
      cx.emit(i, col, terms);
      for (const auto& t : terms) {
        ++rep.terms_checked;
        const SummandId& tid = dst.blocks()[dst.block_of(t.row)].id;
        ABidegree want = tid.twist(p) - sid.twist(p);
        bool ok_deg = atom_bidegree(t.atom, p) == want;
        bool ok_strand = strand_of(tid, p).inv_lex_le(strand_of(sid, p));
        if (!(ok_deg && ok_strand)) {
          rep.passed = false;
          rep.witness = std::string(ok_deg ? "strand order" : "bidegree") + " violated by d_" + std::to_string(i) +
                        " from " + src.label(col) + " to " + dst.label(t.row);
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace unires
