#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "unires/tor/fiber.hpp"

namespace unires {

struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

inline int alpha(const Params& p) { return (p.e - 1) * (p.g - 1); }

/// dim Tor_{p,q}(M_l, K) = H_N(l+q-p, q-p, p).
inline std::uint64_t tor_dim(int p, int q, int l, const Params& pr, const CoefficientDomain& k) {
  return H_N(l + q - p, q - p, p, pr, k);
}

/// dim Bbar_0(i) = C(eg,i) - dim H_M(g,0,i-g), from the left end of the short exact sequence.
inline std::uint64_t bbar_dim(int i, const Params& p, const CoefficientDomain& k) {
  if (i < 0 || i > p.eg()) return 0;
  return binomial(p.eg(), i) - H_M(p.g, 0, i - p.g, p, k);
}

/// The same dimension read off the right end: H_N(0,e,eg-e-i).
inline std::uint64_t bbar_dim_via_N(int i, const Params& p, const CoefficientDomain& k) {
  return H_N(0, p.e, p.eg() - p.e - i, p, k);
}

/// The same dimension as the homology of M~(i, i-g) at B0(i).
inline std::uint64_t bbar_dim_via_augmented(int i, const Params& p, const CoefficientDomain& k) {
  if (i < 0 || i > p.eg()) return 0;
  auto s = fiber_strand(i, i - p.g, p, k, FiberKind::Mtilde);
  return StrandCache::instance().get(s).homology_dims.back();
}

/// Closed form for e = 2 and l >= -1 from the Eagon-Northcott and Buchsbaum-Rim complexes.
inline std::uint64_t eagon_northcott_dim(int p, int q, int l, const Params& pr) {
  if (pr.e != 2) throw OutOfRange("eagon_northcott_dim needs e = 2");
  if (l < -1) throw OutOfRange("eagon_northcott_dim needs l >= -1");
  if (p < 0) return 0;
  if (q == p && p <= l) return divided_rank(2, l - p) * binomial(pr.g, p);
  if (q == p + 1 && l + 1 <= p) return divided_rank(2, p - l - 1) * binomial(pr.g, p + 1);
  return 0;
}

struct CheckReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      passed = false;
      if (violations.size() < 20) violations.push_back(what);
    }
  }
  std::string summary() const { return violations.empty() ? std::string() : violations.front(); }
};

/// Tor_{p,q}(M_l) against H_N(g-1-(q-p+l), e-1-(q-p), alpha-p) for 1-e <= l <= g-1.
inline CheckReport duality_check(const Params& pr, const CoefficientDomain& k) {
  CheckReport rep;
  const int al = alpha(pr);
  for (int l = 1 - pr.e; l <= pr.g - 1; ++l)
    for (int p = 0; p <= al; ++p)
      for (int q = p; q <= p + pr.e + pr.g; ++q) {
        std::uint64_t lhs = tor_dim(p, q, l, pr, k);
        std::uint64_t rhs = H_N(pr.g - 1 - (q - p + l), pr.e - 1 - (q - p), al - p, pr, k);
        rep.expect(lhs == rhs, "Tor_{" + std::to_string(p) + "," + std::to_string(q) + "}(M_" + std::to_string(l) +
                                   ") = " + std::to_string(lhs) + " but dual side = " + std::to_string(rhs));
      }
  return rep;
}

/// |Euler characteristic| of M(P,Q) from term dimensions alone.
inline std::uint64_t euler_abs(int P, int Q, const Params& pr) {
  auto s = fiber_strand(P, Q, pr, CoefficientDomain::rationals(), FiberKind::M);
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    auto d = static_cast<std::int64_t>(term_dim(s.terms[i], pr));
    chi += (i % 2 == 0) ? d : -d;
  }
  return static_cast<std::uint64_t>(std::llabs(chi));
}

/// Homology patterns of the strands of F (x) K, window P, Q <= max_pq:
/// (a) zero homology when 1-e <= P-Q <= g-1 and (Q >= eg-g+1 or P >= eg-e+1);
/// (b) Q = P+e: homology only at M(0,e,P), zero once P >= eg-e+1;
/// (c) P = Q+g: homology only at B0(P), zero once P >= eg-e+1;
/// (d) the truncation ending at M(a,c,d) has homology only there when
///     1-e <= a-c <= g-1 and (a >= g-1 or c >= e-1).
/// Also Bbar_0(i) = 0 for i > eg-e.
inline CheckReport strand_pattern_check(const Params& pr, const CoefficientDomain& k, int max_pq = -1) {
  CheckReport rep;
  const int e = pr.e, g = pr.g, eg = pr.eg();
  if (max_pq < 0) max_pq = eg + 1;
  auto where = [](int P, int Q) { return "S(" + std::to_string(P) + "," + std::to_string(Q) + ")"; };
  for (int P = 0; P <= max_pq; ++P)
    for (int Q = std::max(0, P - g); Q <= std::min(max_pq, P + e); ++Q) {
      const int diff = P - Q;
      const bool tilde = diff == g;
      auto s = fiber_strand(P, Q, pr, k, tilde ? FiberKind::Mtilde : FiberKind::M);
      auto h = StrandCache::instance().get(s);
      const std::size_t n = s.terms.size();
      if (1 - e <= diff && diff <= g - 1 && (Q >= eg - g + 1 || P >= eg - e + 1)) {
        for (std::size_t i = 0; i < n; ++i)
          rep.expect(h.homology_dims[i] == 0, "(a) " + where(P, Q) + " has homology at " + s.terms[i].to_string());
      }
      if (Q == P + e) {
        for (std::size_t i = 0; i < n; ++i) {
          bool end = s.terms[i] == SummandId{Species::M, 0, e, P};
          rep.expect(end || h.homology_dims[i] == 0, "(b) " + where(P, Q) + " has homology at " + s.terms[i].to_string());
          if (end && P >= eg - e + 1) rep.expect(h.homology_dims[i] == 0, "(b) " + where(P, Q) + " end not zero");
        }
      }
      if (tilde) {
        for (std::size_t i = 0; i < n; ++i) {
          bool at_b = s.terms[i].species == Species::B0;
          rep.expect(at_b || h.homology_dims[i] == 0, "(c) " + where(P, Q) + " has homology at " + s.terms[i].to_string());
          if (at_b && P >= eg - e + 1) rep.expect(h.homology_dims[i] == 0, "(c) " + where(P, Q) + " Bbar not zero");
        }
      }
      // (d): every truncation M(P,Q,0) -> ... -> M(a,c,d) of this strand
      if (!tilde)
        for (std::size_t i = 0; i < n; ++i) {
          const SummandId& t = s.terms[i];
          int a = t.a, c = t.c;
          if (!(1 - e <= a - c && a - c <= g - 1 && (a >= g - 1 || c >= e - 1))) continue;
          for (std::size_t j = 0; j < i; ++j)
            rep.expect(h.homology_dims[j] == 0, "(d) truncation at " + t.to_string() + " has homology at " +
                                                    s.terms[j].to_string());
        }
    }
  for (int i = eg - e + 1; i <= eg; ++i)
    rep.expect(bbar_dim(i, pr, k) == 0, "Bbar_0(" + std::to_string(i) + ") is not zero");
  return rep;
}

/// dim H_M(g,0,i-g) + dim H_N(0,e,eg-e-i) = C(eg,i) for 0 <= i <= eg.
inline CheckReport check_bbar_split(const Params& pr, const CoefficientDomain& k) {
  CheckReport rep;
  for (int i = 0; i <= pr.eg(); ++i) {
    std::uint64_t m = H_M(pr.g, 0, i - pr.g, pr, k), n = H_N(0, pr.e, pr.eg() - pr.e - i, pr, k);
    rep.expect(m + n == binomial(pr.eg(), i), "i = " + std::to_string(i) + ": " + std::to_string(m) + " + " +
                                                  std::to_string(n) + " != C(eg,i)");
  }
  return rep;
}

/// For p + p' = alpha - 1: dim Bbar_0(g+p') from the Euler characteristic of the exact
/// N-side sequence equals that of the exact M-side sequence, and both equal the computed
/// homology (Tor_{p,p+e}(M_{-e}) and the cokernel of gamma).
inline CheckReport check_bbar_routes(const Params& pr, const CoefficientDomain& k) {
  CheckReport rep;
  const int e = pr.e, g = pr.g;
  for (int p = 0; p <= alpha(pr) - 1; ++p) {
    int pp = alpha(pr) - 1 - p;
    // 0 -> Tor -> N(0,e,p) -> ... -> N(p,p+e,0) -> 0
    std::int64_t n_side = 0;
    for (int j = 0; j <= p; ++j)
      n_side += (j % 2 ? -1 : 1) * static_cast<std::int64_t>(term_dim(SummandId{Species::N, j, e + j, p - j}, pr));
    // 0 -> M(g+p',p',0) -> ... -> M(g,0,p') -> B0(g+p') -> Bbar -> 0
    std::int64_t m_side = static_cast<std::int64_t>(binomial(pr.eg(), g + pp));
    for (int j = 0; j <= pp; ++j)
      m_side += (j % 2 ? 1 : -1) * static_cast<std::int64_t>(term_dim(SummandId{Species::M, g + j, j, pp - j}, pr));
    auto tag = "p = " + std::to_string(p) + ", p' = " + std::to_string(pp) + ": ";
    rep.expect(n_side == m_side, tag + "N side " + std::to_string(n_side) + ", M side " + std::to_string(m_side));
    rep.expect(static_cast<std::int64_t>(tor_dim(p, p + e, -e, pr, k)) == n_side, tag + "Tor differs from N side");
    rep.expect(static_cast<std::int64_t>(bbar_dim(g + pp, pr, k)) == m_side, tag + "Bbar differs from M side");
  }
  return rep;
}

/// Tor_{3,5}(M_0, K) for e = g = 5, the case where characteristic dependence is known to occur.
struct CharacteristicProbe {
  std::vector<std::pair<std::string, std::uint64_t>> dims;  // field -> dim
  bool differs = false;                                     // some prime differs from Q
};

inline CharacteristicProbe characteristic_probe(const std::vector<CoefficientDomain>& fields) {
  CharacteristicProbe out;
  Params pr(5, 5);
  std::uint64_t q_value = 0;
  bool have_q = false;
  for (const auto& k : fields) {
    std::uint64_t d = tor_dim(3, 5, 0, pr, k);
    out.dims.emplace_back(k.to_string(), d);
    if (k.kind() == DomainKind::rationals) {
      q_value = d;
      have_q = true;
    }
  }
  if (have_q)
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (fields[i].kind() == DomainKind::prime_field && out.dims[i].second != q_value) out.differs = true;
  return out;
}

}  // namespace unires
