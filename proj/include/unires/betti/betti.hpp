#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "unires/complex/build_g.hpp"
#include "unires/tor/tor.hpp"
#include "unires/util/parallel.hpp"

namespace unires {

struct BettiEntry {
  int i = 0;
  int t1 = 0, t2 = 0;
  std::uint64_t rank = 0;
  std::string source;  // "Bbar", "Tor(p,q,l)" or "fiber"

  auto key() const { return std::tuple(i, t1, t2); }
};

/// (i, twist) -> total rank.
using GradedRanks = std::map<std::tuple<int, int, int>, std::uint64_t>;

struct BettiTable {
  Params params;
  CoefficientDomain field = CoefficientDomain::rationals();
  std::vector<BettiEntry> entries;  // sorted by (i, twist), zero ranks dropped

  void normalize() {
    entries.erase(std::remove_if(entries.begin(), entries.end(), [](const BettiEntry& e) { return e.rank == 0; }),
                  entries.end());
    std::stable_sort(entries.begin(), entries.end(),
                     [](const BettiEntry& a, const BettiEntry& b) { return a.key() < b.key(); });
  }
  GradedRanks graded() const {
    GradedRanks out;
    for (const auto& e : entries) out[e.key()] += e.rank;
    return out;
  }
  std::map<int, std::uint64_t> totals() const {
    std::map<int, std::uint64_t> out;
    for (const auto& e : entries) out[e.i] += e.rank;
    return out;
  }
  int length() const { return entries.empty() ? -1 : entries.back().i; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["e"] = params.e;
    j["g"] = params.g;
    j["field"] = field.to_string();
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries)
      j["entries"].push_back({{"i", e.i}, {"twist", {e.t1, e.t2}}, {"rank", e.rank}, {"source", e.source}});
    return j;
  }
  std::string to_csv() const {
    std::ostringstream os;
    os << "i,twist1,twist2,rank,source\n";
    for (const auto& e : entries) os << e.i << ',' << e.t1 << ',' << e.t2 << ',' << e.rank << ',' << e.source << '\n';
    return os.str();
  }
  /// Rows "i: rank@[t1,t2] ...", one per homological index.
  std::string to_text() const {
    std::ostringstream os;
    int cur = -1;
    for (const auto& e : entries) {
      if (e.i != cur) {
        if (cur >= 0) os << '\n';
        os << e.i << ':';
        cur = e.i;
      }
      os << ' ' << e.rank << "@[" << e.t1 << ',' << e.t2 << ']';
    }
    if (cur >= 0) os << '\n';
    return os.str();
  }
};

/// The table from the three branches: Bbar_0(i) at [-i,-i] for i <= eg-e; Tor_{p,q}(M_l)
/// (x) wedge^{l+e} F0* at i = l+2q-p+1, twist [-l-q, -g-q] for 1-e <= l <= g-1; and the
/// l = -e branch Tor_{i-e-1,i-1}(M_{-e}) at [e+1-i, 1-i-g] for i <= eg+1.
inline BettiTable betti_table(const Params& pr, const CoefficientDomain& k) {
  BettiTable t;
  t.params = pr;
  t.field = k;
  const int e = pr.e, g = pr.g, f = pr.f(), eg = pr.eg(), al = alpha(pr);
  for (int i = 0; i <= eg - e; ++i) t.entries.push_back({i, -i, -i, bbar_dim(i, pr, k), "Bbar"});
  auto tor_tag = [](int p, int q, int l) {
    return "Tor(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(l) + ")";
  };
  for (int l = 1 - e; l <= g - 1; ++l)
    for (int p = 0; p <= al; ++p)
      for (int q = p + std::max(-l, 0); q <= p + std::min(g - 1 - l, e - 1); ++q) {
        std::uint64_t r = tor_dim(p, q, l, pr, k) * binomial(f, l + e);
        t.entries.push_back({l + 2 * q - p + 1, -l - q, -g - q, r, tor_tag(p, q, l)});
      }
  for (int i = e + 1; i <= eg + 1; ++i)
    t.entries.push_back({i, e + 1 - i, 1 - i - g, tor_dim(i - e - 1, i - 1, -e, pr, k), tor_tag(i - e - 1, i - 1, -e)});
  t.normalize();
  return t;
}

/// Independent assembly: homology of every fiber strand M(P,Q) (x) wedge^{P-Q+e} F0* and
/// M~(P,P-g), bucketed by position and twist [-P, -g-Q]. Strands with P, Q <= max_pq are
/// visited (default eg+1: a strand with max(P,Q) = eg+1 sits in positions >= eg+2).
inline BettiTable betti_from_fiber(const Params& pr, const CoefficientDomain& k, int max_pq = -1) {
  if (max_pq < 0) max_pq = pr.eg() + 1;
  std::vector<std::pair<int, int>> strands;
  for (int P = 0; P <= max_pq; ++P)
    for (int Q = P - pr.g; Q <= std::min(P + pr.e, max_pq); ++Q)
      if (Q >= 0 || Q == P - pr.g) strands.emplace_back(P, Q);
  std::vector<std::vector<BettiEntry>> found(strands.size());
  parallel_for(strands.size(), [&](std::size_t n) {
    auto [P, Q] = strands[n];
    bool tilde = P - Q == pr.g;
    auto s = fiber_strand(P, Q, pr, k, tilde ? FiberKind::Mtilde : FiberKind::M);
    auto h = strand_homology(s);
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      std::uint64_t r = h.homology_dims[i] * s.multiplicity();
      if (r) found[n].push_back({s.position(s.terms[i]), -P, -pr.g - Q, r, "fiber"});
    }
  });
  BettiTable t;
  t.params = pr;
  t.field = k;
  for (auto& v : found)
    for (auto& e : v) t.entries.push_back(e);
  // merge equal (i, twist) coming from different strands
  t.normalize();
  std::vector<BettiEntry> merged;
  for (const auto& e : t.entries) {
    if (!merged.empty() && merged.back().key() == e.key()) merged.back().rank += e.rank;
    else merged.push_back(e);
  }
  t.entries = std::move(merged);
  return t;
}

/// Graded Euler characteristic of G: twist -> sum_i (-1)^i #{generators of G_i}.
inline std::map<std::pair<int, int>, std::int64_t> graded_euler_G(const Params& p) {
  std::map<std::pair<int, int>, std::int64_t> out;
  for (int i = 0; i <= p.eg(); ++i)
    for (const auto& id : summands_F(i, p)) {
      ABidegree tw = id.twist(p);
      out[{tw.s, tw.t}] += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(id.rank(p));
    }
  const int top = p.eg() + 1;
  for (const auto& id : summands_F(top, p)) {
    if (id.species != Species::A) continue;
    auto tc = top_complement(p, id);
    ABidegree tw = id.twist(p);
    out[{tw.s, tw.t}] += (top % 2 ? -1 : 1) * static_cast<std::int64_t>(tc.vectors.size() * binomial(p.f(), id.b(p)));
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline std::map<std::pair<int, int>, std::int64_t> graded_euler(const BettiTable& t) {
  std::map<std::pair<int, int>, std::int64_t> out;
  for (const auto& e : t.entries) out[{e.t1, e.t2}] += (e.i % 2 ? -1 : 1) * static_cast<std::int64_t>(e.rank);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// ---------------------------------------------------------------------------
// reference tables

struct Mismatch : std::runtime_error {
  std::vector<std::string> differences;
  explicit Mismatch(std::vector<std::string> diffs)
      : std::runtime_error("Betti table differs from the reference: " + (diffs.empty() ? std::string() : diffs.front())),
        differences(std::move(diffs)) {}
};

/// Reference for e = g = 2 (the complete resolution), as JSON.
inline constexpr const char* kReferenceE2G2 = R"json({
  "e": 2, "g": 2,
  "entries": [
    {"i": 0, "twist": [0, 0], "rank": 1, "module": "Bbar0(0)"},
    {"i": 1, "twist": [-1, -1], "rank": 4, "module": "Bbar0(1)"},
    {"i": 1, "twist": [0, -2], "rank": 6, "module": "T(0,0,0)"},
    {"i": 2, "twist": [-2, -2], "rank": 3, "module": "Bbar0(2)"},
    {"i": 2, "twist": [-1, -2], "rank": 8, "module": "T(0,0,1)"},
    {"i": 2, "twist": [0, -3], "rank": 8, "module": "T(0,1,-1)"},
    {"i": 3, "twist": [-2, -3], "rank": 8, "module": "T(1,1,1)"},
    {"i": 3, "twist": [-1, -4], "rank": 8, "module": "T(1,2,-1)"},
    {"i": 3, "twist": [0, -4], "rank": 3, "module": "T(0,2,-2)"},
    {"i": 4, "twist": [-2, -4], "rank": 6, "module": "T(1,2,0)"},
    {"i": 4, "twist": [-1, -5], "rank": 4, "module": "T(1,3,-2)"},
    {"i": 5, "twist": [-2, -6], "rank": 1, "module": "T(2,4,-2)"}
  ]
})json";

/// A reference covers some homological indices completely.
struct BettiReference {
  std::vector<int> indices;  // indices whose entries are fully listed
  GradedRanks ranks;
};

inline BettiReference parse_reference(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  BettiReference r;
  for (const auto& e : j.at("entries")) {
    int i = e.at("i");
    r.ranks[{i, e.at("twist")[0].get<int>(), e.at("twist")[1].get<int>()}] += e.at("rank").get<std::uint64_t>();
    if (std::find(r.indices.begin(), r.indices.end(), i) == r.indices.end()) r.indices.push_back(i);
  }
  return r;
}

/// The beginning (i <= 3) and end (i >= eg-2) of the table for e, g >= 3, with
/// dim Bbar_0(3) and |M(2,1)|, |M(1,2)| instantiated by computation.
inline BettiReference generic_reference(const Params& pr, const CoefficientDomain& k) {
  if (pr.e < 3 || pr.g < 3) throw OutOfRange("the generic beginning and end tables need e, g >= 3");
  const std::int64_t e = pr.e, g = pr.g, f = pr.f(), eg = pr.eg();
  auto C = [](std::int64_t n, std::int64_t r) { return binomial(n, r); };
  const std::uint64_t b3 = bbar_dim(3, pr, k), m21 = euler_abs(2, 1, pr), m12 = euler_abs(1, 2, pr);
  BettiReference r;
  auto add = [&](int i, std::int64_t t1, std::int64_t t2, std::uint64_t rank) {
    r.ranks[{i, static_cast<int>(t1), static_cast<int>(t2)}] += rank;
    if (std::find(r.indices.begin(), r.indices.end(), i) == r.indices.end()) r.indices.push_back(i);
  };
  add(0, 0, 0, 1);
  add(1, -1, -1, eg);
  add(1, 0, -g, C(f, e));
  add(2, -2, -2, C(eg, 2));
  add(2, -1, -g, e * C(f, e + 1));
  add(2, 0, -(g + 1), g * C(f, e - 1));
  add(3, -3, -3, b3);
  add(3, -2, -g, C(e + 1, 2) * C(f, e + 2));
  add(3, -2, -(g + 1), m21 * C(f, e + 1));
  add(3, 0, -(g + 2), C(f, e - 2) * C(g + 1, 2));
  add(3, -1, -(g + 2), m12 * C(f, e - 1));
  const int n = static_cast<int>(eg);
  add(n + 1, -(eg - e), -(eg + g), 1);
  add(n, -(eg - e - 1), -(eg + g - 1), eg);
  add(n, -(eg - e), -eg, C(f, e));
  add(n - 1, -(eg - e - 2), -(eg + g - 2), C(eg, 2));
  add(n - 1, -(eg - e - 1), -eg, e * C(f, e + 1));
  add(n - 1, -(eg - e), -(eg - 1), g * C(f, e - 1));
  add(n - 2, -(eg - e - 3), -(eg + g - 3), b3);
  add(n - 2, -(eg - e - 2), -eg, C(e + 1, 2) * C(f, e + 2));
  add(n - 2, -(eg - e - 2), -(eg - 1), m21 * C(f, e + 1));
  add(n - 2, -(eg - e), -(eg - 2), C(f, e - 2) * C(g + 1, 2));
  add(n - 2, -(eg - e - 1), -(eg - 2), m12 * C(f, e - 1));
  return r;
}

/// The reference available for (e,g): the full table for e = g = 2, the generic tables for
/// e, g >= 3, and for other shapes the first index (eg at [-1,-1] when Bbar_0(1) survives,
/// i.e. eg-e >= 1, and C(f,e) at [0,-g]).
inline BettiReference reference_for(const Params& pr, const CoefficientDomain& k) {
  if (pr.e == 2 && pr.g == 2) return parse_reference(kReferenceE2G2);
  if (pr.e >= 3 && pr.g >= 3) return generic_reference(pr, k);
  BettiReference r;
  r.indices = {0, 1};
  r.ranks[{0, 0, 0}] = 1;
  if (pr.eg() - pr.e >= 1) r.ranks[{1, -1, -1}] += pr.eg();
  r.ranks[{1, 0, -pr.g}] += binomial(pr.f(), pr.e);
  return r;
}

/// Differences between a table and a reference on the indices the reference covers.
inline std::vector<std::string> reference_differences(const BettiTable& t, const BettiReference& ref) {
  std::vector<std::string> diffs;
  GradedRanks got = t.graded();
  auto show = [](const std::tuple<int, int, int>& k) {
    return "i=" + std::to_string(std::get<0>(k)) + " [" + std::to_string(std::get<1>(k)) + "," +
           std::to_string(std::get<2>(k)) + "]";
  };
  for (int i : ref.indices) {
    std::set<std::tuple<int, int, int>> keys;
    for (const auto& [k, v] : got)
      if (std::get<0>(k) == i) keys.insert(k);
    for (const auto& [k, v] : ref.ranks)
      if (std::get<0>(k) == i) keys.insert(k);
    for (const auto& k : keys) {
      std::uint64_t a = got.count(k) ? got.at(k) : 0, b = ref.ranks.count(k) ? ref.ranks.at(k) : 0;
      if (a != b) diffs.push_back(show(k) + ": computed " + std::to_string(a) + ", reference " + std::to_string(b));
    }
  }
  return diffs;
}

/// Throws Mismatch listing every differing entry.
inline void compare_reference(const BettiTable& t, const BettiReference& ref) {
  auto d = reference_differences(t, ref);
  if (!d.empty()) throw Mismatch(std::move(d));
}

inline void compare_reference(const BettiTable& t) { compare_reference(t, reference_for(t.params, t.field)); }

}  // namespace unires
