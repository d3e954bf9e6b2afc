#include <catch_amalgamated.hpp>

#include "unires/complex/strands.hpp"
#include "unires/tor/tor.hpp"

using namespace unires;

namespace {

const CoefficientDomain kQ = CoefficientDomain::rationals();
const CoefficientDomain kF2 = CoefficientDomain::prime_field(2);
const CoefficientDomain kF3 = CoefficientDomain::prime_field(3);
const CoefficientDomain kF5 = CoefficientDomain::prime_field(5);

// Homology of the strand computed densely: the matrices are rebuilt column by column
// without weight blocks, and ranks are taken by exact_linalg on the whole map.
std::vector<std::uint64_t> homology_unblocked(const FiberStrand& s) {
  const Params& p = s.params;
  std::vector<std::shared_ptr<const SummandTable>> t;
  for (const auto& id : s.terms) t.push_back(summand_table(p, id));
  const std::size_t n = t.size();
  std::vector<std::size_t> rk(n, 0);
  LocalTerms terms;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<Triplet<std::int64_t>> trip;
    for (std::size_t col = 0; col < t[k]->size(); ++col) {
      if (t[k + 1]->id().species == Species::B0) gamma_map(p, *t[k], *t[k + 1], col, terms);
      else if (s.kind == FiberKind::N) n_up(p, *t[k], *t[k + 1], col, terms);
      else m_down(p, *t[k], *t[k + 1], col, terms);
      for (auto [r, v] : terms) trip.push_back({static_cast<int>(r), static_cast<int>(col), v});
    }
    auto m = SparseMatrix<std::int64_t>::accumulate(static_cast<int>(t[k + 1]->size()), static_cast<int>(t[k]->size()),
                                                    std::move(trip));
    rk[k] = rank_over(m, s.field);
  }
  std::vector<std::uint64_t> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = t[k]->size() - rk[k] - (k ? rk[k - 1] : 0);
  return h;
}

}  // namespace

TEST_CASE("fiber strand terms and dimensions") {
  auto s = fiber_strand(1, 1, Params(1, 1), kQ, FiberKind::M);
  REQUIRE(s.terms.size() == 2);
  CHECK(s.terms[0].to_string() == "M(1,1,0)");
  CHECK(s.terms[1].to_string() == "M(0,0,1)");
  auto h = strand_homology(s);
  CHECK(h.term_dims == std::vector<std::uint64_t>{1, 1});
  CHECK(h.homology_dims == std::vector<std::uint64_t>{0, 0});  // rank 1

  auto m12 = fiber_strand(1, 2, Params(3, 4), kQ, FiberKind::M);
  std::vector<std::uint64_t> dims;
  for (const auto& t : m12.terms) dims.push_back(term_dim(t, Params(3, 4)));
  CHECK(dims == std::vector<std::uint64_t>{30, 48});
  CHECK(euler_abs(1, 2, Params(3, 4)) == 18);
  CHECK(euler_abs(2, 1, Params(3, 4)) == 12);
  CHECK(euler_abs(-1, 0, Params(1, 1)) == 0);  // no terms

  auto t = fiber_strand(2, 0, Params(2, 2), kQ, FiberKind::Mtilde);
  REQUIRE(t.terms.back().species == Species::B0);
  auto ht = strand_homology(t);
  CHECK(ht.term_dims.back() == 6);
  CHECK(ht.homology_dims == std::vector<std::uint64_t>{0, 3});
  CHECK(t.multiplicity() == 1);
  CHECK(fiber_strand(2, 1, Params(2, 2), kQ, FiberKind::M).multiplicity() == binomial(4, 3));
  CHECK_THROWS_AS(fiber_strand(2, 1, Params(2, 2), kQ, FiberKind::Mtilde), std::invalid_argument);
  CHECK_THROWS_AS(fiber_strand(1, 1, Params(1, 1), CoefficientDomain::integers(), FiberKind::M), DomainError);
}

TEST_CASE("weight blocks and symmetry agree with whole-matrix ranks") {
  for (auto pr : {Params(1, 2), Params(2, 2), Params(2, 3)})
    for (auto k : {kQ, kF2, kF3})
      for (int P = 0; P <= pr.eg() + 1; ++P)
        for (int Q = std::max(0, P - pr.g); Q <= P + pr.e; ++Q) {
          auto kind = P - Q == pr.g ? FiberKind::Mtilde : FiberKind::M;
          auto s = fiber_strand(P, Q, pr, k, kind);
          auto sym = strand_homology(s, true).homology_dims;
          CHECK(sym == strand_homology(s, false).homology_dims);
          CHECK(sym == homology_unblocked(s));
          auto n = fiber_strand(P, Q, pr, k, FiberKind::N);
          CHECK(strand_homology(n, true).homology_dims == homology_unblocked(n));
        }
}

TEST_CASE("fiber homology equals the homology of the homogeneous part of F") {
  // F (x) K restricted to S(P,Q) is M(P,Q) (x) wedge^{P-Q+e} F0* (or M~ when P = Q+g)
  for (auto pr : {Params(1, 2), Params(2, 2), Params(2, 3)})
    for (auto k : {kQ, kF2})
      for (int P = 0; P <= pr.eg() + 1; ++P)
        for (int Q = std::max(0, P - pr.g); Q <= P + pr.e; ++Q) {
          auto desc = homogeneous_part(P, Q, pr);
          desc.domain = k;
          auto H = homology_dims(desc.as_chain_complex());
          auto kind = P - Q == pr.g ? FiberKind::Mtilde : FiberKind::M;
          auto s = fiber_strand(P, Q, pr, k, kind);
          auto h = strand_homology(s);
          std::map<int, std::uint64_t> fib;
          for (std::size_t i = 0; i < s.terms.size(); ++i)
            fib[s.position(s.terms[i])] += h.homology_dims[i] * s.multiplicity();
          for (const auto& [i, v] : H) {
            INFO("e=" << pr.e << " g=" << pr.g << " P=" << P << " Q=" << Q << " i=" << i);
            CHECK(static_cast<std::uint64_t>(v) == fib[i]);
          }
        }
}

TEST_CASE("tor examples") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      Params p(e, g);
      CHECK(tor_dim(0, 0, 0, p, kQ) == 1);
      CHECK(tor_dim(p.eg() - e, p.eg(), -e, p, kQ) == 1);
      CHECK(H_N(g - 1, e - 1, alpha(p), p, kQ) == 1);
      CHECK(H_M(0, 0, 0, p, kQ) == 1);
    }
  Params p22(2, 2);
  CHECK(tor_dim(0, 1, -1, p22, kQ) == 2);
  CHECK(tor_dim(2, 4, -2, p22, kQ) == 1);
  CHECK(tor_dim(0, 0, 1, p22, kQ) == 2);
  CHECK(tor_dim(-1, 0, 0, p22, kQ) == 0);
}

TEST_CASE("Bbar dimensions by three routes") {
  Params p(2, 2);
  std::vector<std::uint64_t> want{1, 4, 3, 0, 0};
  for (auto k : {kQ, kF2, kF3}) {
    for (int i = 0; i <= 4; ++i) {
      CHECK(bbar_dim(i, p, k) == want[i]);
      CHECK(bbar_dim_via_N(i, p, k) == want[i]);
      CHECK(bbar_dim_via_augmented(i, p, k) == want[i]);
    }
  }
  CHECK(binomial(4, 2) - H_M(2, 0, 0, p, kQ) == 3);
  for (auto pr : {Params(2, 3), Params(3, 2), Params(3, 3)})
    for (int i = 0; i <= pr.eg(); ++i) {
      CHECK(bbar_dim(i, pr, kQ) == bbar_dim_via_N(i, pr, kQ));
      CHECK(bbar_dim(i, pr, kF2) == bbar_dim_via_augmented(i, pr, kF2));
    }
}

TEST_CASE("Eagon-Northcott closed form") {
  CHECK(eagon_northcott_dim(0, 0, 1, Params(2, 2)) == 2);
  CHECK(eagon_northcott_dim(1, 2, 0, Params(2, 2)) == 1);
  CHECK(eagon_northcott_dim(2, 2, 1, Params(2, 2)) == 0);
  CHECK_THROWS_AS(eagon_northcott_dim(0, 0, 0, Params(3, 2)), OutOfRange);
  CHECK_THROWS_AS(eagon_northcott_dim(0, 0, -2, Params(2, 2)), OutOfRange);
  for (int g = 1; g <= 3; ++g) {
    Params p(2, g);
    for (int l = -1; l <= g - 1; ++l)
      for (int pp = 0; pp <= alpha(p); ++pp)
        for (int q = pp; q <= pp + 3; ++q) {
          INFO("g=" << g << " (p,q,l)=(" << pp << "," << q << "," << l << ")");
          CHECK(tor_dim(pp, q, l, p, kQ) == eagon_northcott_dim(pp, q, l, p));
        }
  }
}

TEST_CASE("duality and the strand theorems") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      Params p(e, g);
      for (auto k : {kQ, kF2}) {
        INFO("e=" << e << " g=" << g << " " << k.to_string());
        auto d = duality_check(p, k);
        CHECK(d.passed);
        CHECK(d.checked > 0);
        auto t = strand_pattern_check(p, k);
        CHECK(t.passed);
        INFO(t.summary());
        CHECK(check_bbar_split(p, k).passed);
        CHECK(check_bbar_routes(p, k).passed);
      }
    }
  // small cases over two more primes
  for (auto p : {Params(2, 2), Params(2, 3)})
    for (auto k : {kF3, kF5}) {
      CHECK(duality_check(p, k).passed);
      CHECK(strand_pattern_check(p, k).passed);
      CHECK(check_bbar_split(p, k).passed);
    }
  CHECK(H_N(1, 1, alpha(Params(2, 2)), Params(2, 2), kQ) == H_M(0, 0, 0, Params(2, 2), kQ));
}

TEST_CASE("tor dimensions do not depend on the field for small e, g") {
  for (auto pr : {Params(2, 2), Params(2, 3), Params(3, 3)})
    for (int l = -pr.e; l <= pr.g - 1; ++l)
      for (int p = 0; p <= pr.eg(); ++p)
        for (int q = p; q <= p + pr.e + pr.g; ++q) {
          auto v = tor_dim(p, q, l, pr, kQ);
          CHECK(tor_dim(p, q, l, pr, kF2) == v);
          CHECK(tor_dim(p, q, l, pr, kF3) == v);
          CHECK(tor_dim(p, q, l, pr, kF5) == v);
        }
}

TEST_CASE("strand report") {
  auto s = fiber_strand(2, 0, Params(2, 2), kQ, FiberKind::Mtilde);
  auto j = strand_report(s, strand_homology(s));
  CHECK(j.dump() ==
        R"j({"kind":"M~","P":2,"Q":0,"field":"q","terms":["M(2,0,0)","B0(2)"],"term_dims":[3,6],"homology_dims":[0,3]})j");
}

TEST_CASE("cache returns what a fresh computation returns") {
  StrandCache::instance().clear();
  auto s = fiber_strand(3, 2, Params(2, 3), kF2, FiberKind::N);
  auto a = StrandCache::instance().get(s);
  auto b = strand_homology(s);
  CHECK(a.homology_dims == b.homology_dims);
  CHECK(StrandCache::instance().get(s).homology_dims == b.homology_dims);
}
