#include <catch_amalgamated.hpp>

#include "unires/betti/betti.hpp"
#include "unires/complex/p_complexes.hpp"
#include "unires/complex/strands.hpp"

using namespace unires;

namespace {

const CoefficientDomain kQ = CoefficientDomain::rationals();

std::vector<CoefficientDomain> small_fields() {
  return {kQ, CoefficientDomain::prime_field(2), CoefficientDomain::prime_field(3), CoefficientDomain::prime_field(5)};
}

// dim H_i(F (x) K) by position, from the homogeneous parts of F assembled per strand
std::map<int, std::uint64_t> homology_of_F(const Params& p, const CoefficientDomain& k) {
  std::map<int, std::uint64_t> out;
  for (int P = 0; P <= p.eg() + 1; ++P)
    for (int Q = P - p.g; Q <= P + p.e; ++Q) {  // Q < 0 leaves B(P) alone
      auto d = homogeneous_part(P, Q, p);
      d.domain = k;
      for (auto [i, h] : homology_dims(d.as_chain_complex()))
        if (h) out[i] += static_cast<std::uint64_t>(h);
    }
  return out;
}

}  // namespace

TEST_CASE("the e = g = 2 table") {
  for (std::uint32_t pr : {0u, 2u, 3u, 5u, 7u}) {
    auto k = pr ? CoefficientDomain::prime_field(pr) : kQ;
    auto t = betti_table(Params(2, 2), k);
    CHECK(t.to_text() ==
          "0: 1@[0,0]\n"
          "1: 4@[-1,-1] 6@[0,-2]\n"
          "2: 3@[-2,-2] 8@[-1,-2] 8@[0,-3]\n"
          "3: 8@[-2,-3] 8@[-1,-4] 3@[0,-4]\n"
          "4: 6@[-2,-4] 4@[-1,-5]\n"
          "5: 1@[-2,-6]\n");
    CHECK(t.entries.size() == 12);
    CHECK_NOTHROW(compare_reference(t));
  }
  auto totals = betti_table(Params(2, 2), kQ).totals();
  CHECK(totals == std::map<int, std::uint64_t>{{0, 1}, {1, 10}, {2, 19}, {3, 19}, {4, 10}, {5, 1}});
}

TEST_CASE("sources of the e = g = 2 entries") {
  auto t = betti_table(Params(2, 2), kQ);
  std::vector<std::string> src;
  for (const auto& e : t.entries) src.push_back(e.source);
  CHECK(src == std::vector<std::string>{"Bbar", "Bbar", "Tor(0,0,0)", "Bbar", "Tor(0,0,1)", "Tor(0,1,-1)",
                                        "Tor(1,1,1)", "Tor(1,2,-1)", "Tor(0,2,-2)", "Tor(1,2,0)", "Tor(1,3,-2)",
                                        "Tor(2,4,-2)"});
}

TEST_CASE("mutated rank is reported") {
  auto t = betti_table(Params(2, 2), kQ);
  t.entries[4].rank += 1;
  try {
    compare_reference(t);
    FAIL("no mismatch");
  } catch (const Mismatch& m) {
    REQUIRE(m.differences.size() == 1);
    CHECK(m.differences[0] == "i=2 [-1,-2]: computed 9, reference 8");
  }
  auto u = betti_table(Params(2, 2), kQ);
  u.entries.pop_back();
  CHECK_THROWS_AS(compare_reference(u), Mismatch);
}

TEST_CASE("first index against the generators of the ideal") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      Params p(e, g);
      auto t = betti_table(p, kQ);
      CHECK(t.entries.front().key() == std::tuple(0, 0, 0));
      CHECK(t.entries.front().rank == 1);
      std::uint64_t gens = t.totals()[1];
      // generators: the entries of XV that survive (none when g = 1) and the C(f,e) minors
      CHECK(gens == (p.eg() > e ? static_cast<std::uint64_t>(p.eg()) : 0) + binomial(p.f(), e));
    }
  auto t23 = betti_table(Params(2, 3), kQ);
  auto gr = t23.graded();
  CHECK(gr[{1, -1, -1}] == 6);
  CHECK(gr[{1, 0, -3}] == 10);
}

TEST_CASE("generic beginning and end tables at e = g = 3") {
  auto k = kQ;
  Params p(3, 3);
  auto t = betti_table(p, k);
  auto ref = generic_reference(p, k);
  CHECK(ref.indices == std::vector<int>{0, 1, 2, 3, 10, 9, 8, 7});
  CHECK(reference_differences(t, ref).empty());
  CHECK(ref.ranks[{3, -3, -3}] == bbar_dim(3, p, k));
  CHECK_THROWS_AS(generic_reference(Params(2, 3), k), OutOfRange);
}

TEST_CASE("end of the table") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      Params p(e, g);
      auto t = betti_table(p, kQ);
      CHECK(t.length() == p.eg() + 1);
      std::vector<BettiEntry> last;
      for (const auto& x : t.entries)
        if (x.i == p.eg() + 1) last.push_back(x);
      REQUIRE(last.size() == 1);
      CHECK(last[0].rank == 1);
      CHECK(last[0].t1 == -(p.eg() - e));
      CHECK(last[0].t2 == -(p.eg() + g));
    }
}

TEST_CASE("branch assembly equals fiber assembly") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g)
      for (const auto& k : small_fields()) {
        Params p(e, g);
        INFO("e=" << e << " g=" << g << " " << k.to_string());
        auto a = betti_table(p, k), b = betti_from_fiber(p, k);
        CHECK(a.graded() == b.graded());
        CHECK(b.length() == p.eg() + 1);
      }
}

TEST_CASE("graded Euler characteristic matches G") {
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      Params p(e, g);
      CHECK(graded_euler(betti_table(p, kQ)) == graded_euler_G(p));
    }
}

TEST_CASE("totals equal the homology of F (x) K") {
  for (auto p : {Params(1, 1), Params(1, 2), Params(2, 2), Params(2, 3)})
    for (auto k : {kQ, CoefficientDomain::prime_field(2)}) {
      auto h = homology_of_F(p, k);
      auto tot = betti_table(p, k).totals();
      CHECK(std::map<int, std::uint64_t>(tot.begin(), tot.end()) == h);
    }
}

TEST_CASE("e = 1 agrees with the complex built from the minors") {
  for (int g = 1; g <= 3; ++g) {
    Params p(1, g);
    auto pc = build_P_complex(make_generic(p), true);
    GradedRanks want;
    for (const auto& [key, n] : fiber_homology(pc, kQ)) want[{key.first, key.second.first, key.second.second}] = n;
    CHECK(betti_from_fiber(p, kQ).graded() == want);
    CHECK(betti_table(p, kQ).graded() == want);
  }
  auto t = betti_from_fiber(Params(1, 1), kQ);
  CHECK(t.length() == 2);
}

TEST_CASE("json and csv") {
  auto t = betti_table(Params(1, 1), CoefficientDomain::prime_field(5));
  CHECK(t.to_json().dump() ==
        R"j({"e":1,"g":1,"field":"fp:5","entries":[{"i":0,"twist":[0,0],"rank":1,"source":"Bbar"},)j"
        R"j({"i":1,"twist":[0,-1],"rank":2,"source":"Tor(0,0,0)"},{"i":2,"twist":[0,-2],"rank":1,"source":"Tor(0,1,-1)"}]})j");
  CHECK(t.to_csv() == "i,twist1,twist2,rank,source\n0,0,0,1,Bbar\n1,0,-1,2,Tor(0,0,0)\n2,0,-2,1,Tor(0,1,-1)\n");
  auto ref = parse_reference(kReferenceE2G2);
  CHECK(ref.ranks.size() == 12);
}

TEST_CASE("threaded fiber assembly is deterministic") {
  auto serial = betti_from_fiber(Params(2, 3), kQ).to_json().dump();
  setenv("UNIRES_THREADS", "3", 1);
  StrandCache::instance().clear();
  auto threaded = betti_from_fiber(Params(2, 3), kQ).to_json().dump();
  unsetenv("UNIRES_THREADS");
  CHECK(serial == threaded);
}
