#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "unires/multilinear/bowtie.hpp"
#include "unires/multilinear/divided.hpp"
#include "unires/multilinear/exterior.hpp"
#include "unires/multilinear/koszul.hpp"
#include "unires/multilinear/prop12.hpp"

using namespace unires;

namespace {

// Oracle for the wedge sign: count inversions of the concatenated index list directly.
int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::vector<int> concat(Mask a, Mask b) {
  auto x = mask_indices(a), y = mask_indices(b);
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// Oracle for the adopted contraction, from its defining adjunction
// <beta, alpha(b)> = <beta ^ alpha, b> with <phi_I, f_J> = delta_{IJ}.
ExteriorVector<std::int64_t> contract_by_pairing(Mask alpha, Mask b, int n) {
  ExteriorVector<std::int64_t> out;
  int k = popcount(b) - popcount(alpha);
  if (k < 0) return out;
  for (Mask beta : enum_subsets(n, k)) {
    if ((beta & alpha) || (beta | alpha) != b) continue;
    out[beta] = inversion_sign(concat(beta, alpha));
  }
  return out;
}

// Oracle for f_J acting on the dual algebra: <b(alpha), ...> via <f_J ^ f_K, phi_I>.
ExteriorVector<std::int64_t> contract_dual_by_pairing(Mask b, Mask alpha, int n) {
  ExteriorVector<std::int64_t> out;
  int k = popcount(alpha) - popcount(b);
  if (k < 0) return out;
  for (Mask kk : enum_subsets(n, k)) {
    if ((kk & b) || (kk | b) != alpha) continue;
    out[kk] = inversion_sign(concat(b, kk));
  }
  return out;
}

}  // namespace

TEST_CASE("basis enumeration counts and order") {
  for (int n = 0; n <= 8; ++n)
    for (int d = 0; d <= 8; ++d) {
      CHECK(enum_exterior(n, d).size() == binomial(n, d));
      CHECK(enum_divided(n, d).size() == (n == 0 ? (d == 0 ? 1u : 0u) : binomial(n - 1 + d, d)));
    }
  CHECK(enum_exterior(4, 2).size() == 6);
  CHECK(enum_exterior(3, 0).size() == 1);
  CHECK(enum_exterior(2, 3).empty());
  CHECK(enum_divided(2, 2).size() == 3);
  CHECK(enum_divided(3, 2).size() == 6);
  auto ex = enum_exterior(4, 2);
  for (std::size_t i = 1; i < ex.size(); ++i) CHECK(mask_indices(ex[i - 1].mask) < mask_indices(ex[i].mask));
  auto dv = enum_divided(3, 3);
  for (std::size_t i = 1; i < dv.size(); ++i) CHECK(dv[i - 1].exps < dv[i].exps);
}

TEST_CASE("contraction signs match the pairing definition") {
  for (int n = 1; n <= 5; ++n)
    for (Mask a = 0; a < bit(n); ++a)
      for (Mask b = 0; b < bit(n); ++b) {
        SignedMask s = contract(a, b);
        ExteriorVector<std::int64_t> got;
        if (s.sign) got[s.mask] = s.sign;
        CHECK(got == contract_by_pairing(a, b, n));
        SignedMask t = contract_dual(b, a);
        ExteriorVector<std::int64_t> got2;
        if (t.sign) got2[t.mask] = t.sign;
        CHECK(got2 == contract_dual_by_pairing(b, a, n));
      }
}

TEST_CASE("contraction examples") {
  // dual of f_1 against f_1 ^ f_2; the two conventions differ by the reversal sign
  CHECK(contract(bit(0), bit(0) | bit(1)) == SignedMask{-1, bit(1)});
  CHECK(contract(bit(0), bit(0) | bit(1), InteriorConvention::mirrored) == SignedMask{1, bit(1)});
  CHECK(contract(bit(2), bit(0) | bit(1)).sign == 0);
  for (int f = 0; f <= 8; ++f) {
    CHECK(contract(full_mask(f), full_mask(f)) == SignedMask{1, 0});
    CHECK(contract_dual(full_mask(f), full_mask(f)) == SignedMask{1, 0});
  }
  CHECK_THROWS_AS(contract(ExteriorBasisElement{3, 1}, ExteriorBasisElement{4, 1}), AmbientMismatch);
}

TEST_CASE("contraction associativity") {
  for (int n = 1; n <= 4; ++n)
    for (Mask a = 0; a < bit(n); ++a)
      for (Mask a2 = 0; a2 < bit(n); ++a2)
        for (Mask b = 0; b < bit(n); ++b) {
          ExteriorVector<std::int64_t> va{{a, 1}}, va2{{a2, 1}}, vb{{b, 1}};
          auto aa2 = wedge(va, va2);
          // adopted: right action, so (a ^ a2)(b) = a(a2(b))
          CHECK(contract(aa2, vb) == contract(va, contract(va2, vb)));
          // mirrored: left action, so (a ^ a2)(b) = a2(a(b))
          auto m = InteriorConvention::mirrored;
          CHECK(contract(aa2, vb, m) == contract(va2, contract(va, vb, m), m));
        }
}

TEST_CASE("divided power comultiplication") {
  auto t = comult_divided({{2, 0}});
  REQUIRE(t.size() == 1);
  CHECK(t[0].rest.exps == std::vector<int>{1, 0});
  CHECK(t[0].index == 0);
  CHECK(t[0].coefficient == 1);
  auto u = comult_divided({{1, 1}});
  REQUIRE(u.size() == 2);
  CHECK((u[0].rest.exps == std::vector<int>{0, 1} && u[0].index == 0));
  CHECK((u[1].rest.exps == std::vector<int>{1, 0} && u[1].index == 1));
  CHECK_THROWS_AS(comult_divided({{0, 0, 0}}), DegreeZero);
  // iterated comultiplication hits each sequence with multiset mu once
  for (const auto& mu : enum_divided(3, 4)) {
    auto seqs = comult_iterated(mu);
    std::vector<int> sorted;
    for (int k = 0; k < 3; ++k) sorted.insert(sorted.end(), mu.exps[k], k);
    std::set<std::vector<int>> oracle;
    do oracle.insert(sorted);
    while (std::next_permutation(sorted.begin(), sorted.end()));
    CHECK(std::set<std::vector<int>>(seqs.begin(), seqs.end()) == oracle);
    CHECK(seqs.size() == oracle.size());
    CHECK(seqs.size() == multinomial(mu.exps));
  }
}

TEST_CASE("bowtie examples") {
  // e = g = 2, cells (k,i) -> 2k + i
  auto one = bowtie({{1, 0}}, {2, bit(0)});
  CHECK(one == ExteriorVector<std::int64_t>{{bit(0), 1}});
  auto sq = bowtie({{2, 0}}, {2, bit(0) | bit(1)});
  CHECK(sq == ExteriorVector<std::int64_t>{{bit(0) | bit(1), 1}});
  auto mixed = bowtie({{1, 1}}, {2, bit(0) | bit(1)});
  // (e1 g1)^(e2 g2) + (e2 g1)^(e1 g2) = [0,3] - [1,2]
  CHECK(mixed == ExteriorVector<std::int64_t>{{bit(0) | bit(3), 1}, {bit(1) | bit(2), -1}});
  CHECK_THROWS_AS(bowtie({{2, 0}}, {2, bit(0)}), DegreeMismatch);
  // the mirror in increasing order is the transpose of the bowtie; reversal adds (-1)^{m(m-1)/2}
  for (int m = 0; m <= 3; ++m)
    for (Mask u : enum_subsets(3, m))
      for (const auto& y : enum_divided(3, m)) {
        auto fwd = mirror_bowtie({3, u}, y, false);
        auto rev = mirror_bowtie({3, u}, y, true);
        int s = (m * (m - 1) / 2) % 2 ? -1 : 1;
        for (auto& [k, v] : fwd) CHECK(rev.at(k) == s * v);
        CHECK(fwd.size() == rev.size());
      }
  for (int m = 0; m <= 4; ++m)
    for (const auto& u : enum_divided(2, m))
      for (Mask y : enum_subsets(3, m))
        for (auto& [mask, v] : bowtie(u, {3, y})) {
          CHECK(popcount(mask) == m);
          CHECK(mask < bit(6));
          CHECK((v == 1 || v == -1));
        }
}

TEST_CASE("koszul differential") {
  DenseMatrix<std::int64_t> y(1, 1);
  y(0, 0) = 7;
  auto d1 = koszul_differential(y, 1);
  CHECK(d1.rows() == 1);
  CHECK(d1.cols() == 1);
  CHECK(d1.at(0, 0) == 7);
  auto d0 = koszul_differential(y, 0);
  CHECK(d0.is_zero());
  CHECK(d0.cols() == 1);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> dist(-5, 5);
  for (int e = 1; e <= 3; ++e)
    for (int g = 1; g <= 3; ++g) {
      DenseMatrix<std::int64_t> m(g, e);
      for (auto& v : m.a) v = dist(rng);
      auto fam = koszul_family(m);
      for (std::size_t d = 1; d < fam.size(); ++d) CHECK(multiply(fam[d - 1], fam[d]).is_zero());
    }
}

TEST_CASE("Prop 1.2 under both orientation conventions") {
  auto adopted = prop_1_2_check(5, 100, 5, 1, InteriorConvention::adopted);
  INFO(adopted.witness);
  CHECK(adopted.passed);
  CHECK(adopted.checked > 1000);
  auto mirrored = prop_1_2_check(5, 100, 5, 1, InteriorConvention::mirrored);
  INFO(mirrored.witness);
  CHECK(mirrored.passed);

  // f=2, r=q=1, p=2 on all basis choices
  for (Mask b : enum_subsets(2, 1))
    for (Mask a : enum_subsets(2, 1))
      CHECK(prop_1_2_a_holds({{b, 1}}, {{a, 1}}, 2, InteriorConvention::mirrored, 0));

  // the zero map kills both sides of (b)
  DenseMatrix<std::int64_t> zero(2, 3);
  std::string w;
  CHECK(prop_1_2_b_holds(zero, {{bit(0), 1}}, {{bit(0) | bit(1), 1}}, InteriorConvention::adopted, 0, &w));
  auto lhs = contract_dual(exterior_power_apply(zero, ExteriorVector<std::int64_t>{{bit(0), 1}}),
                           ExteriorVector<std::int64_t>{{bit(0) | bit(1), 1}});
  CHECK(lhs.empty());
}
