#include <catch_amalgamated.hpp>

#include <random>

#include "unires/ring/generic_data.hpp"

using namespace unires;

TEST_CASE("variable counts") {
  CHECK(VariableLayout{Params(1, 1)}.count() == 5);
  CHECK(VariableLayout{Params(2, 2)}.count() == 17);
  CHECK(VariableLayout{Params(2, 3)}.count() == 26);
  CHECK_THROWS_AS(Params(0, 2), ParameterError);
  CHECK_THROWS_AS(Params(2, 9), ParameterError);
}

TEST_CASE("variable names and degrees") {
  Params pr(2, 2);
  VariableLayout lay{pr};
  CHECK(lay.name(lay.b()) == "b");
  CHECK(lay.name(lay.v(0, 0)) == "v_1_1");
  CHECK(lay.name(lay.v(3, 1)) == "v_4_2");
  CHECK(lay.name(lay.x(1, 3)) == "x_2_4");
  CHECK(lay.degree(lay.b()) == ABidegree{-2, 2});
  CHECK(lay.degree(lay.v(2, 1)) == ABidegree{1, 0});
  CHECK(lay.degree(lay.x(0, 2)) == ABidegree{0, 1});
  // all names distinct
  std::set<std::string> names;
  for (int v = 0; v < lay.count(); ++v) names.insert(lay.name(static_cast<std::uint16_t>(v)));
  CHECK(static_cast<int>(names.size()) == lay.count());
}

TEST_CASE("bidegree") {
  Params pr(2, 2);
  auto d = make_generic(pr);
  CHECK(bidegree(d.V(0, 0) * d.X(0, 0), pr) == ABidegree{1, 1});
  CHECK(bidegree(d.b * d.X(0, 0) * d.X(1, 1), pr) == ABidegree{-2, 4});
  CHECK_THROWS_AS(bidegree(d.V(0, 0) + d.X(0, 0), pr), Inhomogeneous);
  CHECK_THROWS_AS(bidegree(Polynomial(), pr), ZeroPolynomial);
  CHECK(bidegree(Polynomial(7), pr) == ABidegree{0, 0});
  // det X on columns {3,4} plus b det V on rows {1,2}: both of degree (0, g)
  auto detx = d.X(0, 2) * d.X(1, 3) - d.X(0, 3) * d.X(1, 2);
  auto detv = d.V(0, 0) * d.V(1, 1) - d.V(0, 1) * d.V(1, 0);
  CHECK(bidegree(detx + d.b * detv, pr) == ABidegree{0, 2});
}

TEST_CASE("monoid membership") {
  Params pr(2, 3);
  CHECK(ABidegree{0, 0}.in_monoid(pr));
  CHECK(ABidegree{-2, 3}.in_monoid(pr));
  CHECK(ABidegree{-1, 3}.in_monoid(pr));
  CHECK_FALSE(ABidegree{-1, 2}.in_monoid(pr));
  CHECK_FALSE(ABidegree{0, -1}.in_monoid(pr));
  CHECK(ABidegree{-4, 6}.in_monoid(pr));
  CHECK_FALSE(ABidegree{-5, 6}.in_monoid(pr));
  // closure: sums of sampled monoid elements stay in the monoid, and positive ones stay positive
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto pick = [&] {
      int n1 = static_cast<int>(rng() % 4), n2 = static_cast<int>(rng() % 4), n3 = static_cast<int>(rng() % 3);
      return ABidegree{n1 - 2 * n3, n2 + 3 * n3};
    };
    ABidegree a = pick(), b = pick();
    CHECK(a.in_monoid(pr));
    CHECK((a + b).in_monoid(pr));
    if (!(a == ABidegree{}) && !(b == ABidegree{})) CHECK_FALSE(a + b == ABidegree{});
  }
}

TEST_CASE("polynomial arithmetic") {
  Params pr(1, 1);
  auto d = make_generic(pr);
  Polynomial p = d.V(0, 0) * d.X(0, 0) + 3 * d.b;
  CHECK((p + (-p)).is_zero());
  CHECK(p - p == Polynomial());
  auto m = d.V(0, 0) * d.X(0, 0);
  CHECK(to_string(m * m, pr) == "v_1_1^2*x_1_1^2");
  CHECK(to_string(2 * d.b * d.V(0, 0) * d.V(0, 0) - d.X(0, 0), pr) == "2*b*v_1_1^2 - x_1_1");
  CHECK(to_string(Polynomial(), pr) == "0");
  CHECK(to_string(Polynomial(-4), pr) == "-4");
  CHECK((d.V(0, 0) + d.X(0, 1)) * (d.V(0, 0) - d.X(0, 1)) == d.V(0, 0) * d.V(0, 0) - d.X(0, 1) * d.X(0, 1));
}

TEST_CASE("evaluation commutes with arithmetic") {
  Params pr(2, 2);
  auto d = make_generic(pr);
  VariableLayout lay{pr};
  std::mt19937_64 rng(11);
  const std::uint32_t p = 32003;
  for (int t = 0; t < 50; ++t) {
    auto rnd_poly = [&] {
      Polynomial q(static_cast<long>(rng() % 5));
      for (int k = 0; k < 3; ++k) {
        Polynomial mono(static_cast<long>(rng() % 7) - 3);
        for (int r = 0; r < 2; ++r) mono *= Polynomial::variable(static_cast<std::uint16_t>(rng() % lay.count()));
        q += mono;
      }
      return q;
    };
    Polynomial a = rnd_poly(), b = rnd_poly();
    std::vector<std::uint32_t> vals(lay.count());
    for (auto& v : vals) v = static_cast<std::uint32_t>(rng() % p);
    std::uint64_t ea = a.evaluate_mod(vals, p), eb = b.evaluate_mod(vals, p);
    CHECK((a * b).evaluate_mod(vals, p) == ea * eb % p);
    CHECK((a + b).evaluate_mod(vals, p) == (ea + eb) % p);
    std::vector<mpz_class> zv(vals.begin(), vals.end());
    mpz_class exact = (a * b).evaluate(zv);
    CHECK(mpz_fdiv_ui(exact.get_mpz_t(), p) == ea * eb % p);
  }
}

TEST_CASE("specialize") {
  Params pr(2, 2);
  auto d = make_generic(pr);
  auto s1 = specialize(d, 32003, 42), s2 = specialize(d, 32003, 42), s3 = specialize(d, 32003, 43);
  CHECK(s1.values == s2.values);
  CHECK(s1.V.a == s2.V.a);
  CHECK(s1.values != s3.values);
  for (auto v : s1.values) CHECK(v < 32003u);
  CHECK_THROWS_AS(specialize(d, 32000, 1), DomainError);
  // the zero point kills XV
  auto z = evaluate_data(d, std::vector<std::uint32_t>(VariableLayout{pr}.count(), 0), 32003);
  for (auto v : z.XV().a) CHECK(v == 0);
  // XV from the evaluated matrices agrees with evaluating the symbolic product
  auto xv = matmul(d.X, d.V);
  auto sxv = s1.XV();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(static_cast<std::int64_t>(xv(i, k).evaluate_mod(s1.values, 32003)) == sxv(i, k));
}
