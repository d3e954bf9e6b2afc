#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "unires/linalg/chain_complex.hpp"
#include "unires/linalg/rank.hpp"
#include "unires/linalg/smith.hpp"
#include "unires/linalg/triplet_io.hpp"

using namespace unires;

namespace {

// Oracle: plain dense Gaussian elimination over Q with GMP rationals.
std::size_t naive_rank_q(const SparseMatrix<std::int64_t>& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (auto& t : m.entries()) a[t.row][t.col] = static_cast<long>(t.value);
  std::size_t r = 0;
  for (int c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (int j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Oracle over F_p: dense elimination with 64-bit remainders, no sparse phases.
std::size_t naive_rank_p(const SparseMatrix<std::int64_t>& m, std::uint32_t p) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (auto& t : m.entries()) a[t.row][t.col] = static_cast<std::uint64_t>(((t.value % (std::int64_t)p) + p) % p);
  PrimeField fp{p};
  std::size_t r = 0;
  for (int c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = fp.inv(static_cast<std::uint32_t>(a[r][c]));
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      std::uint64_t f = a[i][c] * inv % p;
      for (int j = c; j < m.cols(); ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    ++r;
  }
  return r;
}

SparseMatrix<std::int64_t> random_sparse(int rows, int cols, double density, int range, std::mt19937_64& rng,
                                         CoefficientDomain dom) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-range, range);
  std::vector<Triplet<std::int64_t>> t;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (u(rng) < density) t.push_back({i, j, v(rng)});
  return SparseMatrix<std::int64_t>::accumulate(rows, cols, t, dom);
}

}  // namespace

TEST_CASE("coefficient domains parse and validate") {
  CHECK(CoefficientDomain::parse("q").kind() == DomainKind::rationals);
  CHECK(CoefficientDomain::parse("fp:32003").characteristic() == 32003u);
  CHECK_THROWS_AS(CoefficientDomain::parse("fp:32004"), DomainError);
  CHECK_THROWS_AS(CoefficientDomain::parse("fp:"), DomainError);
  CHECK_THROWS_AS(CoefficientDomain::parse("r"), DomainError);
  CHECK(CoefficientDomain::parse("fp:2147483647").characteristic() == 2147483647u);
}

TEST_CASE("sparse matrix invariants") {
  using M = SparseMatrix<std::int64_t>;
  CHECK_THROWS_AS(M::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 2}}), MatrixShapeError);
  CHECK_THROWS_AS(M::from_triplets(2, 2, {{0, 0, 0}}), MatrixShapeError);
  CHECK_THROWS_AS(M::from_triplets(2, 2, {{2, 0, 1}}), MatrixShapeError);
  M m = M::accumulate(2, 3, {{0, 1, 2}, {0, 1, -2}, {1, 2, 5}, {1, 0, 1}});
  CHECK(m.nnz() == 2);
  CHECK(m.at(1, 2) == 5);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.transpose().transpose() == m);
  M fp = M::accumulate(1, 1, {{0, 0, 7}}, CoefficientDomain::prime_field(7));
  CHECK(fp.is_zero());
}

TEST_CASE("rank on small fixed examples") {
  auto f2 = CoefficientDomain::prime_field(2);
  auto ones = SparseMatrix<std::int64_t>::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}, f2);
  CHECK(rank(ones) == 1);
  CHECK(rank(SparseMatrix<std::int64_t>(5, 7, CoefficientDomain::rationals())) == 0);
  CHECK_THROWS_AS(rank(SparseMatrix<std::int64_t>(2, 2)), DomainError);
  // 2 is invertible over Q but not over F_2
  auto two = SparseMatrix<std::int64_t>::from_triplets(1, 1, {{0, 0, 2}}, CoefficientDomain::rationals());
  CHECK(rank(two) == 1);
}

TEST_CASE("rank agrees with dense oracles on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 90), c = 1 + static_cast<int>(rng() % 90);
    double dens = (trial % 3 == 0) ? 0.3 : 0.04;
    auto mq = random_sparse(r, c, dens, 3, rng, CoefficientDomain::rationals());
    std::size_t rq = naive_rank_q(mq);
    CHECK(rank(mq) == rq);
    for (std::uint32_t p : {2u, 3u, 32003u, 2147483647u}) {
      SparseMatrix<std::int64_t> mp =
          SparseMatrix<std::int64_t>::accumulate(r, c, mq.entries(), CoefficientDomain::prime_field(p));
      std::size_t rp = rank(mp);
      CHECK(rp == naive_rank_p(mq, p));
      CHECK(rq >= rp);
    }
  }
}

TEST_CASE("rank of low-rank products survives the sparse phase") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_sparse(300, 12, 0.2, 2, rng, CoefficientDomain::prime_field(32003));
    auto b = random_sparse(12, 250, 0.2, 2, rng, CoefficientDomain::prime_field(32003));
    auto ab = multiply(a, b);
    CHECK(rank(ab) == naive_rank_p(ab, 32003));
    CHECK(rank(ab) <= 12);
  }
}

TEST_CASE("rational rank falls back to GMP on overflow") {
  // entries near 2^40 overflow int64 during fraction-free elimination
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-(1LL << 40), 1LL << 40);
  std::vector<Triplet<std::int64_t>> t;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t.push_back({i, j, d(rng)});
  auto m = SparseMatrix<std::int64_t>::accumulate(6, 6, t, CoefficientDomain::rationals());
  CHECK(rank(m) == naive_rank_q(m));
}

TEST_CASE("rational matrices with denominators") {
  std::vector<Triplet<mpq_class>> t{{0, 0, mpq_class(1, 2)}, {0, 1, mpq_class(1, 3)}, {1, 0, mpq_class(3, 2)},
                                    {1, 1, mpq_class(1, 1)}};
  auto m = SparseMatrix<mpq_class>::from_triplets(2, 2, t, CoefficientDomain::rationals());
  CHECK(rank(m) == 1);
}

TEST_CASE("smith normal form") {
  auto check_form = [](const SparseMatrix<std::int64_t>& m) {
    SmithForm s = smith_normal_form(m);
    CHECK(reassemble(s, m.rows(), m.cols()) == to_dense(m));
    CHECK(is_unimodular(s.left));
    CHECK(is_unimodular(s.right));
    for (std::size_t i = 1; i < s.rank; ++i) CHECK(mpz_divisible_p(s.invariant_factors[i].get_mpz_t(),
                                                                   s.invariant_factors[i - 1].get_mpz_t()));
    return s;
  };
  auto diag = SparseMatrix<std::int64_t>::from_triplets(2, 2, {{0, 0, 2}, {1, 1, 3}});
  SmithForm s = check_form(diag);
  REQUIRE(s.rank == 2);
  CHECK(s.invariant_factors[0] == 1);
  CHECK(s.invariant_factors[1] == 6);
  std::vector<Triplet<std::int64_t>> id;
  for (int i = 0; i < 5; ++i) id.push_back({i, i, 1});
  s = check_form(SparseMatrix<std::int64_t>::from_triplets(5, 5, id));
  CHECK(s.rank == 5);
  for (auto& d : s.invariant_factors) CHECK(d == 1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    auto m = random_sparse(1 + rng() % 7, 1 + rng() % 7, 0.5, 6, rng, CoefficientDomain::integers());
    s = check_form(m);
    CHECK(s.rank == naive_rank_q(m));
  }
}

TEST_CASE("triplet format round trip is bit exact") {
  std::mt19937_64 rng(2);
  auto m = random_sparse(13, 9, 0.3, 1000, rng, CoefficientDomain::integers());
  std::string text = to_triplet_string(m);
  std::istringstream is(text);
  auto back = read_triplets_integer(is);
  CHECK(back == m);
  CHECK(to_triplet_string(back) == text);

  std::vector<Triplet<mpq_class>> t{{0, 1, mpq_class(-3, 4)}, {2, 0, mpq_class(5)}, {1, 1, mpq_class(6, 4)}};
  auto q = SparseMatrix<mpq_class>::from_triplets(3, 2, t, CoefficientDomain::rationals());
  std::string qt = to_triplet_string(q);
  CHECK(qt == "3 2 3\n2 0 5\n0 1 -3/4\n1 1 3/2\n");
  std::istringstream qs(qt);
  auto qb = read_triplets_rational(qs);
  CHECK(qb == q);
  CHECK(to_triplet_string(qb) == qt);

  std::istringstream bad("2 2 1\n0 0 1/0\n");
  CHECK_THROWS_AS(read_triplets_rational(bad), TripletFormatError);
  std::istringstream trunc("2 2 2\n0 0 1\n");
  CHECK_THROWS_AS(read_triplets_integer(trunc), TripletFormatError);
}

TEST_CASE("homology of small complexes") {
  ChainComplex<std::int64_t> c;
  c.domain = CoefficientDomain::rationals();
  c.dims = {{0, 3}, {1, 3}};
  std::vector<Triplet<std::int64_t>> id{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}};
  c.diffs.emplace(1, SparseMatrix<std::int64_t>::from_triplets(3, 3, id, c.domain));
  for (auto [pos, h] : homology_dims(c)) CHECK(h == 0);

  // 0 -> K -(1)-> K^2 -(1 -1)-> K -> 0 is exact; flipping a sign breaks d^2 = 0
  ChainComplex<std::int64_t> k;
  k.domain = CoefficientDomain::prime_field(5);
  k.dims = {{0, 1}, {1, 2}, {2, 1}};
  k.diffs.emplace(2, SparseMatrix<std::int64_t>::from_triplets(2, 1, {{0, 0, 1}, {1, 0, 1}}, k.domain));
  k.diffs.emplace(1, SparseMatrix<std::int64_t>::from_triplets(1, 2, {{0, 0, 1}, {0, 1, -1}}, k.domain));
  auto h = homology_dims(k);
  REQUIRE(h.size() == 3);
  std::int64_t euler_c = 0, euler_h = 0;
  for (auto [pos, d] : h) {
    CHECK(d == 0);
    euler_h += (pos % 2 ? -1 : 1) * d;
  }
  for (auto [pos, n] : k.dims) euler_c += (pos % 2 ? -1 : 1) * n;
  CHECK(euler_c == euler_h);
  k.diffs.at(1) = SparseMatrix<std::int64_t>::from_triplets(1, 2, {{0, 0, 1}, {0, 1, 1}}, k.domain);
  CHECK_THROWS_AS(homology_dims(k), CompositionNotZero);
}
