#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "unires/linalg/domain.hpp"
#include "unires/multilinear/combinatorics.hpp"
#include "unires/multilinear/exterior.hpp"
#include "unires/ring/polynomial.hpp"

namespace unires {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ranks e = rank E, g = rank G, f = e + g.
struct Params {
  int e = 1;
  int g = 1;
  Params() = default;
  Params(int e_, int g_) : e(e_), g(g_) {
    if (e < 1 || g < 1) throw ParameterError("e and g must be positive");
    if (e > kMaxRank || g > kMaxRank) throw ParameterError("e and g are limited to " + std::to_string(kMaxRank));
  }
  int f() const { return e + g; }
  int eg() const { return e * g; }
  /// (e-1)(g-1)
  int alpha() const { return (e - 1) * (g - 1); }
  bool operator==(const Params&) const = default;
};

class Inhomogeneous : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ZeroPolynomial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element of Z^2 carrying the bigrading; v ~ (1,0), x ~ (0,1), b ~ (-e,g).
struct ABidegree {
  int s = 0;
  int t = 0;
  ABidegree operator+(const ABidegree& o) const { return {s + o.s, t + o.t}; }
  ABidegree operator-(const ABidegree& o) const { return {s - o.s, t - o.t}; }
  bool operator==(const ABidegree&) const = default;

  /// Membership in the monoid generated by (1,0), (0,1), (-e,g): some n >= 0 with
  /// s + n e >= 0 and t - n g >= 0.
  bool in_monoid(const Params& p) const {
    int lo = s >= 0 ? 0 : (-s + p.e - 1) / p.e;
    if (t < 0) return false;
    int hi = t / p.g;
    return lo <= hi;
  }
};

/// Global variable order: b, then v_jk (f x e) row-major, then x_ij (g x f) row-major.
struct VariableLayout {
  Params params;
  int count() const { return 1 + params.f() * params.e + params.g * params.f(); }
  std::uint16_t b() const { return 0; }
  std::uint16_t v(int j, int k) const { return static_cast<std::uint16_t>(1 + j * params.e + k); }
  std::uint16_t x(int i, int j) const {
    return static_cast<std::uint16_t>(1 + params.f() * params.e + i * params.f() + j);
  }
  ABidegree degree(std::uint16_t var) const {
    if (var == 0) return {-params.e, params.g};
    if (var < 1 + params.f() * params.e) return {1, 0};
    return {0, 1};
  }
  std::string name(std::uint16_t var) const {
    if (var == 0) return "b";
    int r = var - 1;
    if (r < params.f() * params.e) return "v_" + std::to_string(r / params.e + 1) + "_" + std::to_string(r % params.e + 1);
    r -= params.f() * params.e;
    return "x_" + std::to_string(r / params.f() + 1) + "_" + std::to_string(r % params.f() + 1);
  }
};

inline std::string to_string(const Polynomial& p, const Params& params) {
  VariableLayout lay{params};
  return p.to_string([&](std::uint16_t v) { return lay.name(v); });
}

/// Bidegree of a monomial.
inline ABidegree bidegree(const Monomial& m, const Params& params) {
  VariableLayout lay{params};
  ABidegree d;
  for (auto v : m) d = d + lay.degree(v);
  return d;
}

/// Common bidegree of all monomials of p.
inline ABidegree bidegree(const Polynomial& p, const Params& params) {
  if (p.is_zero()) throw ZeroPolynomial("bidegree of the zero polynomial");
  ABidegree d = bidegree(p.terms().front().first, params);
  for (const auto& [m, c] : p.terms())
    if (!(bidegree(m, params) == d)) throw Inhomogeneous("polynomial is not bihomogeneous");
  return d;
}

/// The data (b, V, X): V is f x e (a map E -> F), X is g x f (a map F -> G).
struct GenericData {
  Params params;
  Polynomial b;
  DenseMatrix<Polynomial> V;
  DenseMatrix<Polynomial> X;
};

inline GenericData make_generic(const Params& params) {
  VariableLayout lay{params};
  GenericData d{params, Polynomial::variable(lay.b()), DenseMatrix<Polynomial>(params.f(), params.e),
                DenseMatrix<Polynomial>(params.g, params.f())};
  for (int j = 0; j < params.f(); ++j)
    for (int k = 0; k < params.e; ++k) d.V(j, k) = Polynomial::variable(lay.v(j, k));
  for (int i = 0; i < params.g; ++i)
    for (int j = 0; j < params.f(); ++j) d.X(i, j) = Polynomial::variable(lay.x(i, j));
  return d;
}

template <class T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < b.cols; ++k) {
      T s(0);
      for (int j = 0; j < a.cols; ++j) s += a(i, j) * b(j, k);
      c(i, k) = s;
    }
  return c;
}

/// Scalar data over F_p; entries in [0, p).
struct ScalarData {
  Params params;
  std::uint32_t p = kDefaultPrime;
  std::vector<std::uint32_t> values;  // indexed by variable
  std::uint32_t b = 0;
  DenseMatrix<std::int64_t> V, X;

  /// (XV)_{ik} mod p.
  DenseMatrix<std::int64_t> XV() const {
    DenseMatrix<std::int64_t> c(params.g, params.e);
    for (int i = 0; i < params.g; ++i)
      for (int k = 0; k < params.e; ++k) {
        std::uint64_t s = 0;
        for (int j = 0; j < params.f(); ++j) s = (s + static_cast<std::uint64_t>(X(i, j)) * V(j, k)) % p;
        c(i, k) = static_cast<std::int64_t>(s);
      }
    return c;
  }
};

/// Evaluation morphism at an explicit point (values indexed by variable, reduced mod p).
inline ScalarData evaluate_data(const GenericData& d, std::vector<std::uint32_t> values, std::uint32_t p) {
  const Params& pr = d.params;
  VariableLayout lay{pr};
  if (static_cast<int>(values.size()) != lay.count()) throw ParameterError("wrong number of values");
  for (auto& v : values) v %= p;
  ScalarData s{pr, p, values, 0, DenseMatrix<std::int64_t>(pr.f(), pr.e), DenseMatrix<std::int64_t>(pr.g, pr.f())};
  s.b = d.b.evaluate_mod(values, p);
  for (int j = 0; j < pr.f(); ++j)
    for (int k = 0; k < pr.e; ++k) s.V(j, k) = d.V(j, k).evaluate_mod(values, p);
  for (int i = 0; i < pr.g; ++i)
    for (int j = 0; j < pr.f(); ++j) s.X(i, j) = d.X(i, j).evaluate_mod(values, p);
  return s;
}

/// Deterministic pseudo-random point from the seed (raw mt19937_64 output, which the
/// standard fixes bit for bit, reduced mod p).
inline ScalarData specialize(const GenericData& d, std::uint32_t p, std::uint64_t seed) {
  if (!is_prime(p)) throw DomainError("specialize: modulus is not prime");
  VariableLayout lay{d.params};
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> values(static_cast<std::size_t>(lay.count()));
  for (auto& v : values) v = static_cast<std::uint32_t>(rng() % p);
  return evaluate_data(d, std::move(values), p);
}

}  // namespace unires
