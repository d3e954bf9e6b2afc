#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unires {

/// A monomial as the nondecreasing list of its variable indices (x_0^2 x_3 = {0,0,3}).
using Monomial = std::vector<std::uint16_t>;

/// Lexicographic order on exponent vectors, variable 0 most significant.
inline bool monomial_greater(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() > b.size();
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial m(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), m.begin());
  return m;
}

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_greater(a, b); }
};

/// Polynomial over Z, terms sorted by decreasing monomial; no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, mpz_class>;

  Polynomial() = default;
  Polynomial(long c) {  // NOLINT: implicit so that T(0), T(1) work generically
    if (c != 0) terms_.push_back({Monomial{}, mpz_class(c)});
  }
  static Polynomial variable(std::uint16_t v) {
    Polynomial p;
    p.terms_.push_back({Monomial{v}, mpz_class(1)});
    return p;
  }
  static Polynomial from_terms(std::vector<Term> terms) {
    std::map<Monomial, mpz_class, MonomialGreater> acc;
    for (auto& [m, c] : terms) {
      std::sort(m.begin(), m.end());
      acc[m] += c;
    }
    Polynomial p;
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    *this = add(*this, o, 1);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    *this = add(*this, o, -1);
    return *this;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add(a, b, -1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && a.terms_[0].first.empty()) return b.scaled(a.terms_[0].second);
    if (b.terms_.size() == 1 && b.terms_[0].first.empty()) return a.scaled(b.terms_[0].second);
    std::map<Monomial, mpz_class, MonomialGreater> acc;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) acc[monomial_mul(ma, mb)] += ca * cb;
    Polynomial p;
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back({m, std::move(c)});
    return p;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  Polynomial scaled(const mpz_class& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Value mod p at the point assigning values[v] to variable v.
  std::uint32_t evaluate_mod(const std::vector<std::uint32_t>& values, std::uint32_t p) const {
    std::uint64_t total = 0;
    for (const auto& [m, c] : terms_) {
      std::uint64_t t = mpz_fdiv_ui(c.get_mpz_t(), p);
      for (auto v : m) t = t * values.at(v) % p;
      total = (total + t) % p;
    }
    return static_cast<std::uint32_t>(total);
  }

  /// Exact integer value at an integer point.
  mpz_class evaluate(const std::vector<mpz_class>& values) const {
    mpz_class total = 0;
    for (const auto& [m, c] : terms_) {
      mpz_class t = c;
      for (auto v : m) t *= values.at(v);
      total += t;
    }
    return total;
  }

  /// Deterministic text: terms in decreasing lex order, explicit coefficients,
  /// variables named by `name`, e.g. "2*b*v_1_1^2 - x_2_1".
  std::string to_string(const std::function<std::string(std::uint16_t)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      mpz_class a = abs(c);
      if (first)
        out += (c < 0 ? "-" : "");
      else
        out += (c < 0 ? " - " : " + ");
      first = false;
      bool wrote = false;
      if (a != 1 || m.empty()) {
        out += a.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (wrote) out += "*";
        out += name(m[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        wrote = true;
        i = j;
      }
    }
    return out;
  }

 private:
  static Polynomial add(const Polynomial& a, const Polynomial& b, int sign) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && monomial_greater(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || monomial_greater(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.push_back({b.terms_[j].first, sign > 0 ? b.terms_[j].second : mpz_class(-b.terms_[j].second)});
        ++j;
      } else {
        mpz_class c = a.terms_[i].second;
        if (sign > 0)
          c += b.terms_[j].second;
        else
          c -= b.terms_[j].second;
        if (c != 0) r.terms_.push_back({a.terms_[i].first, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

}  // namespace unires
