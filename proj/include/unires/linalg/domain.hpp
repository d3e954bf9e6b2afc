#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace unires {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

enum class DomainKind { integers, rationals, prime_field };

/// Coefficient domain of a matrix or complex: Z, Q, or F_p with p < 2^31.
class CoefficientDomain {
 public:
  static CoefficientDomain integers() { return CoefficientDomain(DomainKind::integers, 0); }
  static CoefficientDomain rationals() { return CoefficientDomain(DomainKind::rationals, 0); }
  static CoefficientDomain prime_field(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw DomainError("not a prime below 2^31: " + std::to_string(p));
    return CoefficientDomain(DomainKind::prime_field, p);
  }

  /// Parses "z", "q" or "fp:<prime>".
  static CoefficientDomain parse(const std::string& spec) {
    if (spec == "z" || spec == "Z") return integers();
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.rfind("fp:", 0) == 0) {
      const std::string digits = spec.substr(3);
      if (digits.empty() || digits.size() > 10 ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("bad field spec: " + spec);
      return prime_field(static_cast<std::uint32_t>(std::stoull(digits)));
    }
    throw DomainError("bad field spec: " + spec);
  }

  DomainKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != DomainKind::integers; }

  std::string to_string() const {
    switch (kind_) {
      case DomainKind::integers: return "z";
      case DomainKind::rationals: return "q";
      case DomainKind::prime_field: return "fp:" + std::to_string(p_);
    }
    return "?";
  }

  bool operator==(const CoefficientDomain&) const = default;

 private:
  CoefficientDomain(DomainKind k, std::uint32_t p) : kind_(k), p_(p) {}
  DomainKind kind_;
  std::uint32_t p_;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

// Arithmetic in F_p on canonical representatives [0, p).
struct PrimeField {
  std::uint32_t p;

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("inverse of zero in F_p");
    return pow(a, p - 2);
  }
};

}  // namespace unires
