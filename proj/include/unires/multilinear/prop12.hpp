#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "unires/multilinear/exterior.hpp"

namespace unires {

struct Prop12Report {
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;
};

namespace detail {

inline ExteriorVector<std::int64_t> reduce_mod(const ExteriorVector<std::int64_t>& v, std::int64_t p) {
  ExteriorVector<std::int64_t> out;
  for (auto [m, c] : v) {
    std::int64_t r = ((c % p) + p) % p;
    if (r) out[m] = r;
  }
  return out;
}

inline std::string describe(const ExteriorVector<std::int64_t>& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [m, c] : v) {
    if (!first) os << ", ";
    first = false;
    os << c << "*[";
    bool f2 = true;
    for (int i : mask_indices(m)) {
      if (!f2) os << ' ';
      f2 = false;
      os << i + 1;
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

inline ExteriorVector<std::int64_t> random_element(int n, int d, std::mt19937_64& rng, std::int64_t p) {
  ExteriorVector<std::int64_t> v;
  std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
  for (Mask m : enum_subsets(n, d)) accumulate<std::int64_t>(v, m, dist(rng));
  return v;
}

}  // namespace detail

/// Part (a) with p = f: [b_r(alpha_q)](omega_F) against the wedge of b_r and
/// alpha_q(omega_F). Under the `mirrored` convention this is the identity verbatim.
/// Under `adopted` every product is reversed, and the identity becomes
/// [b_r(alpha_q)](omega_F) = alpha_q(omega_F) ^ b_r.
inline bool prop_1_2_a_holds(const ExteriorVector<std::int64_t>& b, const ExteriorVector<std::int64_t>& alpha,
                             int f, InteriorConvention conv, std::int64_t p, std::string* witness = nullptr) {
  ExteriorVector<std::int64_t> omega{{full_mask(f), 1}};
  auto lhs = contract(contract_dual(b, alpha, conv), omega, conv);
  auto inner = contract(alpha, omega, conv);
  auto rhs = conv == InteriorConvention::mirrored ? wedge(b, inner) : wedge(inner, b);
  if (p > 0) {
    lhs = detail::reduce_mod(lhs, p);
    rhs = detail::reduce_mod(rhs, p);
  }
  if (lhs == rhs) return true;
  if (witness)
    *witness = "(a) f=" + std::to_string(f) + " b=" + detail::describe(b) + " alpha=" + detail::describe(alpha) +
               " lhs=" + detail::describe(lhs) + " rhs=" + detail::describe(rhs);
  return false;
}

/// Part (b): (wedge^s X*)[((wedge^r X) b_r)(gamma)] = b_r[(wedge^{s+r} X*)(gamma)], X: F -> G
/// given as a g x f matrix.
inline bool prop_1_2_b_holds(const DenseMatrix<std::int64_t>& x, const ExteriorVector<std::int64_t>& b,
                             const ExteriorVector<std::int64_t>& gamma, InteriorConvention conv, std::int64_t p,
                             std::string* witness = nullptr) {
  DenseMatrix<std::int64_t> xt = transpose(x);
  auto lhs = exterior_power_apply(xt, contract_dual(exterior_power_apply(x, b), gamma, conv));
  auto rhs = contract_dual(b, exterior_power_apply(xt, gamma), conv);
  if (p > 0) {
    lhs = detail::reduce_mod(lhs, p);
    rhs = detail::reduce_mod(rhs, p);
  }
  if (lhs == rhs) return true;
  if (witness)
    *witness = "(b) b=" + detail::describe(b) + " gamma=" + detail::describe(gamma) + " lhs=" +
               detail::describe(lhs) + " rhs=" + detail::describe(rhs);
  return false;
}

/// Exhaustive basis checks of (a) and (b) for f <= max_f (with g ranging over 1..f-1 and
/// X random), followed by `trials` random instances with scalars in F_p.
inline Prop12Report prop_1_2_check(int max_f, int trials, std::int64_t p, std::uint64_t seed,
                                   InteriorConvention conv = InteriorConvention::adopted) {
  Prop12Report rep;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& w) {
    rep.passed = false;
    rep.witness = w;
    return rep;
  };
  std::string w;
  for (int f = 1; f <= max_f; ++f) {
    for (int r = 0; r <= f; ++r)
      for (int q = 0; q <= f; ++q)
        for (Mask bm : enum_subsets(f, r))
          for (Mask am : enum_subsets(f, q)) {
            ++rep.checked;
            if (!prop_1_2_a_holds({{bm, 1}}, {{am, 1}}, f, conv, 0, &w)) return fail(w);
          }
    for (int g = 1; g < f; ++g) {
      DenseMatrix<std::int64_t> x(g, f);
      std::uniform_int_distribution<std::int64_t> dist(-3, 3);
      for (auto& v : x.a) v = dist(rng);
      for (int r = 0; r <= std::min(f, g); ++r)
        for (int s = 0; s + r <= g; ++s)
          for (Mask bm : enum_subsets(f, r))
            for (Mask gm : enum_subsets(g, s + r)) {
              ++rep.checked;
              if (!prop_1_2_b_holds(x, {{bm, 1}}, {{gm, 1}}, conv, 0, &w)) return fail(w);
            }
    }
  }
  int f = std::min(max_f, 3);
  for (int t = 0; t < trials; ++t) {
    std::uniform_int_distribution<int> deg(0, f);
    int r = deg(rng), q = deg(rng);
    auto b = detail::random_element(f, r, rng, p);
    auto a = detail::random_element(f, q, rng, p);
    ++rep.checked;
    if (!prop_1_2_a_holds(b, a, f, conv, p, &w)) return fail(w);
    int g = std::max(1, f - 1);
    DenseMatrix<std::int64_t> x(g, f);
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    for (auto& v : x.a) v = dist(rng);
    int rr = std::uniform_int_distribution<int>(0, g)(rng);
    int s = std::uniform_int_distribution<int>(0, g - rr)(rng);
    auto bb = detail::random_element(f, rr, rng, p);
    auto gamma = detail::random_element(g, s + rr, rng, p);
    ++rep.checked;
    if (!prop_1_2_b_holds(x, bb, gamma, conv, p, &w)) return fail(w);
  }
  return rep;
}

}  // namespace unires
