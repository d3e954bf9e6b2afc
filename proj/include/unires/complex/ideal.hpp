#pragma once

#include <string>
#include <vector>

#include "unires/complex/differential.hpp"
#include "unires/multilinear/exterior.hpp"

namespace unires {

/// Generators of J: lambda(phi_A) for the e-subsets A of [f] in lex order, then the
/// entries (XV)_{ik} in cell order (k,i) -> k*g+i. lambda is evaluated from its defining
/// formula (-1)^{eg} [(wedge^g X*)(omega_G*)](omega_F) + b (wedge^e V)(omega_E), paired
/// against phi_A, using the exterior-algebra routines rather than the differential.
inline std::vector<Polynomial> ideal_J(const GenericData& d) {
  const Params& p = d.params;
  const int e = p.e, g = p.g, f = p.f();
  std::vector<Polynomial> out;
  ExteriorVector<Polynomial> omega_g{{full_mask(g), Polynomial(1)}};
  auto wx = exterior_power_apply(transpose(d.X), omega_g);  // in wedge^g F*
  // alpha(omega_F) for each basis alpha = phi_C, collected in wedge^e F
  ExteriorVector<Polynomial> first;
  for (const auto& [cmask, coeff] : wx) {
    SignedMask s = contract(cmask, full_mask(f));
    if (s.sign) accumulate(first, s.mask, coeff.scaled(mpz_class(s.sign)));
  }
  const long sign_eg = (p.eg() & 1) ? -1 : 1;
  for (Mask A : enum_subsets(f, e)) {
    Polynomial term = first.count(A) ? first.at(A).scaled(mpz_class(sign_eg)) : Polynomial();
    // [(wedge^e V*)(phi_A)](omega_E): phi_A maps to det V(A) eps*_[e], which takes omega_E to 1
    ExteriorVector<Polynomial> phi{{A, Polynomial(1)}};
    auto vv = exterior_power_apply(transpose(d.V), phi);
    Polynomial second = vv.count(full_mask(e)) ? vv.at(full_mask(e)) : Polynomial();
    out.push_back(term + d.b * second);
  }
  auto xv = matmul(d.X, d.V);
  for (int k = 0; k < e; ++k)
    for (int i = 0; i < g; ++i) out.push_back(xv(i, k));
  return out;
}

/// The generators of the defining ideal as written in the introduction:
/// det X(Abar) + nabla_{Abar,A} b det V(A) for the e-subsets A, then I_1(XV).
inline std::vector<Polynomial> ideal_presentation(const GenericData& d) {
  const Params& p = d.params;
  const int e = p.e, g = p.g, f = p.f();
  std::vector<Polynomial> out;
  for (Mask A : enum_subsets(f, e)) {
    Mask Abar = full_mask(f) & ~A;
    int nabla = shuffle_sign(Abar, A);
    out.push_back(minor_det(d.X, full_mask(g), Abar) + d.b * minor_det(d.V, A, full_mask(e)).scaled(mpz_class(nabla)));
  }
  auto xv = matmul(d.X, d.V);
  for (int k = 0; k < e; ++k)
    for (int i = 0; i < g; ++i) out.push_back(xv(i, k));
  return out;
}

struct IdealReport {
  bool passed = true;
  std::vector<int> d1_vs_presentation;  // observed sign per generator (0: no match)
  std::vector<int> lambda_vs_presentation;
  std::vector<std::string> generators;  // canonical text of the presentation generators
  std::string witness;
};

/// Compares the entries of d_1 (in the basis order of F_1: A(0,0,0) then B(1)) with
/// both presentations, generator by generator, reporting the observed signs.
inline IdealReport compare_ideal(const Params& p) {
  IdealReport rep;
  auto data = make_generic(p);
  ComplexF cx(p, 1);
  auto d1 = differential_F(cx, 1, data);
  auto lam = ideal_J(data);
  auto pres = ideal_presentation(data);
  auto sign_of = [](const Polynomial& x, const Polynomial& y) {
    if (x == y) return 1;
    if (x == -y) return -1;
    return 0;
  };
  std::size_t n = pres.size();
  if (static_cast<std::size_t>(d1.cols()) != n) {
    rep.passed = false;
    rep.witness = "d_1 has " + std::to_string(d1.cols()) + " columns, expected " + std::to_string(n);
    return rep;
  }
  for (std::size_t c = 0; c < n; ++c) {
    Polynomial entry = d1.at(0, static_cast<int>(c));
    int s1 = sign_of(entry, pres[c]), s2 = sign_of(lam[c], pres[c]);
    rep.d1_vs_presentation.push_back(s1);
    rep.lambda_vs_presentation.push_back(s2);
    rep.generators.push_back(to_string(pres[c], p));
    if ((s1 == 0 || s2 == 0) && rep.passed) {
      rep.passed = false;
      rep.witness = "generator " + std::to_string(c) + ": d_1 entry " + to_string(entry, p) + ", lambda " +
                    to_string(lam[c], p) + ", presentation " + to_string(pres[c], p);
    }
  }
  return rep;
}

}  // namespace unires
