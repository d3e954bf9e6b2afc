#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "unires/multilinear/combinatorics.hpp"

namespace unires {

class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Basis element f_I of the exterior power, I given as a bit mask over {0..n-1}.
struct ExteriorBasisElement {
  int n = 0;
  Mask mask = 0;
  int degree() const { return popcount(mask); }
  bool operator==(const ExteriorBasisElement&) const = default;
};

inline std::vector<ExteriorBasisElement> enum_exterior(int n, int d) {
  std::vector<ExteriorBasisElement> out;
  for (Mask m : enum_subsets(n, d)) out.push_back({n, m});
  return out;
}

/// Position of each subset of a fixed size inside its lexicographic enumeration.
class SubsetIndex {
 public:
  SubsetIndex() = default;
  SubsetIndex(int n, int d) : list_(enum_subsets(n, d)) {
    pos_.reserve(list_.size() * 2);
    for (std::size_t i = 0; i < list_.size(); ++i) pos_.emplace(list_[i], static_cast<int>(i));
  }
  int size() const { return static_cast<int>(list_.size()); }
  Mask at(int i) const { return list_[i]; }
  int find(Mask m) const {
    auto it = pos_.find(m);
    return it == pos_.end() ? -1 : it->second;
  }
  const std::vector<Mask>& list() const { return list_; }

 private:
  std::vector<Mask> list_;
  std::unordered_map<Mask, int> pos_;
};

/// A basis element times a sign; sign 0 encodes the zero element.
struct SignedMask {
  int sign = 0;
  Mask mask = 0;
  bool operator==(const SignedMask&) const = default;
};

// Two interior-product conventions related by reversing every wedge product.
// The complex uses `adopted`: a dual element acts from the right,
//   <beta, alpha(b)> = <beta ^ alpha, b>,   so  phi_I(f_J) = sgn(J\I, I) f_{J\I},
// and an element of the exterior algebra acts on the dual algebra from the left,
//   f_J(phi_I) = sgn(J, I\J) phi_{I\J}.
// `mirrored` is the reversal conjugate: phi_I(f_J) = sgn(I, J\I), f_J(phi_I) = sgn(I\J, J).
enum class InteriorConvention { adopted, mirrored };

/// alpha(b) for basis elements alpha = phi_I of the dual algebra and b = f_J.
inline SignedMask contract(Mask alpha, Mask b,
                           InteriorConvention conv = InteriorConvention::adopted) {
  if ((alpha & b) != alpha) return {};
  Mask rest = b & ~alpha;
  int s = conv == InteriorConvention::adopted ? shuffle_sign(rest, alpha) : shuffle_sign(alpha, rest);
  return {s, rest};
}

/// b(alpha): the module element b = f_J acting on the dual basis element alpha = phi_I.
inline SignedMask contract_dual(Mask b, Mask alpha,
                                InteriorConvention conv = InteriorConvention::adopted) {
  if ((alpha & b) != b) return {};
  Mask rest = alpha & ~b;
  int s = conv == InteriorConvention::adopted ? shuffle_sign(b, rest) : shuffle_sign(rest, b);
  return {s, rest};
}

inline SignedMask wedge(Mask a, Mask b) {
  if (a & b) return {};
  return {shuffle_sign(a, b), a | b};
}

inline SignedMask contract(const ExteriorBasisElement& alpha, const ExteriorBasisElement& b,
                           InteriorConvention conv = InteriorConvention::adopted) {
  if (alpha.n != b.n) throw AmbientMismatch("contract: ambient ranks differ");
  return contract(alpha.mask, b.mask, conv);
}

/// Linear combinations of exterior basis elements with coefficients in T.
template <class T>
using ExteriorVector = std::map<Mask, T>;

template <class T>
void accumulate(ExteriorVector<T>& v, Mask m, const T& c) {
  if (c == T(0)) return;
  auto [it, inserted] = v.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == T(0)) v.erase(it);
  }
}

template <class T>
ExteriorVector<T> contract(const ExteriorVector<T>& alpha, const ExteriorVector<T>& b,
                           InteriorConvention conv = InteriorConvention::adopted) {
  ExteriorVector<T> out;
  for (const auto& [ma, ca] : alpha)
    for (const auto& [mb, cb] : b) {
      SignedMask s = contract(ma, mb, conv);
      if (s.sign) accumulate(out, s.mask, T(s.sign) * ca * cb);
    }
  return out;
}

template <class T>
ExteriorVector<T> contract_dual(const ExteriorVector<T>& b, const ExteriorVector<T>& alpha,
                                InteriorConvention conv = InteriorConvention::adopted) {
  ExteriorVector<T> out;
  for (const auto& [mb, cb] : b)
    for (const auto& [ma, ca] : alpha) {
      SignedMask s = contract_dual(mb, ma, conv);
      if (s.sign) accumulate(out, s.mask, T(s.sign) * ca * cb);
    }
  return out;
}

template <class T>
ExteriorVector<T> wedge(const ExteriorVector<T>& a, const ExteriorVector<T>& b) {
  ExteriorVector<T> out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      SignedMask s = wedge(ma, mb);
      if (s.sign) accumulate(out, s.mask, T(s.sign) * ca * cb);
    }
  return out;
}

/// Small dense matrix, row-major.
template <class T>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<T> a;
  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0)) {}
  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// det of the submatrix on the given rows and columns (equal counts), by Laplace expansion.
template <class T>
T minor_det(const DenseMatrix<T>& m, Mask rows, Mask cols) {
  std::vector<int> r = mask_indices(rows), c = mask_indices(cols);
  if (r.size() != c.size()) throw std::invalid_argument("minor_det: non-square selection");
  if (r.empty()) return T(1);
  auto rec = [&](auto&& self, std::size_t depth, Mask used) -> T {
    if (depth == r.size()) return T(1);
    T total(0);
    int parity = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (used & bit(static_cast<int>(j))) continue;
      const T& x = m(r[depth], c[j]);
      if (!(x == T(0))) {
        T sub = self(self, depth + 1, used | bit(static_cast<int>(j)));
        if (parity) total -= x * sub;
        else total += x * sub;
      }
      parity ^= 1;
    }
    return total;
  };
  return rec(rec, 0, 0);
}

/// (wedge^k M)(v) for M: R^cols -> R^rows, v in wedge^k R^cols.
template <class T>
ExteriorVector<T> exterior_power_apply(const DenseMatrix<T>& m, const ExteriorVector<T>& v) {
  ExteriorVector<T> out;
  for (const auto& [cmask, cv] : v) {
    int k = popcount(cmask);
    for (Mask rmask : enum_subsets(m.rows, k)) accumulate(out, rmask, minor_det(m, rmask, cmask) * cv);
  }
  return out;
}

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& m) {
  DenseMatrix<T> t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

}  // namespace unires
