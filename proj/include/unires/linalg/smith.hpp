#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unires/linalg/sparse_matrix.hpp"

namespace unires {

using MpzMatrix = std::vector<std::vector<mpz_class>>;

/// m = left * diag(d_1..d_r, 0..) * right, with left and right unimodular.
struct SmithForm {
  std::vector<mpz_class> invariant_factors;
  std::size_t rank = 0;
  MpzMatrix left;   // rows x rows
  MpzMatrix right;  // cols x cols
};

inline MpzMatrix to_dense(const SparseMatrix<std::int64_t>& m) {
  MpzMatrix a(static_cast<std::size_t>(m.rows()), std::vector<mpz_class>(static_cast<std::size_t>(m.cols())));
  for (const auto& t : m.entries()) a[t.row][t.col] = static_cast<long>(t.value);
  return a;
}

inline MpzMatrix identity_matrix(std::size_t n) {
  MpzMatrix a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

inline MpzMatrix mat_mul(const MpzMatrix& a, const MpzMatrix& b, std::size_t inner) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  MpzMatrix c(n, std::vector<mpz_class>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Classical row/column reduction with smallest-pivot selection; dense GMP arithmetic.
inline SmithForm smith_normal_form_dense(MpzMatrix a, std::size_t rows, std::size_t cols) {
  SmithForm out;
  out.left = identity_matrix(rows);
  out.right = identity_matrix(cols);
  auto& L = out.left;
  auto& R = out.right;
  // row_i -= q row_t  ==>  L col_t += q L col_i ; col_j -= q col_t  ==>  R row_t += q R row_j
  auto row_sub = [&](std::size_t i, std::size_t t, const mpz_class& q) {
    for (std::size_t j = 0; j < cols; ++j)
      if (a[t][j] != 0) a[i][j] -= q * a[t][j];
    for (std::size_t k = 0; k < rows; ++k)
      if (L[k][i] != 0) L[k][t] += q * L[k][i];
  };
  auto col_sub = [&](std::size_t j, std::size_t t, const mpz_class& q) {
    for (std::size_t i = 0; i < rows; ++i)
      if (a[i][t] != 0) a[i][j] -= q * a[i][t];
    for (std::size_t k = 0; k < cols; ++k)
      if (R[j][k] != 0) R[t][k] += q * R[j][k];
  };
  auto row_swap = [&](std::size_t i, std::size_t t) {
    if (i == t) return;
    std::swap(a[i], a[t]);
    for (std::size_t k = 0; k < rows; ++k) std::swap(L[k][i], L[k][t]);
  };
  auto col_swap = [&](std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][j], a[i][t]);
    std::swap(R[j], R[t]);
  };

  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    // smallest nonzero in the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    row_swap(t, pi);
    col_swap(t, pj);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_sub(i, t, q);
        if (a[i][t] != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_sub(j, t, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the trailing block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_sub(t, bad, mpz_class(-1));  // row_t += row_bad
    }
    if (a[t][t] < 0) {
      a[t][t] = -a[t][t];
      for (std::size_t k = 0; k < rows; ++k) L[k][t] = -L[k][t];
    }
    out.invariant_factors.push_back(a[t][t]);
  }
  out.rank = out.invariant_factors.size();
  return out;
}

inline SmithForm smith_normal_form(const SparseMatrix<std::int64_t>& m) {
  if (m.domain().kind() != DomainKind::integers) throw DomainError("smith_normal_form: integer domain required");
  return smith_normal_form_dense(to_dense(m), static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
}

/// left * diag * right, for checking a computed form against its input.
inline MpzMatrix reassemble(const SmithForm& s, std::size_t rows, std::size_t cols) {
  MpzMatrix d(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < s.rank; ++i) d[i][i] = s.invariant_factors[i];
  return mat_mul(mat_mul(s.left, d, rows), s.right, cols);
}

/// Absolute determinant of a square integer matrix is 1 (via its own Smith form).
inline bool is_unimodular(const MpzMatrix& u) {
  std::size_t n = u.size();
  SmithForm s = smith_normal_form_dense(u, n, n);
  if (s.rank != n) return false;
  for (const auto& d : s.invariant_factors)
    if (d != 1) return false;
  return true;
}

}  // namespace unires
