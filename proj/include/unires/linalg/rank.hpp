#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "unires/linalg/checked.hpp"
#include "unires/linalg/domain.hpp"
#include "unires/linalg/sparse_matrix.hpp"

namespace unires {

using ModRow = std::vector<std::pair<int, std::uint32_t>>;

namespace detail {

inline std::size_t dense_rank_mod_p(const std::vector<ModRow>& rows, int ncols, std::uint32_t p) {
  const std::size_t n = rows.size(), m = static_cast<std::size_t>(ncols);
  if (n == 0 || m == 0) return 0;
  PrimeField fp{p};
  std::size_t rank = 0;
  if (p < (1u << 26)) {
    // doubles hold products below 2^52 exactly, so the inner update vectorizes
    const double dp = p, invp = 1.0 / dp;
    std::vector<double> a(n * m, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (auto [c, v] : rows[r]) a[r * m + c] = v;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
      std::size_t piv = n;
      for (std::size_t r = rank; r < n; ++r)
        if (a[r * m + col] != 0.0) {
          piv = r;
          break;
        }
      if (piv == n) continue;
      if (piv != rank)
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * m + col),
                         a.begin() + static_cast<std::ptrdiff_t>(piv * m + m),
                         a.begin() + static_cast<std::ptrdiff_t>(rank * m + col));
      double* pr = &a[rank * m];
      const double inv = fp.inv(static_cast<std::uint32_t>(pr[col]));
      for (std::size_t j = col; j < m; ++j) {
        double x = pr[j] * inv;
        x -= dp * std::floor(x * invp);
        x += (x < 0.0) ? dp : 0.0;
        x -= (x >= dp) ? dp : 0.0;
        pr[j] = x;
      }
      for (std::size_t r = rank + 1; r < n; ++r) {
        double* rr = &a[r * m];
        const double f = rr[col];
        if (f == 0.0) continue;
        for (std::size_t j = col; j < m; ++j) {
          double x = rr[j] - f * pr[j];
          x -= dp * std::floor(x * invp);
          x += (x < 0.0) ? dp : 0.0;
          x -= (x >= dp) ? dp : 0.0;
          rr[j] = x;
        }
      }
      ++rank;
    }
    return rank;
  }
  std::vector<std::uint64_t> a(n * m, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (auto [c, v] : rows[r]) a[r * m + c] = v;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = rank; r < n; ++r)
      if (a[r * m + col]) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    if (piv != rank)
      for (std::size_t j = col; j < m; ++j) std::swap(a[piv * m + j], a[rank * m + j]);
    std::uint64_t* pr = &a[rank * m];
    const std::uint64_t inv = fp.inv(static_cast<std::uint32_t>(pr[col]));
    for (std::size_t j = col; j < m; ++j) pr[j] = pr[j] * inv % p;
    for (std::size_t r = rank + 1; r < n; ++r) {
      std::uint64_t* rr = &a[r * m];
      const std::uint64_t f = rr[col];
      if (!f) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = col; j < m; ++j) rr[j] = (rr[j] + nf * pr[j]) % p;
    }
    ++rank;
  }
  return rank;
}

// One round of pivot selection in the style of Faugere-Lachartre: every row's leading
// column is a candidate; for each column the shortest candidate row becomes a pivot.
// Pivot rows are upper triangular after permutation, so non-pivot rows reduce against
// them without fill among the pivots. Returns the number of pivots and replaces `rows`
// by the Schur complement on the non-pivot columns.
inline std::size_t eliminate_round_mod_p(std::vector<ModRow>& rows, int& ncols, std::uint32_t p) {
  PrimeField fp{p};
  std::vector<int> pivot_of(static_cast<std::size_t>(ncols), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int lead = rows[r].front().first;
    int& cur = pivot_of[lead];
    if (cur < 0 || rows[cur].size() > rows[r].size()) cur = static_cast<int>(r);
  }
  std::vector<char> is_pivot_row(rows.size(), 0);
  std::size_t npiv = 0;
  for (int c = 0; c < ncols; ++c)
    if (pivot_of[c] >= 0) {
      is_pivot_row[pivot_of[c]] = 1;
      ++npiv;
      ModRow& pr = rows[pivot_of[c]];
      std::uint32_t inv = fp.inv(pr.front().second);
      for (auto& e : pr) e.second = fp.mul(e.second, inv);
    }
  std::vector<int> newcol(static_cast<std::size_t>(ncols), -1);
  int nc = 0;
  for (int c = 0; c < ncols; ++c)
    if (pivot_of[c] < 0) newcol[c] = nc++;

  std::vector<ModRow> out;
  std::vector<std::uint32_t> acc(static_cast<std::size_t>(ncols), 0);
  std::vector<char> queued(static_cast<std::size_t>(ncols), 0);
  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
  std::vector<int> kept;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (is_pivot_row[r]) continue;
    for (auto [c, v] : rows[r]) {
      acc[c] = v;
      queued[c] = 1;
      heap.push(c);
    }
    kept.clear();
    while (!heap.empty()) {
      int c = heap.top();
      heap.pop();
      queued[c] = 0;
      std::uint32_t v = acc[c];
      if (!v) continue;
      int pr = pivot_of[c];
      if (pr < 0) {
        kept.push_back(c);
        continue;
      }
      std::uint32_t f = fp.neg(v);
      for (auto [cc, pv] : rows[pr]) {
        acc[cc] = fp.add(acc[cc], fp.mul(f, pv));
        if (!queued[cc] && cc != c) {
          queued[cc] = 1;
          heap.push(cc);
        }
      }
      acc[c] = 0;
    }
    ModRow nr;
    for (int c : kept) {
      if (acc[c]) nr.emplace_back(newcol[c], acc[c]);
      acc[c] = 0;
    }
    if (!nr.empty()) out.push_back(std::move(nr));
  }
  rows.swap(out);
  ncols = nc;
  return npiv;
}

}  // namespace detail

/// Rank over F_p of the matrix given by sparse rows (column-sorted, values in [0,p)).
inline std::size_t rank_mod_p(std::vector<ModRow> rows, int ncols, std::uint32_t p) {
  std::size_t rank = 0;
  while (true) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const ModRow& r) { return r.empty(); }),
               rows.end());
    if (rows.empty() || ncols == 0) return rank;
    std::size_t nnz = 0;
    for (const auto& r : rows) nnz += r.size();
    double cells = static_cast<double>(rows.size()) * ncols;
    if (cells <= 4096.0 || static_cast<double>(nnz) > 0.08 * cells)
      return rank + detail::dense_rank_mod_p(rows, ncols, p);
    std::sort(rows.begin(), rows.end(), [](const ModRow& a, const ModRow& b) { return a.size() < b.size(); });
    rank += detail::eliminate_round_mod_p(rows, ncols, p);
  }
}

namespace detail {

template <class I>
struct IntOps;

template <>
struct IntOps<std::int64_t> {
  static std::int64_t mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
  static std::int64_t sub(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
  static std::int64_t abs(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }
  static bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
};

template <>
struct IntOps<mpz_class> {
  static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
  static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
  static mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static mpz_class abs(const mpz_class& a) { return ::abs(a); }
  static bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }
};

template <class I>
using IntRow = std::vector<std::pair<int, I>>;

// row := a*row - b*piv, then divided by the content; a = lead(piv)/g, b = lead(row)/g.
template <class I>
void reduce_row(IntRow<I>& row, const IntRow<I>& piv, const I& rlead, const I& plead, IntRow<I>& scratch) {
  using O = IntOps<I>;
  I g = O::gcd(rlead, plead);
  I a = plead / g, b = rlead / g;
  bool unit_a = (a == 1);
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
      scratch.emplace_back(row[i].first, unit_a ? row[i].second : O::mul(a, row[i].second));
      ++i;
    } else if (i == row.size() || piv[j].first < row[i].first) {
      scratch.emplace_back(piv[j].first, O::sub(I(0), O::mul(b, piv[j].second)));
      ++j;
    } else {
      I v = O::sub(unit_a ? row[i].second : O::mul(a, row[i].second), O::mul(b, piv[j].second));
      if (v != 0) scratch.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  if (!unit_a && !scratch.empty()) {
    I c(0);
    for (auto& e : scratch) {
      c = O::gcd(c, e.second);
      if (O::is_unit(c)) break;
    }
    if (!O::is_unit(c))
      for (auto& e : scratch) e.second /= c;
  }
  row.swap(scratch);
}

// Fraction-free sparse elimination over Z; the rank over Q of the integer matrix.
template <class I>
std::size_t rank_integer_rows(std::vector<IntRow<I>> rows, int ncols) {
  std::size_t rank = 0;
  IntRow<I> scratch;
  while (true) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IntRow<I>& r) { return r.empty(); }),
               rows.end());
    if (rows.empty()) return rank;
    // prefer short rows whose leading entry is a unit
    std::vector<int> pivot_of(static_cast<std::size_t>(ncols), -1);
    auto better = [&](std::size_t r, int cur) {
      bool ur = IntOps<I>::is_unit(rows[r].front().second), uc = IntOps<I>::is_unit(rows[cur].front().second);
      if (ur != uc) return ur;
      return rows[r].size() < rows[cur].size();
    };
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int& cur = pivot_of[rows[r].front().first];
      if (cur < 0 || better(r, cur)) cur = static_cast<int>(r);
    }
    std::vector<char> is_pivot(rows.size(), 0);
    for (int c = 0; c < ncols; ++c)
      if (pivot_of[c] >= 0) {
        is_pivot[pivot_of[c]] = 1;
        ++rank;
      }
    std::vector<IntRow<I>> next;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_pivot[r]) continue;
      IntRow<I>& row = rows[r];
      std::size_t pos = 0;
      while (pos < row.size()) {
        int c = row[pos].first;
        int pr = pivot_of[c];
        if (pr < 0) {
          ++pos;
          continue;
        }
        // the pivot row has no support left of c, so earlier entries only get scaled
        I rlead = row[pos].second;
        reduce_row(row, rows[pr], rlead, rows[pr].front().second, scratch);
      }
      if (!row.empty()) next.push_back(std::move(row));
    }
    std::vector<int> newcol(static_cast<std::size_t>(ncols), -1);
    int nc = 0;
    for (int c = 0; c < ncols; ++c)
      if (pivot_of[c] < 0) newcol[c] = nc++;
    for (auto& row : next)
      for (auto& e : row) e.first = newcol[e.first];
    rows.swap(next);
    ncols = nc;
  }
}

}  // namespace detail

/// Rank over Q of an integer matrix given by sparse rows. Exact: int64 with overflow
/// detection, restarting in GMP integers when a word overflows.
inline std::size_t rank_rational_rows(const std::vector<std::vector<std::pair<int, std::int64_t>>>& rows,
                                      int ncols) {
  try {
    return detail::rank_integer_rows<std::int64_t>(rows, ncols);
  } catch (const IntegerOverflow&) {
    std::vector<detail::IntRow<mpz_class>> big(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto [c, v] : rows[r]) big[r].emplace_back(c, mpz_class(static_cast<long>(v)));
    return detail::rank_integer_rows<mpz_class>(std::move(big), ncols);
  }
}

inline std::vector<ModRow> to_mod_rows(const SparseMatrix<std::int64_t>& m, std::uint32_t p) {
  std::vector<ModRow> rows(static_cast<std::size_t>(m.rows()));
  PrimeField fp{p};
  for (int c = 0; c < m.cols(); ++c)
    for (std::size_t k = m.col_ptr()[c]; k < m.col_ptr()[c + 1]; ++k) {
      std::uint32_t v = fp.reduce(m.values()[k]);
      if (v) rows[m.row_idx()[k]].emplace_back(c, v);
    }
  return rows;
}

/// Rank of an integer-entry matrix over the field k.
inline std::size_t rank_over(const SparseMatrix<std::int64_t>& m, const CoefficientDomain& k) {
  switch (k.kind()) {
    case DomainKind::integers:
      throw DomainError("rank: integer domain; use smith_normal_form");
    case DomainKind::prime_field:
      return rank_mod_p(to_mod_rows(m, k.characteristic()), m.cols(), k.characteristic());
    case DomainKind::rationals:
      return rank_rational_rows(m.row_lists(), m.cols());
  }
  return 0;
}

/// Rank over the matrix's field. Integer-domain matrices are rejected (use smith_normal_form).
inline std::size_t rank(const SparseMatrix<std::int64_t>& m) { return rank_over(m, m.domain()); }

inline std::size_t rank(const SparseMatrix<mpq_class>& m) {
  if (!m.domain().is_field()) throw DomainError("rank: integer domain; use smith_normal_form");
  if (m.domain().kind() == DomainKind::prime_field) {
    std::vector<ModRow> rows(static_cast<std::size_t>(m.rows()));
    PrimeField fp{m.domain().characteristic()};
    for (auto& t : m.entries()) {
      mpz_class num = t.value.get_num() % fp.p, den = t.value.get_den() % fp.p;
      if (den == 0) throw DomainError("rank: denominator divisible by p");
      std::uint32_t v = fp.mul(fp.reduce(num.get_si()), fp.inv(fp.reduce(den.get_si())));
      if (v) rows[t.row].emplace_back(t.col, v);
    }
    for (auto& r : rows) std::sort(r.begin(), r.end());
    return rank_mod_p(std::move(rows), m.cols(), fp.p);
  }
  // clear denominators row by row; row scaling preserves rank
  std::vector<detail::IntRow<mpz_class>> rows(static_cast<std::size_t>(m.rows()));
  auto lists = m.row_lists();
  for (std::size_t r = 0; r < lists.size(); ++r) {
    mpz_class l = 1;
    for (auto& [c, v] : lists[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    for (auto& [c, v] : lists[r]) rows[r].emplace_back(c, mpz_class(v.get_num() * (l / v.get_den())));
  }
  return detail::rank_integer_rows<mpz_class>(std::move(rows), m.cols());
}

}  // namespace unires
