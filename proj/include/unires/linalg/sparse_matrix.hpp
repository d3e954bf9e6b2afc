#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unires/linalg/checked.hpp"
#include "unires/linalg/domain.hpp"

namespace unires {

template <class T>
struct Triplet {
  int row = 0;
  int col = 0;
  T value{};
};

class MatrixShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scalar arithmetic as seen by a matrix. int64 entries are interpreted through the
// domain (reduced mod p for prime fields, overflow-checked otherwise); every other
// scalar type brings its own exact operators.
template <class T>
struct ScalarOps {
  static bool is_zero(const T& x, const CoefficientDomain&) { return x == T(0); }
  static T normalize(const T& x, const CoefficientDomain&) { return x; }
  static T add(const T& a, const T& b, const CoefficientDomain&) { return a + b; }
  static T mul(const T& a, const T& b, const CoefficientDomain&) { return a * b; }
};

template <>
struct ScalarOps<std::int64_t> {
  static std::int64_t normalize(std::int64_t x, const CoefficientDomain& d) {
    if (d.kind() != DomainKind::prime_field) return x;
    std::int64_t p = d.characteristic();
    x %= p;
    return x < 0 ? x + p : x;
  }
  static bool is_zero(std::int64_t x, const CoefficientDomain& d) { return normalize(x, d) == 0; }
  static std::int64_t add(std::int64_t a, std::int64_t b, const CoefficientDomain& d) {
    if (d.kind() == DomainKind::prime_field) return normalize(normalize(a, d) + normalize(b, d), d);
    return checked_add(a, b);
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b, const CoefficientDomain& d) {
    if (d.kind() == DomainKind::prime_field) return normalize(normalize(a, d) * normalize(b, d), d);
    return checked_mul(a, b);
  }
};

template <>
struct ScalarOps<mpq_class> {
  static bool is_zero(const mpq_class& x, const CoefficientDomain&) { return x == 0; }
  static mpq_class normalize(mpq_class x, const CoefficientDomain&) {
    x.canonicalize();
    return x;
  }
  static mpq_class add(const mpq_class& a, const mpq_class& b, const CoefficientDomain&) { return a + b; }
  static mpq_class mul(const mpq_class& a, const mpq_class& b, const CoefficientDomain&) { return a * b; }
};

/// Compressed sparse column matrix. Entries are stored in canonical form:
/// column-major, rows increasing within a column, no zeros, no duplicates.
template <class T>
class SparseMatrix {
 public:
  SparseMatrix() : SparseMatrix(0, 0) {}
  SparseMatrix(int rows, int cols, CoefficientDomain domain = CoefficientDomain::integers())
      : rows_(rows), cols_(cols), domain_(domain), col_ptr_(static_cast<std::size_t>(cols) + 1, 0) {
    if (rows < 0 || cols < 0) throw MatrixShapeError("negative matrix dimension");
  }

  /// Strict constructor: rejects out-of-range indices, duplicate positions and zero values.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet<T>> entries,
                                    CoefficientDomain domain = CoefficientDomain::integers()) {
    SparseMatrix m(rows, cols, domain);
    for (auto& t : entries) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw MatrixShapeError("triplet index out of range: (" + std::to_string(t.row) + "," +
                               std::to_string(t.col) + ")");
      if (ScalarOps<T>::is_zero(t.value, domain)) throw MatrixShapeError("stored zero in triplet list");
      t.value = ScalarOps<T>::normalize(t.value, domain);
    }
    sort_entries(entries);
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
        throw MatrixShapeError("duplicate triplet position");
    m.fill_sorted(entries);
    return m;
  }

  /// Builder semantics: duplicate positions are summed and resulting zeros dropped.
  static SparseMatrix accumulate(int rows, int cols, std::vector<Triplet<T>> entries,
                                 CoefficientDomain domain = CoefficientDomain::integers()) {
    SparseMatrix m(rows, cols, domain);
    for (const auto& t : entries)
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw MatrixShapeError("triplet index out of range");
    sort_entries(entries);
    std::vector<Triplet<T>> merged;
    merged.reserve(entries.size());
    for (auto& t : entries) {
      if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
        merged.back().value = ScalarOps<T>::add(merged.back().value, t.value, domain);
      else
        merged.push_back(std::move(t));
    }
    std::vector<Triplet<T>> kept;
    kept.reserve(merged.size());
    for (auto& t : merged)
      if (!ScalarOps<T>::is_zero(t.value, domain)) {
        t.value = ScalarOps<T>::normalize(t.value, domain);
        kept.push_back(std::move(t));
      }
    m.fill_sorted(kept);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  const CoefficientDomain& domain() const { return domain_; }
  bool is_zero() const { return values_.empty(); }

  const std::vector<std::size_t>& col_ptr() const { return col_ptr_; }
  const std::vector<int>& row_idx() const { return row_idx_; }
  const std::vector<T>& values() const { return values_; }

  std::vector<Triplet<T>> entries() const {
    std::vector<Triplet<T>> out;
    out.reserve(values_.size());
    for (int c = 0; c < cols_; ++c)
      for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) out.push_back({row_idx_[k], c, values_[k]});
    return out;
  }

  T at(int r, int c) const {
    auto b = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[c]);
    auto e = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[c + 1]);
    auto it = std::lower_bound(b, e, r);
    if (it == e || *it != r) return T(0);
    return values_[static_cast<std::size_t>(it - row_idx_.begin())];
  }

  SparseMatrix transpose() const {
    std::vector<Triplet<T>> t;
    t.reserve(values_.size());
    for (int c = 0; c < cols_; ++c)
      for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) t.push_back({c, row_idx_[k], values_[k]});
    SparseMatrix m(cols_, rows_, domain_);
    sort_entries(t);
    m.fill_sorted(t);
    return m;
  }

  /// Columns selected in the given order.
  SparseMatrix select_columns(const std::vector<int>& cols) const {
    SparseMatrix m(rows_, static_cast<int>(cols.size()), domain_);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int c = cols[j];
      for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
        m.row_idx_.push_back(row_idx_[k]);
        m.values_.push_back(values_[k]);
      }
      m.col_ptr_[j + 1] = m.values_.size();
    }
    return m;
  }

  bool operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && domain_ == o.domain_ && col_ptr_ == o.col_ptr_ &&
           row_idx_ == o.row_idx_ && values_ == o.values_;
  }

  /// Rows as sorted (column, value) lists.
  std::vector<std::vector<std::pair<int, T>>> row_lists() const {
    std::vector<std::vector<std::pair<int, T>>> out(static_cast<std::size_t>(rows_));
    for (int c = 0; c < cols_; ++c)
      for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) out[row_idx_[k]].emplace_back(c, values_[k]);
    return out;
  }

 private:
  static void sort_entries(std::vector<Triplet<T>>& e) {
    std::sort(e.begin(), e.end(), [](const Triplet<T>& a, const Triplet<T>& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
  }
  void fill_sorted(std::vector<Triplet<T>>& e) {
    row_idx_.reserve(e.size());
    values_.reserve(e.size());
    std::fill(col_ptr_.begin(), col_ptr_.end(), 0);
    for (auto& t : e) {
      ++col_ptr_[static_cast<std::size_t>(t.col) + 1];
      row_idx_.push_back(t.row);
      values_.push_back(std::move(t.value));
    }
    for (int c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
  }

  int rows_, cols_;
  CoefficientDomain domain_;
  std::vector<std::size_t> col_ptr_;
  std::vector<int> row_idx_;
  std::vector<T> values_;
};

/// a * b with the domain of a (domains must match).
template <class T>
SparseMatrix<T> multiply(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw MatrixShapeError("multiply: inner dimensions differ");
  if (!(a.domain() == b.domain())) throw DomainError("multiply: domains differ");
  const auto& dom = a.domain();
  std::vector<Triplet<T>> out;
  std::vector<T> acc(static_cast<std::size_t>(a.rows()), T(0));
  std::vector<char> touched(static_cast<std::size_t>(a.rows()), 0);
  std::vector<int> list;
  for (int c = 0; c < b.cols(); ++c) {
    list.clear();
    for (std::size_t k = b.col_ptr()[c]; k < b.col_ptr()[c + 1]; ++k) {
      int mid = b.row_idx()[k];
      const T& bv = b.values()[k];
      for (std::size_t t = a.col_ptr()[mid]; t < a.col_ptr()[mid + 1]; ++t) {
        int r = a.row_idx()[t];
        acc[r] = ScalarOps<T>::add(acc[r], ScalarOps<T>::mul(a.values()[t], bv, dom), dom);
        if (!touched[r]) {
          touched[r] = 1;
          list.push_back(r);
        }
      }
    }
    std::sort(list.begin(), list.end());
    for (int r : list) {
      if (!ScalarOps<T>::is_zero(acc[r], dom)) out.push_back({r, c, ScalarOps<T>::normalize(acc[r], dom)});
      acc[r] = T(0);
      touched[r] = 0;
    }
  }
  return SparseMatrix<T>::from_triplets(a.rows(), b.cols(), std::move(out), dom);
}

}  // namespace unires
