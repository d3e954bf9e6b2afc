#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unires/linalg/sparse_matrix.hpp"

namespace unires {

// Text format: "rows cols nnz" then one "row col value" line per entry, 0-indexed,
// values as decimal integers or num/den rationals in lowest terms.

class TripletFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string scalar_to_string(std::int64_t v) { return std::to_string(v); }

inline std::string scalar_to_string(const mpq_class& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

template <class T>
void write_triplets(std::ostream& os, const SparseMatrix<T>& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (int c = 0; c < m.cols(); ++c)
    for (std::size_t k = m.col_ptr()[c]; k < m.col_ptr()[c + 1]; ++k)
      os << m.row_idx()[k] << ' ' << c << ' ' << scalar_to_string(m.values()[k]) << '\n';
}

template <class T>
std::string to_triplet_string(const SparseMatrix<T>& m) {
  std::ostringstream os;
  write_triplets(os, m);
  return os.str();
}

namespace detail {

inline mpq_class parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return s.find_first_not_of("0123456789", i) == std::string::npos;
  };
  std::string num = tok.substr(0, slash);
  if (!valid_int(num)) throw TripletFormatError("bad value: " + tok);
  if (num[0] == '+') num.erase(0, 1);
  mpq_class q;
  if (slash == std::string::npos) {
    q = mpq_class(mpz_class(num));
  } else {
    std::string den = tok.substr(slash + 1);
    if (!valid_int(den) || den[0] == '-' || den[0] == '+') throw TripletFormatError("bad value: " + tok);
    mpz_class d(den);
    if (d == 0) throw TripletFormatError("zero denominator: " + tok);
    q = mpq_class(mpz_class(num), d);
    q.canonicalize();
  }
  return q;
}

template <class F>
void read_body(std::istream& is, int& rows, int& cols, F&& on_entry) {
  long long r, c, n;
  if (!(is >> r >> c >> n) || r < 0 || c < 0 || n < 0) throw TripletFormatError("bad header line");
  rows = static_cast<int>(r);
  cols = static_cast<int>(c);
  for (long long k = 0; k < n; ++k) {
    long long i, j;
    std::string v;
    if (!(is >> i >> j >> v)) throw TripletFormatError("truncated entry list");
    on_entry(static_cast<int>(i), static_cast<int>(j), v);
  }
}

}  // namespace detail

inline SparseMatrix<mpq_class> read_triplets_rational(std::istream& is,
                                                      CoefficientDomain domain = CoefficientDomain::rationals()) {
  int rows = 0, cols = 0;
  std::vector<Triplet<mpq_class>> e;
  detail::read_body(is, rows, cols, [&](int i, int j, const std::string& v) {
    e.push_back({i, j, detail::parse_rational(v)});
  });
  return SparseMatrix<mpq_class>::from_triplets(rows, cols, std::move(e), domain);
}

/// Integer entries only; used for Z and F_p matrices.
inline SparseMatrix<std::int64_t> read_triplets_integer(std::istream& is,
                                                        CoefficientDomain domain = CoefficientDomain::integers()) {
  int rows = 0, cols = 0;
  std::vector<Triplet<std::int64_t>> e;
  detail::read_body(is, rows, cols, [&](int i, int j, const std::string& v) {
    mpq_class q = detail::parse_rational(v);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw TripletFormatError("not a word-size integer: " + v);
    e.push_back({i, j, static_cast<std::int64_t>(q.get_num().get_si())});
  });
  return SparseMatrix<std::int64_t>::from_triplets(rows, cols, std::move(e), domain);
}

}  // namespace unires
