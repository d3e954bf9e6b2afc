#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace unires {

using Mask = std::uint64_t;

inline constexpr int kMaxRank = 8;  // bound on e and g; f = e+g <= 16, eg <= 64

inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

/// Number of exponent vectors of length n summing to a.
inline std::uint64_t divided_rank(int n, int a) {
  if (a < 0 || n < 0) return 0;
  if (n == 0) return a == 0 ? 1 : 0;
  return binomial(n - 1 + a, a);
}

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask bit(int i) { return Mask{1} << i; }

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

/// (-1)^{#{(a,b) in A x B : a > b}}, the sign that sorts the concatenation A,B.
inline int shuffle_sign(Mask a, Mask b) {
  int inv = 0;
  while (a) {
    int i = std::countr_zero(a);
    inv += std::popcount(b & (bit(i) - 1));
    a &= a - 1;
  }
  return (inv & 1) ? -1 : 1;
}

/// Subsets of {0..n-1} of size d as masks, in lexicographic order of sorted index tuples.
inline std::vector<Mask> enum_subsets(int n, int d) {
  std::vector<Mask> out;
  if (d < 0 || d > n) return out;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= bit(i);
    out.push_back(m);
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Exponent vectors of length n with sum a, ascending lexicographic.
inline std::vector<std::vector<int>> enum_compositions(int n, int a) {
  std::vector<std::vector<int>> out;
  if (a < 0 || n < 0) return out;
  if (n == 0) {
    if (a == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(n, 0);
  // recursive fill, first coordinate smallest first
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, a);
  return out;
}

/// All distinct sequences (length sum(mu)) whose multiset of entries is mu.
inline std::vector<std::vector<int>> multiset_sequences(const std::vector<int>& mu) {
  std::vector<std::vector<int>> out;
  int m = 0;
  for (int x : mu) m += x;
  std::vector<int> left = mu, cur;
  cur.reserve(m);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k < left.size(); ++k) {
      if (!left[k]) continue;
      --left[k];
      cur.push_back(static_cast<int>(k));
      self(self);
      cur.pop_back();
      ++left[k];
    }
  };
  rec(rec);
  return out;
}

inline std::uint64_t multinomial(const std::vector<int>& mu) {
  std::uint64_t r = 1;
  int total = 0;
  for (int x : mu) {
    total += x;
    r *= binomial(total, x);
  }
  return r;
}

/// Sign of sorting a sequence of distinct values; 0 if a value repeats.
inline int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace unires
