#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "unires/complex/basis.hpp"
#include "unires/multilinear/bowtie.hpp"
#include "unires/multilinear/koszul.hpp"

namespace unires {

// Maps between the terms M(a,c,d), N(a,c,d), B0(i) over a field, on local indices of
// their summand tables, together with the torus weight that every map preserves:
// (mu + E-marginal of Z, nu + G-marginal of Z), and for B0 the G part shifted by -1.

using WeightKey = std::array<std::int16_t, 2 * kMaxRank>;

inline WeightKey weight_of(const Params& p, const std::vector<int>& mu, const std::vector<int>& nu, Mask z,
                           int g_shift = 0) {
  WeightKey w{};
  for (int k = 0; k < p.e; ++k) w[k] = static_cast<std::int16_t>(mu[k]);
  for (int i = 0; i < p.g; ++i) w[kMaxRank + i] = static_cast<std::int16_t>(nu[i] + g_shift);
  while (z) {
    int c = std::countr_zero(z);
    ++w[c / p.g];
    ++w[kMaxRank + c % p.g];
    z &= z - 1;
  }
  return w;
}

/// Weight of a local generator of any fiber-type table (M, N, B0).
inline WeightKey weight_of_local(const Params& p, const SummandTable& t, std::size_t local) {
  int imu, inu, iz, ij;
  t.decode(local, imu, inu, iz, ij);
  return weight_of(p, t.mu(imu), t.nu(inu), t.z(iz), t.id().species == Species::B0 ? -1 : 0);
}

/// Canonical representative of the orbit under permuting E indices and G indices.
inline WeightKey canonical_weight(WeightKey w, const Params& p) {
  std::sort(w.begin(), w.begin() + p.e, std::greater<>());
  std::sort(w.begin() + kMaxRank, w.begin() + kMaxRank + p.g, std::greater<>());
  return w;
}

/// Number of distinct weights in the orbit of w.
inline std::uint64_t orbit_size(const WeightKey& w, const Params& p) {
  auto count = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::uint64_t n = 1;
    std::size_t total = 0;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      total += j - i;
      n *= binomial(static_cast<std::int64_t>(total), static_cast<std::int64_t>(j - i));
      i = j;
    }
    return n;
  };
  return count(std::vector<int>(w.begin(), w.begin() + p.e)) *
         count(std::vector<int>(w.begin() + kMaxRank, w.begin() + kMaxRank + p.g));
}

/// Local indices of a table grouped by weight; with canonical_only, only weights that are
/// their own canonical representative are kept.
inline std::map<WeightKey, std::vector<std::size_t>> group_by_weight(const Params& p, const SummandTable& t,
                                                                     bool canonical_only) {
  std::map<WeightKey, std::vector<std::size_t>> out;
  for (std::size_t l = 0; l < t.size(); ++l) {
    WeightKey w = weight_of_local(p, t, l);
    if (canonical_only && canonical_weight(w, p) != w) continue;
    out[w].push_back(l);
  }
  return out;
}

using LocalTerms = std::vector<std::pair<std::size_t, int>>;

/// M(a,c,d) -> M(a-1,c-1,d+1): eps^(mu) gamma^(nu) Z -> sum (eps_k (x) gamma_i) ^ Z over
/// the comultiplication terms (dual of the Koszul differential on N).
inline void m_down(const Params& p, const SummandTable& src, const SummandTable& dst, std::size_t col,
                   LocalTerms& out) {
  out.clear();
  int imu, inu, iz, ij;
  src.decode(col, imu, inu, iz, ij);
  const auto& mu = src.mu(imu);
  const auto& nu = src.nu(inu);
  Mask Z = src.z(iz);
  std::uint64_t mk = pack_exps(mu), nk = pack_exps(nu);
  for (int k = 0; k < p.e; ++k) {
    if (!mu[k]) continue;
    int tmu = dst.find_mu_packed(mk - (std::uint64_t{1} << (8 * k)));
    for (int i = 0; i < p.g; ++i) {
      if (!nu[i]) continue;
      int cell = cell_index(k, i, p.g);
      if (Z & bit(cell)) continue;
      int tnu = dst.find_nu_packed(nk - (std::uint64_t{1} << (8 * i)));
      out.emplace_back(dst.local_index(tmu, tnu, dst.find_z(Z | bit(cell)), 0), shuffle_sign(bit(cell), Z));
    }
  }
}

/// N(a,c,d) -> N(a+1,c+1,d-1): the Koszul differential of the identity of E0* (x) G0,
/// Z -> sum_z +- (e*_k g_i) . (Z \ z) with monomial multiplication.
inline void n_up(const Params& p, const SummandTable& src, const SummandTable& dst, std::size_t col,
                 LocalTerms& out) {
  out.clear();
  int imu, inu, iz, ij;
  src.decode(col, imu, inu, iz, ij);
  Mask Z = src.z(iz);
  std::uint64_t mk = pack_exps(src.mu(imu)), nk = pack_exps(src.nu(inu));
  for (int cell : mask_indices(Z)) {
    int k = cell / p.g, i = cell % p.g;
    int tmu = dst.find_mu_packed(mk + (std::uint64_t{1} << (8 * k)));
    int tnu = dst.find_nu_packed(nk + (std::uint64_t{1} << (8 * i)));
    out.emplace_back(dst.local_index(tmu, tnu, dst.find_z(Z & ~bit(cell)), 0), derivation_sign(Z, cell));
  }
}

/// gamma: M(g,0,d) -> B0(g+d), U (x) 1 (x) Z -> (U bowtie omega_G*) ^ Z.
inline void gamma_map(const Params& p, const SummandTable& src, const SummandTable& dst, std::size_t col,
                      LocalTerms& out) {
  out.clear();
  int imu, inu, iz, ij;
  src.decode(col, imu, inu, iz, ij);
  Mask Z = src.z(iz);
  for (const SignedMask& bw : bowtie_terms(src.mu(imu), full_mask(p.g), p.g)) {
    if (bw.mask & Z) continue;
    out.emplace_back(dst.local_index(0, 0, dst.find_z(bw.mask | Z), 0), bw.sign * shuffle_sign(bw.mask, Z));
  }
}

}  // namespace unires
