#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "unires/multilinear/combinatorics.hpp"
#include "unires/multilinear/exterior.hpp"
#include "unires/ring/generic_data.hpp"

namespace unires {

// A, B: summands of the complex over the generic ring. N, M, B0: terms of the fiber
// strands (S_aE*(x)S_cG(x)wedge^d, D_aE(x)D_cG*(x)wedge^d, and wedge^d(E(x)G*)).
enum class Species : std::uint8_t { A, B, N, M, B0 };

inline const char* species_name(Species s) {
  switch (s) {
    case Species::A: return "A";
    case Species::B: return "B";
    case Species::N: return "N";
    case Species::M: return "M";
    case Species::B0: return "B0";
  }
  return "?";
}

struct SummandId {
  Species species = Species::A;
  int a = 0, c = 0, d = 0;

  static SummandId A(int a, int c, int d) { return {Species::A, a, c, d}; }
  static SummandId B(int d) { return {Species::B, 0, 0, d}; }

  bool has_j() const { return species == Species::A; }
  bool is_exterior_only() const { return species == Species::B || species == Species::B0; }
  /// Degree of the wedge^b F* factor (A only).
  int b(const Params& p) const { return has_j() ? a - c + p.e : 0; }
  /// Homological position inside the complex over the generic ring.
  int position() const { return is_exterior_only() ? d : a + c + d + 1; }

  bool valid(const Params& p) const {
    if (a < 0 || c < 0 || d < 0 || d > p.eg()) return false;
    if (is_exterior_only()) return a == 0 && c == 0;
    if (has_j()) return b(p) >= 0 && b(p) <= p.f();
    return true;
  }

  std::uint64_t rank(const Params& p) const {
    if (!valid(p)) return 0;
    std::uint64_t r = binomial(p.eg(), d);
    if (is_exterior_only()) return r;
    r *= divided_rank(p.e, a) * divided_rank(p.g, c);
    if (has_j()) r *= binomial(p.f(), b(p));
    return r;
  }

  /// Generator twist: [-a-d, -g-c-d] on A(a,c,d), [-d,-d] on B(d).
  ABidegree twist(const Params& p) const {
    if (species == Species::B) return {-d, -d};
    return {-a - d, -p.g - c - d};
  }

  std::string to_string() const {
    if (is_exterior_only()) return std::string(species_name(species)) + "(" + std::to_string(d) + ")";
    return std::string(species_name(species)) + "(" + std::to_string(a) + "," + std::to_string(c) + "," +
           std::to_string(d) + ")";
  }

  auto operator<=>(const SummandId&) const = default;
};

/// Exponent vector packed one byte per entry (entries < 256, length <= 8).
inline std::uint64_t pack_exps(const std::vector<int>& v) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) k |= static_cast<std::uint64_t>(v[i]) << (8 * i);
  return k;
}

/// Enumerated basis of one summand: generators (mu, nu, Z, J) in lexicographic order of
/// (index of mu, index of nu, index of Z, index of J), J innermost.
class SummandTable {
 public:
  SummandTable(const Params& p, const SummandId& id) : id_(id) {
    if (!id.valid(p)) throw std::invalid_argument("invalid summand " + id.to_string());
    if (id.is_exterior_only()) {
      mus_.push_back(std::vector<int>(p.e, 0));
      nus_.push_back(std::vector<int>(p.g, 0));
    } else {
      mus_ = enum_compositions(p.e, id.a);
      nus_ = enum_compositions(p.g, id.c);
    }
    for (std::size_t i = 0; i < mus_.size(); ++i) mu_pos_.emplace(pack_exps(mus_[i]), static_cast<int>(i));
    for (std::size_t i = 0; i < nus_.size(); ++i) nu_pos_.emplace(pack_exps(nus_[i]), static_cast<int>(i));
    z_ = SubsetIndex(p.eg(), id.d);
    j_ = id.has_j() ? SubsetIndex(p.f(), id.b(p)) : SubsetIndex(0, 0);
  }

  const SummandId& id() const { return id_; }
  std::size_t size() const { return mus_.size() * nus_.size() * z_.list().size() * j_.list().size(); }
  int n_mu() const { return static_cast<int>(mus_.size()); }
  int n_nu() const { return static_cast<int>(nus_.size()); }
  int n_z() const { return z_.size(); }
  int n_j() const { return j_.size(); }
  const std::vector<int>& mu(int i) const { return mus_[i]; }
  const std::vector<int>& nu(int i) const { return nus_[i]; }
  Mask z(int i) const { return z_.at(i); }
  Mask j(int i) const { return j_.at(i); }

  int find_mu(const std::vector<int>& m) const { return lookup(mu_pos_, pack_exps(m)); }
  int find_nu(const std::vector<int>& n) const { return lookup(nu_pos_, pack_exps(n)); }
  int find_mu_packed(std::uint64_t k) const { return lookup(mu_pos_, k); }
  int find_nu_packed(std::uint64_t k) const { return lookup(nu_pos_, k); }
  int find_z(Mask m) const { return z_.find(m); }
  int find_j(Mask m) const { return j_.find(m); }

  std::size_t local_index(int imu, int inu, int iz, int ij) const {
    return ((static_cast<std::size_t>(imu) * nus_.size() + inu) * z_.list().size() + iz) * j_.list().size() + ij;
  }
  void decode(std::size_t local, int& imu, int& inu, int& iz, int& ij) const {
    ij = static_cast<int>(local % j_.list().size());
    local /= j_.list().size();
    iz = static_cast<int>(local % z_.list().size());
    local /= z_.list().size();
    inu = static_cast<int>(local % nus_.size());
    imu = static_cast<int>(local / nus_.size());
  }

 private:
  static int lookup(const std::unordered_map<std::uint64_t, int>& m, std::uint64_t k) {
    auto it = m.find(k);
    return it == m.end() ? -1 : it->second;
  }
  SummandId id_;
  std::vector<std::vector<int>> mus_, nus_;
  std::unordered_map<std::uint64_t, int> mu_pos_, nu_pos_;
  SubsetIndex z_, j_;
};

/// Shared, immutable summand tables keyed by (e, g, summand).
inline std::shared_ptr<const SummandTable> summand_table(const Params& p, const SummandId& id) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, SummandId>, std::shared_ptr<const SummandTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p.e, p.g, id);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const SummandTable>(p, id);
  cache.emplace(key, t);
  return t;
}

/// One generator of a free module, as the summand block plus its tensor factors.
struct Generator {
  int block = -1;
  std::vector<int> mu, nu;
  Mask z = 0, j = 0;
};

/// Ordered basis of a graded free module assembled from summand blocks.
class FreeModuleBasis {
 public:
  struct Block {
    SummandId id;
    std::shared_ptr<const SummandTable> table;
    std::size_t offset = 0;
  };

  FreeModuleBasis() = default;
  FreeModuleBasis(const Params& p, const std::vector<SummandId>& ids) : params_(p) {
    for (const auto& id : ids) {
      auto t = summand_table(p, id);
      pos_.emplace(id, static_cast<int>(blocks_.size()));
      blocks_.push_back({id, t, size_});
      size_ += t->size();
    }
  }

  const Params& params() const { return params_; }
  std::size_t size() const { return size_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int find_block(const SummandId& id) const {
    auto it = pos_.find(id);
    return it == pos_.end() ? -1 : it->second;
  }

  int block_of(std::size_t index) const {
    int lo = 0, hi = static_cast<int>(blocks_.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (blocks_[mid].offset <= index) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  }

  Generator generator(std::size_t index) const {
    if (index >= size_) throw std::out_of_range("generator index out of range");
    Generator gen;
    gen.block = block_of(index);
    const auto& t = *blocks_[gen.block].table;
    int imu, inu, iz, ij;
    t.decode(index - blocks_[gen.block].offset, imu, inu, iz, ij);
    gen.mu = t.mu(imu);
    gen.nu = t.nu(inu);
    gen.z = t.z(iz);
    gen.j = t.j(ij);
    return gen;
  }

  /// Global index of a generator, or -1 if absent.
  std::int64_t index_of(const SummandId& id, const std::vector<int>& mu, const std::vector<int>& nu, Mask z,
                        Mask j) const {
    int b = find_block(id);
    if (b < 0) return -1;
    const auto& t = *blocks_[b].table;
    int imu = t.find_mu(mu), inu = t.find_nu(nu), iz = t.find_z(z), ij = t.find_j(j);
    if (imu < 0 || inu < 0 || iz < 0 || ij < 0) return -1;
    return static_cast<std::int64_t>(blocks_[b].offset + t.local_index(imu, inu, iz, ij));
  }

  ABidegree twist(std::size_t index) const { return blocks_[block_of(index)].id.twist(params_); }

  /// Human-readable generator label, e.g. "A(1,0,2)[mu=1,0;nu=;Z=0,3;J=1,2]".
  std::string label(std::size_t index) const {
    Generator gen = generator(index);
    auto list = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    const auto& id = blocks_[gen.block].id;
    std::string s = id.to_string() + "[";
    if (!id.is_exterior_only()) s += "mu=" + list(gen.mu) + ";nu=" + list(gen.nu) + ";";
    s += "Z=" + list(mask_indices(gen.z));
    if (id.has_j()) s += ";J=" + list(mask_indices(gen.j));
    return s + "]";
  }

 private:
  Params params_;
  std::vector<Block> blocks_;
  std::map<SummandId, int> pos_;
  std::size_t size_ = 0;
};

/// Summands of position i: A(a,c,d) with a+c+d+1 = i in descending lex order, then B(i).
inline std::vector<SummandId> summands_F(int i, const Params& p) {
  std::vector<SummandId> out;
  if (i < 0) return out;
  for (int a = i - 1; a >= 0; --a)
    for (int c = i - 1 - a; c >= 0; --c) {
      SummandId id = SummandId::A(a, c, i - 1 - a - c);
      if (id.valid(p)) out.push_back(id);
    }
  if (i <= p.eg()) out.push_back(SummandId::B(i));
  return out;
}

inline FreeModuleBasis module_F(int i, const Params& p) { return FreeModuleBasis(p, summands_F(i, p)); }

}  // namespace unires
