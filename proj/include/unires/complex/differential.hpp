#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "unires/complex/basis.hpp"
#include "unires/linalg/sparse_matrix.hpp"
#include "unires/multilinear/bowtie.hpp"
#include "unires/multilinear/koszul.hpp"
#include "unires/ring/generic_data.hpp"

namespace unires {

// Matrix entries of d are integer multiples of a small set of "atoms": 1, v_jk, x_ij,
// (XV)_ik, minors of X, and b times minors of V. Emitting atoms once lets the same
// column structure be realized symbolically, at many specializations, or as its
// constant part.
enum class AtomKind : std::uint8_t { One, V, X, XV, MinorX, BMinorV };

struct Atom {
  AtomKind kind = AtomKind::One;
  Mask m1 = 0;  // V: j, X: i, XV: i, MinorX: rows of X (subset of g), BMinorV: rows of V (subset of f)
  Mask m2 = 0;  // V: k, X: j, XV: k, MinorX: cols of X (subset of f), BMinorV: cols of V (subset of e)

  std::uint64_t key() const { return static_cast<std::uint64_t>(kind) | (m1 << 8) | (m2 << 36); }
  bool operator==(const Atom&) const = default;
};

struct DiffTerm {
  std::size_t row = 0;
  int coef = 0;
  Atom atom;
};

/// A sign flip injected into one component of d at one source generator (mutation
/// tests only). Flipping a whole B-landing component is not detectable: it is the
/// substitution b -> -b, possibly composed with negating every B(d).
struct Mutation {
  int component = 0;  // 1..6 for the A-components, 7 for the B-differential, 0 for none
  int position = -1;
  std::size_t column = 0;
};

/// The complex F over the generic ring, truncated at a position bound. Bases of every
/// position up to the bound are built eagerly (only summand tables are stored).
class ComplexF {
 public:
  ComplexF(const Params& p, int max_position, Mutation mut = {}) : params_(p), max_pos_(max_position), mut_(mut) {
    for (int i = 0; i <= max_position; ++i) modules_.push_back(module_F(i, p));
  }
  /// A subquotient layout: position i carries the listed summands only. Terms of d that
  /// land outside the listed summands are dropped (used for strands).
  ComplexF(const Params& p, const std::vector<std::vector<SummandId>>& layout)
      : params_(p), max_pos_(static_cast<int>(layout.size()) - 1) {
    for (const auto& ids : layout) modules_.emplace_back(p, ids);
  }

  const Params& params() const { return params_; }
  int max_position() const { return max_pos_; }
  const FreeModuleBasis& module(int i) const {
    if (i < 0 || i > max_pos_) throw std::out_of_range("position outside the truncation");
    return modules_[i];
  }

  /// Terms of d_i applied to the generator `col` of F_i, with rows in F_{i-1}.
  void emit(int i, std::size_t col, std::vector<DiffTerm>& out) const {
    out.clear();
    if (i < 1) return;
    flip_here_ = mut_.component != 0 && mut_.position == i && mut_.column == col;
    const auto& src = module(i);
    const auto& dst = module(i - 1);
    int blk = src.block_of(col);
    const auto& block = src.blocks()[blk];
    const auto& t = *block.table;
    int imu, inu, iz, ij;
    t.decode(col - block.offset, imu, inu, iz, ij);
    const SummandId& id = block.id;
    const int e = params_.e, g = params_.g, f = params_.f();
    Mask Z = t.z(iz);

    if (id.species == Species::B) {
      int tb = dst.find_block(SummandId::B(id.d - 1));
      if (tb < 0) return;
      const auto& tt = *dst.blocks()[tb].table;
      int s7 = flip(7);
      for (int cell : mask_indices(Z)) {
        std::size_t row = dst.blocks()[tb].offset + tt.local_index(0, 0, tt.find_z(Z & ~bit(cell)), 0);
        out.push_back({row, s7 * derivation_sign(Z, cell), {AtomKind::XV, Mask(cell % g), Mask(cell / g)}});
      }
      return;
    }

    const int a = id.a, c = id.c, d = id.d;
    const std::vector<int>& mu = t.mu(imu);
    const std::vector<int>& nu = t.nu(inu);
    Mask J = t.j(ij);
    std::uint64_t mu_key = pack_exps(mu), nu_key = pack_exps(nu);
    auto dec = [](std::uint64_t key, int idx) { return key - (std::uint64_t{1} << (8 * idx)); };
    const int s_ac = ((a + c) & 1) ? -1 : 1;

    // 1. eps^(mu) -> sum_k eps^(mu-e_k) (x) V(eps_k), V(eps_k) acting on alpha
    if (a >= 1) {
      int tb = dst.find_block(SummandId::A(a - 1, c, d));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        int tnu = tt.find_nu_packed(nu_key), tz = tt.find_z(Z);
        for (int k = 0; k < e; ++k) {
          if (!mu[k]) continue;
          int tmu = tt.find_mu_packed(dec(mu_key, k));
          for (int jj : mask_indices(J)) {
            Mask rest = J & ~bit(jj);
            std::size_t row = dst.blocks()[tb].offset + tt.local_index(tmu, tnu, tz, tt.find_j(rest));
            out.push_back({row, flip(1) * shuffle_sign(bit(jj), rest), {AtomKind::V, Mask(jj), Mask(k)}});
          }
        }
      }
    }
    // 2. -gamma^(nu) -> sum_i gamma^(nu-e_i) (x) X*(gamma_i) ^ alpha
    if (c >= 1) {
      int tb = dst.find_block(SummandId::A(a, c - 1, d));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        int tmu = tt.find_mu_packed(mu_key), tz = tt.find_z(Z);
        for (int i = 0; i < g; ++i) {
          if (!nu[i]) continue;
          int tnu = tt.find_nu_packed(dec(nu_key, i));
          for (int jj = 0; jj < f; ++jj) {
            if (J & bit(jj)) continue;
            std::size_t row = dst.blocks()[tb].offset + tt.local_index(tmu, tnu, tz, tt.find_j(J | bit(jj)));
            out.push_back({row, -flip(2) * shuffle_sign(bit(jj), J), {AtomKind::X, Mask(i), Mask(jj)}});
          }
        }
      }
    }
    // 3. (-1)^{a+c} (XV)-check on Z
    if (d >= 1) {
      int tb = dst.find_block(SummandId::A(a, c, d - 1));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        int tmu = tt.find_mu_packed(mu_key), tnu = tt.find_nu_packed(nu_key), tj = tt.find_j(J);
        for (int cell : mask_indices(Z)) {
          std::size_t row = dst.blocks()[tb].offset + tt.local_index(tmu, tnu, tt.find_z(Z & ~bit(cell)), tj);
          out.push_back({row, flip(3) * s_ac * derivation_sign(Z, cell), {AtomKind::XV, Mask(cell % g), Mask(cell / g)}});
        }
      }
    }
    // 4. (-1)^{a+c} (eps_k (x) gamma_i) ^ Z
    if (a >= 1 && c >= 1) {
      int tb = dst.find_block(SummandId::A(a - 1, c - 1, d + 1));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        int tj = tt.find_j(J);
        for (int k = 0; k < e; ++k) {
          if (!mu[k]) continue;
          int tmu = tt.find_mu_packed(dec(mu_key, k));
          for (int i = 0; i < g; ++i) {
            if (!nu[i]) continue;
            int cell = cell_index(k, i, g);
            if (Z & bit(cell)) continue;
            int tnu = tt.find_nu_packed(dec(nu_key, i));
            std::size_t row = dst.blocks()[tb].offset + tt.local_index(tmu, tnu, tt.find_z(Z | bit(cell)), tj);
            out.push_back({row, flip(4) * s_ac * shuffle_sign(bit(cell), Z), {AtomKind::One, 0, 0}});
          }
        }
      }
    }
    // 5. c = 0: (-1)^{a+d} eps^(mu) bowtie [(wedge^{f-b} X)(alpha[omega_F])](omega_G*) ^ Z
    if (c == 0) {
      int tb = dst.find_block(SummandId::B(a + d));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        Mask Jc = full_mask(f) & ~J;
        int sJ = shuffle_sign(Jc, J);
        int s5 = flip(5) * (((a + d) & 1) ? -1 : 1);
        for (Mask I : enum_subsets(g, popcount(Jc))) {
          Mask Ic = full_mask(g) & ~I;
          int sI = shuffle_sign(I, Ic);
          Atom atom = I == 0 ? Atom{AtomKind::One, 0, 0} : Atom{AtomKind::MinorX, I, Jc};
          for (const SignedMask& bw : bowtie_terms(mu, Ic, g)) {
            if (bw.mask & Z) continue;
            int sw = shuffle_sign(bw.mask, Z);
            std::size_t row = dst.blocks()[tb].offset + tt.local_index(0, 0, tt.find_z(bw.mask | Z), 0);
            out.push_back({row, s5 * sJ * sI * bw.sign * sw, atom});
          }
        }
      }
    }
    // 6. a = 0: (-1)^d b [(wedge^b V*)(alpha)](omega_E) mirror-bowtie gamma^(nu) ^ Z
    if (a == 0) {
      int tb = dst.find_block(SummandId::B(c + d));
      if (tb >= 0) {
        const auto& tt = *dst.blocks()[tb].table;
        int s6 = flip(6) * ((d & 1) ? -1 : 1);
        for (Mask K : enum_subsets(e, popcount(J))) {
          Mask Kc = full_mask(e) & ~K;
          int sK = shuffle_sign(Kc, K);
          Atom atom{AtomKind::BMinorV, J, K};
          for (const SignedMask& bw : mirror_bowtie_terms(Kc, nu, g, true)) {
            if (bw.mask & Z) continue;
            int sw = shuffle_sign(bw.mask, Z);
            std::size_t row = dst.blocks()[tb].offset + tt.local_index(0, 0, tt.find_z(bw.mask | Z), 0);
            out.push_back({row, s6 * sK * bw.sign * sw, atom});
          }
        }
      }
    }
  }

 private:
  int flip(int component) const { return flip_here_ && mut_.component == component ? -1 : 1; }

  Params params_;
  int max_pos_;
  Mutation mut_;
  // emit() is otherwise stateless; the flag is only consulted for mutated instances
  static thread_local inline bool flip_here_ = false;
  std::vector<FreeModuleBasis> modules_;
};

/// Value of an atom mod p at scalar data.
inline std::uint32_t minor_mod(const DenseMatrix<std::int64_t>& m, Mask rows, Mask cols, std::uint32_t p) {
  std::vector<int> r = mask_indices(rows), c = mask_indices(cols);
  if (r.size() != c.size()) throw std::invalid_argument("minor_mod: non-square selection");
  auto rec = [&](auto&& self, std::size_t depth, Mask used) -> std::uint64_t {
    if (depth == r.size()) return 1;
    std::uint64_t total = 0;
    int parity = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (used & bit(static_cast<int>(j))) continue;
      std::uint64_t x = static_cast<std::uint64_t>(m(r[depth], c[j]));
      if (x) {
        std::uint64_t term = x * self(self, depth + 1, used | bit(static_cast<int>(j))) % p;
        total = parity ? (total + p - term) % p : (total + term) % p;
      }
      parity ^= 1;
    }
    return total;
  };
  return static_cast<std::uint32_t>(rec(rec, 0, 0));
}

class ScalarAtoms {
 public:
  explicit ScalarAtoms(const ScalarData& s) : s_(s), xv_(s.XV()) {}
  std::uint32_t value(const Atom& a) {
    switch (a.kind) {
      case AtomKind::One: return 1;
      case AtomKind::V: return static_cast<std::uint32_t>(s_.V(static_cast<int>(a.m1), static_cast<int>(a.m2)));
      case AtomKind::X: return static_cast<std::uint32_t>(s_.X(static_cast<int>(a.m1), static_cast<int>(a.m2)));
      case AtomKind::XV: return static_cast<std::uint32_t>(xv_(static_cast<int>(a.m1), static_cast<int>(a.m2)));
      default: break;
    }
    auto it = cache_.find(a.key());
    if (it != cache_.end()) return it->second;
    std::uint32_t v;
    if (a.kind == AtomKind::MinorX)
      v = minor_mod(s_.X, a.m1, a.m2, s_.p);
    else
      v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(s_.b) * minor_mod(s_.V, a.m1, a.m2, s_.p) % s_.p);
    cache_.emplace(a.key(), v);
    return v;
  }
  std::uint32_t prime() const { return s_.p; }

 private:
  const ScalarData& s_;
  DenseMatrix<std::int64_t> xv_;
  std::unordered_map<std::uint64_t, std::uint32_t> cache_;
};

class SymbolicAtoms {
 public:
  explicit SymbolicAtoms(const GenericData& d) : d_(d), xv_(matmul(d.X, d.V)) {}
  const Polynomial& value(const Atom& a) {
    auto it = cache_.find(a.key());
    if (it != cache_.end()) return it->second;
    Polynomial v;
    int r = static_cast<int>(a.m1), c = static_cast<int>(a.m2);
    switch (a.kind) {
      case AtomKind::One: v = Polynomial(1); break;
      case AtomKind::V: v = d_.V(r, c); break;
      case AtomKind::X: v = d_.X(r, c); break;
      case AtomKind::XV: v = xv_(r, c); break;
      case AtomKind::MinorX: v = minor_det(d_.X, a.m1, a.m2); break;
      case AtomKind::BMinorV: v = d_.b * minor_det(d_.V, a.m1, a.m2); break;
    }
    return cache_.emplace(a.key(), std::move(v)).first->second;
  }

 private:
  const GenericData& d_;
  DenseMatrix<Polynomial> xv_;
  std::unordered_map<std::uint64_t, Polynomial> cache_;
};

/// d_i over the generic ring as a polynomial matrix.
inline SparseMatrix<Polynomial> differential_F(const ComplexF& cx, int i, const GenericData& data) {
  SymbolicAtoms atoms(data);
  std::vector<Triplet<Polynomial>> t;
  std::vector<DiffTerm> terms;
  const auto& src = cx.module(i);
  const auto& dst = cx.module(i - 1);
  for (std::size_t col = 0; col < src.size(); ++col) {
    cx.emit(i, col, terms);
    for (const auto& term : terms)
      t.push_back({static_cast<int>(term.row), static_cast<int>(col),
                   atoms.value(term.atom).scaled(mpz_class(term.coef))});
  }
  return SparseMatrix<Polynomial>::accumulate(static_cast<int>(dst.size()), static_cast<int>(src.size()),
                                              std::move(t));
}

/// d_i at one specialization, over F_p.
inline SparseMatrix<std::int64_t> differential_F(const ComplexF& cx, int i, const ScalarData& data) {
  ScalarAtoms atoms(data);
  const std::int64_t p = data.p;
  std::vector<Triplet<std::int64_t>> t;
  std::vector<DiffTerm> terms;
  const auto& src = cx.module(i);
  const auto& dst = cx.module(i - 1);
  for (std::size_t col = 0; col < src.size(); ++col) {
    cx.emit(i, col, terms);
    for (const auto& term : terms) {
      std::int64_t v = atoms.value(term.atom);
      if (!v) continue;
      t.push_back({static_cast<int>(term.row), static_cast<int>(col), (term.coef * v % p + p) % p});
    }
  }
  return SparseMatrix<std::int64_t>::accumulate(static_cast<int>(dst.size()), static_cast<int>(src.size()),
                                                std::move(t), CoefficientDomain::prime_field(data.p));
}

/// Constant part of d_i (terms whose atom is 1), over Z.
inline SparseMatrix<std::int64_t> constant_part_F(const ComplexF& cx, int i) {
  std::vector<Triplet<std::int64_t>> t;
  std::vector<DiffTerm> terms;
  const auto& src = cx.module(i);
  const auto& dst = cx.module(i - 1);
  for (std::size_t col = 0; col < src.size(); ++col) {
    cx.emit(i, col, terms);
    for (const auto& term : terms)
      if (term.atom.kind == AtomKind::One) t.push_back({static_cast<int>(term.row), static_cast<int>(col), term.coef});
  }
  return SparseMatrix<std::int64_t>::accumulate(static_cast<int>(dst.size()), static_cast<int>(src.size()),
                                                std::move(t));
}

}  // namespace unires
