#pragma once

// Codes on (N°)^d / N^d = k^d x l^d with k = Z_2^{p-1} and l = Z_p.
//
// A word of k^d is a bit mask: coordinate (block b, index i) with
// 1 <= i <= p-1 sits at bit b*(p-1) + i-1. A word of l^d is a vector of
// digits in [0, p).

#include "orbicode/lattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <vector>

namespace orbicode {

using KBits = std::uint64_t;
using LDigits = std::vector<int>;

inline constexpr std::size_t kMaxKLength = 64;

// ---------------------------------------------------------------------------
// Linear algebra over F_2 (bit masks) and F_p (digit vectors)

/// Reduced row echelon basis over F_2. Pivot of a row is its highest bit;
/// rows are sorted by decreasing pivot and each pivot bit appears in one row.
inline std::vector<KBits> f2_rref(const std::vector<KBits>& gens) {
  std::array<KBits, 64> slot{};
  for (KBits v : gens) {
    while (v) {
      const int b = 63 - std::countl_zero(v);
      if (!slot[b]) {
        slot[b] = v;
        break;
      }
      v ^= slot[b];
    }
  }
  for (int b = 63; b >= 0; --b) {
    if (!slot[b]) continue;
    for (int c = b - 1; c >= 0; --c)
      if (slot[c] && ((slot[b] >> c) & 1U)) slot[b] ^= slot[c];
  }
  std::vector<KBits> out;
  for (int b = 63; b >= 0; --b)
    if (slot[b]) out.push_back(slot[b]);
  return out;
}

inline int f2_pivot(KBits row) { return 63 - std::countl_zero(row); }

/// Reduces `v` against an RREF basis; zero iff v lies in the span.
inline KBits f2_reduce(KBits v, const std::vector<KBits>& rref) {
  for (KBits r : rref)
    if ((v >> f2_pivot(r)) & 1U) v ^= r;
  return v;
}

/// {x in F_2^n : x . r = 0 for every row r}, standard dot product.
inline std::vector<KBits> f2_nullspace(const std::vector<KBits>& rows,
                                       std::size_t n) {
  const auto rref = f2_rref(rows);
  KBits pivots = 0;
  for (KBits r : rref) pivots |= KBits{1} << f2_pivot(r);
  std::vector<KBits> out;
  for (std::size_t f = 0; f < n; ++f) {
    if ((pivots >> f) & 1U) continue;
    KBits x = KBits{1} << f;
    for (KBits r : rref)
      if ((r >> f) & 1U) x |= KBits{1} << f2_pivot(r);
    out.push_back(x);
  }
  return f2_rref(out);
}

inline int mod_inverse(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw HypothesisError("invertible", std::to_string(a) + " is not a unit mod " +
                                          std::to_string(p));
}

/// Reduced row echelon basis over F_p (p prime). Pivot = first nonzero
/// entry, normalized to 1; rows sorted by increasing pivot.
inline std::vector<LDigits> fp_rref(std::vector<LDigits> rows, int p) {
  std::vector<LDigits> out;
  if (rows.empty()) return out;
  const std::size_t n = rows[0].size();
  for (auto& r : rows)
    for (auto& v : r) v = ((v % p) + p) % p;
  std::size_t next = 0;
  for (std::size_t c = 0; c < n && next < rows.size(); ++c) {
    std::size_t s = next;
    while (s < rows.size() && rows[s][c] == 0) ++s;
    if (s == rows.size()) continue;
    std::swap(rows[next], rows[s]);
    const int inv = mod_inverse(rows[next][c], p);
    for (auto& v : rows[next]) v = (v * inv) % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next || rows[i][c] == 0) continue;
      const int f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j)
        rows[i][j] = ((rows[i][j] - f * rows[next][j]) % p + p) % p;
    }
    ++next;
  }
  rows.resize(next);
  return rows;
}

inline std::size_t fp_pivot(const LDigits& row) {
  std::size_t c = 0;
  while (row[c] == 0) ++c;
  return c;
}

inline LDigits fp_reduce(LDigits v, const std::vector<LDigits>& rref, int p) {
  for (const auto& r : rref) {
    const int f = v[fp_pivot(r)];
    if (!f) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - f * r[j]) % p + p) % p;
  }
  return v;
}

inline std::vector<LDigits> fp_nullspace(const std::vector<LDigits>& rows,
                                         std::size_t n, int p) {
  const auto rref = fp_rref(rows, p);
  std::vector<bool> is_pivot(n, false);
  for (const auto& r : rref) is_pivot[fp_pivot(r)] = true;
  std::vector<LDigits> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    LDigits x(n, 0);
    x[f] = 1;
    for (const auto& r : rref) x[fp_pivot(r)] = (p - r[f]) % p;
    out.push_back(std::move(x));
  }
  return fp_rref(out, p);
}

// ---------------------------------------------------------------------------
// Words, forms and weights

inline void check_code_shape(std::int64_t p, std::int64_t d) {
  require_odd_p(p);
  if (d < 0) throw UsageError("d must be nonnegative");
  if (static_cast<std::size_t>((p - 1) * d) > kMaxKLength)
    throw UsageError("(p-1)d exceeds the supported word length of 64");
}

inline std::size_t k_length(std::int64_t p, std::int64_t d) {
  return static_cast<std::size_t>((p - 1) * d);
}

namespace detail {

/// Bits at the first / last position of every block.
inline std::pair<KBits, KBits> block_edges(std::int64_t p, std::int64_t d) {
  KBits first = 0, last = 0;
  for (std::int64_t b = 0; b < d; ++b) {
    first |= KBits{1} << (b * (p - 1));
    last |= KBits{1} << (b * (p - 1) + p - 2);
  }
  return {first, last};
}

/// Image of v under the mod-2 Cartan matrix: each bit moves to both
/// neighbours inside its block.
inline KBits cartan_mod2(KBits v, std::int64_t p, std::int64_t d) {
  auto [first, last] = block_edges(p, d);
  return ((v & ~last) << 1) ^ ((v & ~first) >> 1);
}

}  // namespace detail

/// u .A v over the d blocks, Abar the Cartan matrix of A_{p-1} mod 2.
inline int inner_k(std::int64_t p, std::int64_t d, KBits u, KBits v) {
  return std::popcount(u & detail::cartan_mod2(v, p, d)) & 1;
}

/// sum_i -2 a_i b_i mod p.
inline int inner_l(std::int64_t p, const LDigits& a, const LDigits& b) {
  if (a.size() != b.size()) throw UsageError("l-word length mismatch");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += -2LL * a[i] * b[i];
  return static_cast<int>(((acc % p) + p) % p);
}

/// q(u) = u A u^T / 2 mod 2 = (#ones - #adjacent pairs) mod 2.
inline int qform(std::int64_t p, std::int64_t d, KBits u) {
  const KBits last = detail::block_edges(p, d).second;
  const int pairs = std::popcount(u & ((u & ~last) << 1));
  return (std::popcount(u) - pairs) & 1;
}

/// beta_{u,a} = (1/2) sum u_i beta_i + a gamma, block by block, in R^{p d}.
inline RatVector beta_vector(std::int64_t p, std::int64_t d, KBits u,
                             const LDigits& a) {
  if (a.size() != static_cast<std::size_t>(d))
    throw UsageError("l-word length must equal d");
  RatVector v(static_cast<std::size_t>(p * d));
  for (std::int64_t b = 0; b < d; ++b) {
    for (std::int64_t i = 1; i < p; ++i) {
      if (!((u >> (b * (p - 1) + i - 1)) & 1U)) continue;
      RatVector r = n_root(p, d, b, i);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += r[j] / 2;
    }
    if (a[b] % p) {
      RatVector g = n_gamma(p, d, b);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += a[b] * g[j];
    }
  }
  return v;
}

/// Inverse of beta_vector modulo N^d: the label (u, a) of x + N^d for x in
/// (N°)^d.
inline std::pair<KBits, LDigits> code_label(std::int64_t p, std::int64_t d,
                                            const RatVector& x) {
  if (x.size() != static_cast<std::size_t>(p * d))
    throw UsageError("vector length must be p*d");
  KBits u = 0;
  LDigits a(static_cast<std::size_t>(d), 0);
  const Int inv2 = (p + 1) / 2;
  for (std::int64_t b = 0; b < d; ++b) {
    // x = sum c_i beta_i with c_j = x_1 + ... + x_j
    RatVector c(static_cast<std::size_t>(p - 1));
    Rational run = 0;
    for (std::int64_t j = 0; j < p; ++j) {
      run += x[static_cast<std::size_t>(b * p + j)];
      if (j < p - 1) c[static_cast<std::size_t>(j)] = run;
    }
    if (run != 0) throw UsageError("vector is not in the span of N^d");
    Rational t = 2 * p * c[0];
    if (!is_integer(t)) throw UsageError("vector is not in (N°)^d");
    const Int ab = mod(num(t) * inv2, Int(p));
    a[static_cast<std::size_t>(b)] = static_cast<int>(to_i64(ab));
    for (std::int64_t i = 1; i < p; ++i) {
      Rational ci = c[static_cast<std::size_t>(i - 1)] - Rational(ab * i, Int(p));
      Rational twice = 2 * ci;
      if (!is_integer(twice)) throw UsageError("vector is not in (N°)^d");
      if (mod(num(twice), Int(2)) == 1) u |= KBits{1} << (b * (p - 1) + i - 1);
    }
  }
  return {u, a};
}

namespace detail {

// Minimum norm of N + beta_{u,a} for every (u, a) in k x l, indexed by
// u * p + a. Computed once per p.
inline const std::vector<Rational>& weight_table(std::int64_t p) {
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<Rational>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  const Lattice n = build_N(p);
  std::vector<Rational> table(static_cast<std::size_t>((1LL << (p - 1)) * p));
  for (KBits u = 0; u < (KBits{1} << (p - 1)); ++u)
    for (int a = 0; a < p; ++a)
      table[static_cast<std::size_t>(u * p + a)] =
          coset_min_norm(Coset(n, beta_vector(p, 1, u, LDigits{a})));
  return cache.emplace(p, std::move(table)).first->second;
}

}  // namespace detail

/// w(u, a) = sum over blocks of the minimum norm of N + beta_{u_b, a_b}.
inline Rational weight(std::int64_t p, std::int64_t d, KBits u,
                       const LDigits& a) {
  check_code_shape(p, d);
  if (a.size() != static_cast<std::size_t>(d))
    throw UsageError("l-word length must equal d");
  const auto& table = detail::weight_table(p);
  const KBits block = (KBits{1} << (p - 1)) - 1;
  Rational w = 0;
  for (std::int64_t b = 0; b < d; ++b) {
    KBits ub = (u >> (b * (p - 1))) & block;
    int ab = ((a[static_cast<std::size_t>(b)] % p) + p) % p;
    w += table[static_cast<std::size_t>(ub * p + ab)];
  }
  return w;
}

// ---------------------------------------------------------------------------
// Codes

/// A Z_2-subspace C of k^d, stored by its reduced echelon basis.
class CodeC {
 public:
  CodeC() = default;
  CodeC(std::int64_t p, std::int64_t d, const std::vector<KBits>& gens)
      : p_(p), d_(d) {
    check_code_shape(p, d);
    const KBits mask = full_mask();
    for (KBits g : gens)
      if (g & ~mask) throw UsageError("k-word has bits beyond length (p-1)d");
    basis_ = f2_rref(gens);
  }
  static CodeC zero(std::int64_t p, std::int64_t d) { return CodeC(p, d, {}); }
  static CodeC full(std::int64_t p, std::int64_t d) {
    std::vector<KBits> g;
    for (std::size_t i = 0; i < k_length(p, d); ++i) g.push_back(KBits{1} << i);
    return CodeC(p, d, g);
  }

  std::int64_t p() const noexcept { return p_; }
  std::int64_t d() const noexcept { return d_; }
  std::size_t length() const { return k_length(p_, d_); }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<KBits>& basis() const noexcept { return basis_; }
  bool contains(KBits v) const { return f2_reduce(v, basis_) == 0; }

  /// Every codeword; only sensible for small dimensions.
  std::vector<KBits> words() const {
    if (dim() > 24) throw ResourceError("code too large to list", 0);
    std::vector<KBits> out;
    for (KBits m = 0; m < (KBits{1} << dim()); ++m) {
      KBits w = 0;
      for (std::size_t i = 0; i < dim(); ++i)
        if ((m >> i) & 1U) w ^= basis_[i];
      out.push_back(w);
    }
    return out;
  }

  KBits full_mask() const {
    const std::size_t n = length();
    return n == 64 ? ~KBits{0} : (KBits{1} << n) - 1;
  }

  friend bool operator==(const CodeC& a, const CodeC& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const CodeC& a, const CodeC& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

 private:
  std::int64_t p_ = 3;
  std::int64_t d_ = 0;
  std::vector<KBits> basis_;
};

/// A Z_p-subspace D of l^d (p prime), stored by its reduced echelon basis.
class CodeD {
 public:
  CodeD() = default;
  CodeD(std::int64_t p, std::int64_t d, const std::vector<LDigits>& gens)
      : p_(p), d_(d) {
    require_odd_p(p);
    if (!is_prime(p))
      throw HypothesisError("p prime", "codes over Z_p need p prime");
    if (d < 0) throw UsageError("d must be nonnegative");
    for (const auto& g : gens)
      if (g.size() != static_cast<std::size_t>(d))
        throw UsageError("l-word length must equal d");
    basis_ = fp_rref(gens, static_cast<int>(p));
  }
  static CodeD zero(std::int64_t p, std::int64_t d) { return CodeD(p, d, {}); }
  static CodeD full(std::int64_t p, std::int64_t d) {
    std::vector<LDigits> g;
    for (std::int64_t i = 0; i < d; ++i) {
      LDigits e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = 1;
      g.push_back(e);
    }
    return CodeD(p, d, g);
  }

  std::int64_t p() const noexcept { return p_; }
  std::int64_t d() const noexcept { return d_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<LDigits>& basis() const noexcept { return basis_; }
  Int size() const { return ipow(Int(p_), static_cast<unsigned>(dim())); }
  bool contains(const LDigits& v) const {
    auto r = fp_reduce(v, basis_, static_cast<int>(p_));
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
  }

  std::vector<LDigits> words() const {
    std::vector<LDigits> out;
    const int p = static_cast<int>(p_);
    std::vector<int> coef(dim(), 0);
    while (true) {
      LDigits w(static_cast<std::size_t>(d_), 0);
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
          w[j] = (w[j] + coef[i] * basis_[i][j]) % p;
      out.push_back(std::move(w));
      std::size_t k = 0;
      while (k < coef.size() && ++coef[k] == p) coef[k++] = 0;
      if (k == coef.size()) break;
    }
    return out;
  }

  friend bool operator==(const CodeD& a, const CodeD& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const CodeD& a, const CodeD& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

 private:
  std::int64_t p_ = 3;
  std::int64_t d_ = 0;
  std::vector<LDigits> basis_;
};

inline Int code_size(const CodeC& c) { return ipow(Int(2), static_cast<unsigned>(c.dim())); }

inline CodeC dual_code_C(const CodeC& c) {
  // v in C^perp  <=>  v . (Abar g) = 0 for every basis vector g
  std::vector<KBits> rows;
  for (KBits g : c.basis()) rows.push_back(detail::cartan_mod2(g, c.p(), c.d()));
  return CodeC(c.p(), c.d(), f2_nullspace(rows, c.length()));
}

inline CodeD dual_code_D(const CodeD& dc) {
  // -2 is a unit mod odd p, so the dual is the ordinary orthogonal complement
  return CodeD(dc.p(), dc.d(),
               fp_nullspace(dc.basis(), static_cast<std::size_t>(dc.d()),
                            static_cast<int>(dc.p())));
}

/// Z-submodule of k^d x l^d given by generators (input form only).
struct SubmoduleE {
  std::int64_t p = 3;
  std::int64_t d = 1;
  std::vector<std::pair<KBits, LDigits>> generators;
};

/// E = C x D with C = p E (k-parts) and D = 2 E (l-parts). When E is small
/// enough, its closure is computed and compared against C x D.
inline std::pair<CodeC, CodeD> split_E(const SubmoduleE& e) {
  std::vector<KBits> ks;
  std::vector<LDigits> ls;
  for (const auto& [u, a] : e.generators) {
    ks.push_back(u);
    // p is odd, so p*(u, a) = (u, 0) and 2*(u, a) = (0, 2a)
    LDigits twice = a;
    for (auto& v : twice) v = static_cast<int>(((2LL * v) % e.p + e.p) % e.p);
    ls.push_back(twice);
  }
  CodeC c(e.p, e.d, ks);
  CodeD dc(e.p, e.d, ls);
  const Int expected = code_size(c) * dc.size();
  if (expected <= 4096) {
    // Z-closure of the generators by breadth-first search
    auto norm = [&](LDigits a) {
      for (auto& v : a) v = static_cast<int>(((v % e.p) + e.p) % e.p);
      return a;
    };
    std::set<std::pair<KBits, LDigits>> seen{{0, LDigits(static_cast<std::size_t>(e.d), 0)}};
    std::vector<std::pair<KBits, LDigits>> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<std::pair<KBits, LDigits>> next;
      for (const auto& [u, a] : frontier)
        for (const auto& [gu, ga] : e.generators) {
          LDigits s = a;
          for (std::size_t j = 0; j < s.size(); ++j) s[j] += ga[j];
          auto elt = std::make_pair(u ^ gu, norm(s));
          if (seen.insert(elt).second) next.push_back(elt);
        }
      frontier = std::move(next);
    }
    if (Int(seen.size()) != expected)
      throw ConsistencyError("submodule is not the product of its parts");
    for (const auto& [u, a] : seen)
      if (!c.contains(u) || !dc.contains(a))
        throw ConsistencyError("submodule element outside C x D");
  }
  return {c, dc};
}

struct Evenness {
  bool c_even = false;
  bool d_even = false;
};

/// q vanishes on C (generators plus pairwise inner products) and D is
/// self-orthogonal.
inline Evenness evenness(const CodeC& c, const CodeD& dc) {
  Evenness e{true, true};
  const auto& b = c.basis();
  for (std::size_t i = 0; i < b.size() && e.c_even; ++i) {
    if (qform(c.p(), c.d(), b[i])) e.c_even = false;
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (qform(c.p(), c.d(), b[i] ^ b[j])) e.c_even = false;
  }
  const auto& g = dc.basis();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j)
      if (inner_l(dc.p(), g[i], g[j])) e.d_even = false;
  return e;
}

inline bool self_orthogonal(const CodeC& c) {
  for (KBits a : c.basis())
    for (KBits b : c.basis())
      if (inner_k(c.p(), c.d(), a, b)) return false;
  return true;
}
inline bool self_orthogonal(const CodeD& dc) {
  for (const auto& a : dc.basis())
    for (const auto& b : dc.basis())
      if (inner_l(dc.p(), a, b)) return false;
  return true;
}
inline bool self_dual(const CodeC& c) { return dual_code_C(c) == c; }
inline bool self_dual(const CodeD& dc) { return dual_code_D(dc) == dc; }

/// L_{C x D} = N^d + span{beta(u, 0) : u in C} + span{beta(0, a) : a in D}.
inline Lattice to_lattice(const CodeC& c, const CodeD& dc) {
  if (c.p() != dc.p() || c.d() != dc.d())
    throw UsageError("codes have different (p, d)");
  const std::int64_t p = c.p(), d = c.d();
  if (d < 1) throw UsageError("d must be positive to build a lattice");
  RatMatrix gens(0, static_cast<std::size_t>(p * d));
  for (std::int64_t b = 0; b < d; ++b)
    for (std::int64_t i = 1; i < p; ++i) gens.append_row(n_root(p, d, b, i));
  const LDigits zero_l(static_cast<std::size_t>(d), 0);
  for (KBits u : c.basis()) gens.append_row(beta_vector(p, d, u, zero_l));
  for (const auto& a : dc.basis()) gens.append_row(beta_vector(p, d, 0, a));
  Lattice l = Lattice::from_generators(n_ambient(p, d), gens);
  const Int index = quotient(l, build_N_power(p, d)).order();
  if (index != code_size(c) * dc.size())
    throw ConsistencyError("L/N^d does not have order |C||D|");
  return l;
}

}  // namespace orbicode
