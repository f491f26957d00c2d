#pragma once

// Finite-order isometries of lattices, the Coxeter element sigma on N^d, its
// action on k^d x l^d, and cyclotomic spectral data.

#include "orbicode/ap_codes.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace orbicode {

// ---------------------------------------------------------------------------
// Integer polynomials, coefficients listed from the constant term up.

using IntPoly = std::vector<Int>;

inline void poly_trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  poly_trim(c);
  return c;
}

/// Quotient of f by the monic g when the division is exact.
inline std::optional<IntPoly> poly_exact_div(IntPoly f, const IntPoly& g) {
  poly_trim(f);
  if (g.empty() || g.back() != 1) throw UsageError("divisor must be monic");
  if (f.size() < g.size()) {
    if (f.empty()) return IntPoly{};
    return std::nullopt;
  }
  IntPoly q(f.size() - g.size() + 1, Int(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Int c = f[k + g.size() - 1];
    q[k] = c;
    if (c != 0)
      for (std::size_t j = 0; j < g.size(); ++j) f[k + j] -= c * g[j];
  }
  poly_trim(f);
  if (!f.empty()) return std::nullopt;
  return q;
}

/// x^n - 1.
inline IntPoly x_pow_minus_one(std::int64_t n) {
  IntPoly f(static_cast<std::size_t>(n + 1), Int(0));
  f[0] = -1;
  f[static_cast<std::size_t>(n)] = 1;
  return f;
}

/// Cyclotomic polynomial Phi_n = prod_{d|n} (x^d - 1)^{mu(n/d)}.
inline IntPoly cyclotomic(std::int64_t n) {
  IntPoly num{Int(1)}, den{Int(1)};
  for (std::int64_t d : divisors(n)) {
    const int mu = moebius(n / d);
    if (mu == 1) num = poly_mul(num, x_pow_minus_one(d));
    if (mu == -1) den = poly_mul(den, x_pow_minus_one(d));
  }
  return *poly_exact_div(num, den);
}

/// det(x I - M) from its values at x = 0..n and Newton interpolation.
inline IntPoly char_poly(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw UsageError("characteristic polynomial of a non-square matrix");
  std::vector<Rational> dd(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    IntMatrix a = Int(-1) * m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += Int(static_cast<long>(k));
    dd[k] = Rational(determinant(a));
  }
  for (std::size_t level = 1; level <= n; ++level)
    for (std::size_t k = n; k >= level; --k)
      dd[k] = (dd[k] - dd[k - 1]) / Rational(static_cast<long>(level));
  // Horner on the Newton form: f = dd0 + (x-0)(dd1 + (x-1)(dd2 + ...))
  std::vector<Rational> f{dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    std::vector<Rational> g(f.size() + 1, Rational(0));
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i + 1] += f[i];
      g[i] -= Rational(static_cast<long>(k)) * f[i];
    }
    g[0] += dd[k];
    f = std::move(g);
  }
  IntPoly out;
  for (const auto& c : f) {
    if (!is_integer(c)) throw ConsistencyError("non-integral characteristic polynomial");
    out.push_back(num(c));
  }
  poly_trim(out);
  return out;
}

// ---------------------------------------------------------------------------
// Isometries

/// A lattice isometry of finite order, acting on ambient row vectors by
/// x -> x * ambient(). matrix() holds the coordinates of sigma(b_i) in the
/// lattice basis as row i.
class Isometry {
 public:
  Isometry(Lattice lattice, RatMatrix ambient_map)
      : lattice_(std::move(lattice)), ambient_(std::move(ambient_map)) {
    const std::size_t n = lattice_.ambient_dim();
    if (ambient_.rows() != n || ambient_.cols() != n)
      throw UsageError("ambient map has the wrong shape");
    const RatMatrix& b = lattice_.basis_rational();
    const RatMatrix images = b * ambient_;
    matrix_ = IntMatrix(lattice_.rank(), lattice_.rank());
    for (std::size_t i = 0; i < lattice_.rank(); ++i) {
      auto c = lattice_.coordinates(images.row(i));
      if (!c) throw HypothesisError("invariant", "map leaves the lattice span");
      for (std::size_t j = 0; j < c->size(); ++j) {
        if (!is_integer((*c)[j]))
          throw HypothesisError("invariant", "map does not preserve the lattice");
        matrix_(i, j) = num((*c)[j]);
      }
    }
    const RatMatrix mq = to_rational(matrix_);
    if (mq * lattice_.gram() * mq.transpose() != lattice_.gram())
      throw HypothesisError("isometry", "map does not preserve the Gram matrix");
    IntMatrix power = matrix_;
    const IntMatrix id = IntMatrix::identity(lattice_.rank());
    order_ = 1;
    while (power != id) {
      power = power * matrix_;
      if (++order_ > 100000) throw HypothesisError("finite order", "isometry has no small finite order");
    }
  }

  const Lattice& lattice() const noexcept { return lattice_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }
  const RatMatrix& ambient() const noexcept { return ambient_; }
  std::int64_t order() const noexcept { return order_; }

  RatVector apply(const RatVector& x) const { return row_times(x, ambient_); }

  Isometry power(std::int64_t s) const {
    s %= order_;
    if (s < 0) s += order_;
    RatMatrix a = RatMatrix::identity(ambient_.rows());
    for (std::int64_t i = 0; i < s; ++i) a = a * ambient_;
    return Isometry(lattice_, a);
  }

  /// Same ambient map on another lattice (must be invariant).
  Isometry restrict_to(const Lattice& other) const { return Isometry(other, ambient_); }

  /// Matrix of the map in an arbitrary basis of the lattice span (rows).
  RatMatrix matrix_in_basis(const RatMatrix& basis) const {
    auto coords = solve_left(basis, basis * ambient_);
    RatMatrix m(basis.rows(), basis.rows());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i]) throw UsageError("basis span is not invariant");
      m.set_row(i, *coords[i]);
    }
    return m;
  }

  bool fixed_point_free() const {
    IntMatrix a = IntMatrix::identity(lattice_.rank()) - matrix_;
    return determinant(a) != 0;
  }

  /// (1 - sigma) applied to any lattice in the same ambient space.
  Lattice one_minus_image(const Lattice& l) const {
    return image(l, RatMatrix::identity(ambient_.rows()) - ambient_);
  }

 private:
  Lattice lattice_;
  RatMatrix ambient_;
  IntMatrix matrix_;
  std::int64_t order_ = 1;
};

/// Cyclic shift eps_i -> eps_{i+1} on every block of R^{p d}.
inline RatMatrix coxeter_ambient(std::int64_t p, std::int64_t d) {
  const auto n = static_cast<std::size_t>(p * d);
  RatMatrix a(n, n);
  for (std::int64_t b = 0; b < d; ++b)
    for (std::int64_t i = 0; i < p; ++i)
      a(static_cast<std::size_t>(b * p + i),
        static_cast<std::size_t>(b * p + (i + 1) % p)) = 1;
  return a;
}

/// sigma = r_1 ... r_{p-1}: beta_i -> beta_{i+1} on each block of N^d.
inline Isometry coxeter_sigma(std::int64_t p, std::int64_t d) {
  return Isometry(build_N_power(p, d), coxeter_ambient(p, d));
}

/// theta = -1 on N^d.
inline Isometry theta_isometry(std::int64_t p, std::int64_t d) {
  const auto n = static_cast<std::size_t>(p * d);
  return Isometry(build_N_power(p, d), Rational(-1) * RatMatrix::identity(n));
}

/// Identity map, for degenerate-input checks.
inline Isometry identity_isometry(const Lattice& l) {
  return Isometry(l, RatMatrix::identity(l.ambient_dim()));
}

// ---------------------------------------------------------------------------
// Induced action on k^d x l^d

/// Z_2-linear map on k^d given by the images of the unit words.
struct KMap {
  std::int64_t p = 3;
  std::int64_t d = 1;
  std::vector<KBits> images;

  KBits operator()(KBits v) const {
    KBits out = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
      if ((v >> i) & 1U) out ^= images[i];
    return out;
  }
};

struct CodeAction {
  KMap k;
  /// Image of the unit vector e_b of l^d, for each block b.
  std::vector<LDigits> l_images;
  bool k_fixed_point_free = false;
  bool l_identity = false;
  bool l_negation = false;
};

/// {v : sum_i v_i (rows[i] + e_i) = 0}, i.e. the vectors fixed by the map
/// with the given unit-vector images.
inline std::vector<KBits> f2_left_kernel(const std::vector<KBits>& images) {
  std::vector<std::pair<KBits, KBits>> rows;
  for (std::size_t i = 0; i < images.size(); ++i)
    rows.emplace_back(images[i] ^ (KBits{1} << i), KBits{1} << i);
  std::vector<KBits> kernel;
  std::size_t next = 0;
  for (int b = 63; b >= 0; --b) {
    std::size_t s = next;
    while (s < rows.size() && !((rows[s].first >> b) & 1U)) ++s;
    if (s == rows.size()) continue;
    std::swap(rows[next], rows[s]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != next && ((rows[i].first >> b) & 1U)) {
        rows[i].first ^= rows[next].first;
        rows[i].second ^= rows[next].second;
      }
    ++next;
  }
  for (std::size_t i = next; i < rows.size(); ++i) kernel.push_back(rows[i].second);
  return f2_rref(kernel);
}

/// Action induced on (N°)^d / N^d by an isometry of N^d that preserves
/// (N°)^d, e.g. sigma, its powers or theta.
inline CodeAction code_action(const Isometry& s, std::int64_t p, std::int64_t d) {
  check_code_shape(p, d);
  if (s.lattice().ambient_dim() != static_cast<std::size_t>(p * d))
    throw UsageError("isometry does not act on R^{p d}");
  CodeAction act;
  act.k.p = p;
  act.k.d = d;
  const LDigits zero_l(static_cast<std::size_t>(d), 0);
  for (std::size_t bit = 0; bit < k_length(p, d); ++bit) {
    auto [u, a] = code_label(p, d, s.apply(beta_vector(p, d, KBits{1} << bit, zero_l)));
    if (a != zero_l) throw ConsistencyError("isometry mixes k into l");
    act.k.images.push_back(u);
  }
  act.l_identity = act.l_negation = true;
  for (std::int64_t b = 0; b < d; ++b) {
    LDigits e = zero_l;
    e[static_cast<std::size_t>(b)] = 1;
    auto [u, a] = code_label(p, d, s.apply(beta_vector(p, d, 0, e)));
    if (u != 0) throw ConsistencyError("isometry mixes l into k");
    LDigits neg = zero_l;
    neg[static_cast<std::size_t>(b)] = static_cast<int>(p - 1);
    if (a != e) act.l_identity = false;
    if (a != neg) act.l_negation = false;
    act.l_images.push_back(a);
  }
  act.k_fixed_point_free = f2_left_kernel(act.k.images).empty();
  return act;
}

/// True if C is mapped into itself by the k-part of the action.
inline bool is_invariant(const CodeC& c, const KMap& m) {
  for (KBits g : c.basis())
    if (!c.contains(m(g))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Spectral data

struct SpectralData {
  std::int64_t order = 1;
  IntPoly char_poly;
  /// det(x - sigma) = prod_{d | order} (x^d - 1)^{m_d}
  std::map<std::int64_t, Int> m;
  /// multiplicity of Phi_k in the characteristic polynomial
  std::map<std::int64_t, Int> n;
  /// r_i, i = 0 .. order-1: multiplicity of the eigenvalue xi^{-i}
  std::vector<Int> r;
  std::size_t rank = 0;
};

/// Spectral data of an isometry; `period` overrides the order (it must be a
/// multiple of it), e.g. to view the identity as a map of period 3.
inline SpectralData spectral(const Isometry& s,
                             std::optional<std::int64_t> period = {}) {
  SpectralData sd;
  sd.order = period.value_or(s.order());
  if (sd.order % s.order() != 0)
    throw UsageError("period must be a multiple of the isometry order");
  sd.rank = s.lattice().rank();
  sd.char_poly = char_poly(s.matrix());
  const auto divs = divisors(sd.order);

  IntPoly rest = sd.char_poly;
  for (std::int64_t k : divs) {
    const IntPoly phi = cyclotomic(k);
    Int e = 0;
    while (auto q = poly_exact_div(rest, phi)) {
      rest = *q;
      ++e;
    }
    sd.n[k] = e;
  }
  if (rest != IntPoly{Int(1)})
    throw ConsistencyError("characteristic polynomial has a non-cyclotomic factor");

  for (std::int64_t dv : divs) {
    Int md = 0;
    for (std::int64_t e : divs)
      if (e % dv == 0) md += moebius(e / dv) * sd.n[e];
    sd.m[dv] = md;
  }

  // prod over m_d > 0 must equal f times prod over m_d < 0
  IntPoly pos{Int(1)}, neg = sd.char_poly;
  for (const auto& [dv, md] : sd.m) {
    for (Int i = 0; i < abs(md); ++i) {
      if (md > 0) pos = poly_mul(pos, x_pow_minus_one(dv));
      else neg = poly_mul(neg, x_pow_minus_one(dv));
    }
  }
  if (pos != neg) throw ConsistencyError("m_d do not reproduce the characteristic polynomial");

  sd.r.assign(static_cast<std::size_t>(sd.order), Int(0));
  for (std::int64_t i = 0; i < sd.order; ++i) {
    Int ri = 0;
    for (const auto& [dv, md] : sd.m)
      if ((dv * i) % sd.order == 0) ri += md;
    const std::int64_t k = sd.order / std::gcd(i, sd.order);
    if (ri != sd.n[k])
      throw ConsistencyError("r_i disagrees with the cyclotomic multiplicity");
    sd.r[static_cast<std::size_t>(i)] = ri;
  }
  return sd;
}

}  // namespace orbicode
