#pragma once

// Bilinear maps eps, eps^sigma and alternating maps c, c^sigma attached to a
// fixed-point-free isometry of odd order p, with values in Z_s.

#include "orbicode/sigma_isometry.hpp"

#include <optional>
#include <vector>

namespace orbicode {

enum class CocycleKind { c, c_sigma, eps, eps_sigma };

/// gcd of the Gram entries, i.e. the generator of <L, L> as a subgroup of Q.
inline Rational inner_product_content(const Lattice& l) {
  Int n = 0, m = 1;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) {
      n = gcd(n, num(l.gram()(i, j)));
      m = lcm(m, den(l.gram()(i, j)));
    }
  return Rational(n, m);
}

/// Smallest even s with s <L, L> in 2pZ.
inline Int minimal_modulus(const Lattice& l, std::int64_t p) {
  const Rational g = inner_product_content(l);
  const Int two_pm = 2 * Int(p) * den(g);
  return lcm(Int(2), two_pm / gcd(two_pm, num(g)));
}

class CocycleSpec {
 public:
  /// `modulus` defaults to the minimal admissible value.
  explicit CocycleSpec(Isometry iso, std::optional<Int> modulus = {})
      : iso_(std::move(iso)) {
    p_ = iso_.order();
    if (p_ < 3 || p_ % 2 == 0)
      throw HypothesisError("odd order", "isometry order must be odd and >= 3");
    if (!iso_.fixed_point_free())
      throw HypothesisError("fixed-point-free", "isometry has nonzero fixed vectors");
    s_ = modulus.value_or(minimal_modulus(iso_.lattice(), p_));
    if (s_ <= 0 || s_ % 2 != 0)
      throw HypothesisError("modulus", "s must be a positive even integer");
    const RatMatrix& g = iso_.lattice().gram();
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) {
        Rational v = Rational(s_) * g(i, j) / Rational(2 * p_);
        if (!is_integer(v))
          throw HypothesisError("modulus", "s <L,L> not in 2pZ at Gram entry (" +
                                               std::to_string(i) + "," +
                                               std::to_string(j) + ") = " +
                                               to_string(g(i, j)));
      }
    // sigma^i on ambient vectors, i = 0 .. p-1
    powers_.push_back(RatMatrix::identity(iso_.ambient().rows()));
    for (std::int64_t i = 1; i < p_; ++i) powers_.push_back(powers_.back() * iso_.ambient());
  }

  const Isometry& isometry() const noexcept { return iso_; }
  const Lattice& lattice() const noexcept { return iso_.lattice(); }
  std::int64_t p() const noexcept { return p_; }
  const Int& modulus() const noexcept { return s_; }

  /// <sigma^i alpha, beta>
  Rational twisted_inner(std::int64_t i, const RatVector& a, const RatVector& b) const {
    return lattice().inner(row_times(a, powers_[static_cast<std::size_t>(i % p_)]), b);
  }

  void require_member(const RatVector& v) const {
    if (!lattice().contains(v)) throw UsageError("vector is not in the lattice");
  }

 private:
  Isometry iso_;
  std::int64_t p_ = 3;
  Int s_ = 6;
  std::vector<RatMatrix> powers_;
};

// Rational-valued forms on a rational lattice.

inline Rational eps_check(const CocycleSpec& sp, const RatVector& a, const RatVector& b) {
  Rational acc = 0;
  for (std::int64_t i = 1; i <= (sp.p() - 1) / 2; ++i) acc += sp.twisted_inner(i, a, b);
  return acc / 2;
}

inline Rational eps_sigma_check(const CocycleSpec& sp, const RatVector& a,
                                const RatVector& b) {
  Rational acc = 0;
  for (std::int64_t i = 1; i <= (sp.p() - 1) / 2; ++i) acc += i * sp.twisted_inner(i, a, b);
  return acc / sp.p();
}

inline Rational c_check(const CocycleSpec& sp, const RatVector& a, const RatVector& b) {
  return eps_check(sp, a, b) - eps_check(sp, b, a);
}

inline Rational c_sigma_check(const CocycleSpec& sp, const RatVector& a,
                              const RatVector& b) {
  return eps_sigma_check(sp, a, b) - eps_sigma_check(sp, b, a);
}

/// f_p(t) = sum_{i <= (p-1)/2} i (t^i - t^{p-i}), coefficients of t^0..t^{p-1}.
inline std::vector<Int> f_p_coefficients(std::int64_t p) {
  std::vector<Int> f(static_cast<std::size_t>(p), Int(0));
  for (std::int64_t i = 1; i <= (p - 1) / 2; ++i) {
    f[static_cast<std::size_t>(i)] += i;
    f[static_cast<std::size_t>(p - i)] -= i;
  }
  return f;
}

/// (1/p) <f_p(sigma) alpha, beta>
inline Rational c_sigma_via_f(const CocycleSpec& sp, const RatVector& a,
                              const RatVector& b) {
  const auto f = f_p_coefficients(sp.p());
  Rational acc = 0;
  for (std::int64_t i = 1; i < sp.p(); ++i)
    if (f[static_cast<std::size_t>(i)] != 0)
      acc += Rational(f[static_cast<std::size_t>(i)]) * sp.twisted_inner(i, a, b);
  return acc / sp.p();
}

namespace detail {

inline Int scaled_mod(const CocycleSpec& sp, const Rational& v) {
  Rational sv = Rational(sp.modulus()) * v;
  if (!is_integer(sv)) throw ConsistencyError("scaled form value is not an integer");
  return mod(num(sv), sp.modulus());
}

}  // namespace detail

/// Z_s-valued forms s * (rational form) + sZ, defined on any rational lattice.
inline Int appendix_form(const CocycleSpec& sp, CocycleKind which,
                         const RatVector& a, const RatVector& b) {
  sp.require_member(a);
  sp.require_member(b);
  switch (which) {
    case CocycleKind::eps: return detail::scaled_mod(sp, eps_check(sp, a, b));
    case CocycleKind::eps_sigma: return detail::scaled_mod(sp, eps_sigma_check(sp, a, b));
    case CocycleKind::c: return detail::scaled_mod(sp, c_check(sp, a, b));
    case CocycleKind::c_sigma: return detail::scaled_mod(sp, c_sigma_check(sp, a, b));
  }
  throw UsageError("unknown cocycle kind");
}

/// c(alpha, beta) = (s/2) <alpha, beta> mod s, for integral inner products.
inline Int c_standard(const CocycleSpec& sp, const RatVector& a, const RatVector& b) {
  sp.require_member(a);
  sp.require_member(b);
  Rational v = Rational(sp.modulus() / 2) * sp.lattice().inner(a, b);
  if (!is_integer(v)) throw HypothesisError("even lattice", "inner product is not integral");
  return mod(num(v), sp.modulus());
}

/// c^sigma(alpha, beta) = (s/p) sum_{i=1}^{p-1} i <sigma^i alpha, beta> mod s.
inline Int c_sigma(const CocycleSpec& sp, const RatVector& a, const RatVector& b) {
  sp.require_member(a);
  sp.require_member(b);
  Rational acc = 0;
  for (std::int64_t i = 1; i < sp.p(); ++i) acc += i * sp.twisted_inner(i, a, b);
  Rational v = Rational(sp.modulus()) * acc / sp.p();
  if (!is_integer(v)) throw HypothesisError("even lattice", "c^sigma value is not integral");
  return mod(num(v), sp.modulus());
}

/// {alpha in L : c^sigma(alpha, beta) = 0 for all beta in L}, using the
/// appendix form (which agrees with c_sigma on even lattices).
inline Lattice radical_of(const CocycleSpec& sp) {
  const Lattice& l = sp.lattice();
  const std::size_t r = l.rank();
  const Int& s = sp.modulus();
  // x C = 0 mod s  <=>  (x, y) in the left kernel of [C; s I]
  IntMatrix stacked(2 * r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j)
      stacked(i, j) = appendix_form(sp, CocycleKind::c_sigma, l.basis_vector(i),
                                    l.basis_vector(j));
    stacked(r + i, i) = s;
  }
  IntMatrix k = left_kernel(stacked);
  RatMatrix gens(k.rows(), l.ambient_dim());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    RatVector x(r);
    for (std::size_t j = 0; j < r; ++j) x[j] = Rational(k(i, j));
    gens.set_row(i, l.vector_from(x));
  }
  return Lattice::from_generators(l.ambient_ptr(), gens);
}

}  // namespace orbicode
