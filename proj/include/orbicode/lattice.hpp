#pragma once

// Positive definite rational lattices embedded in a rational quadratic space.
// A lattice is stored denominator-cleared: L = (1/D) * rowspan(basis), with
// `basis` an integer matrix in Hermite normal form, so equal lattices have
// identical representations.

#include "orbicode/exact_linalg.hpp"
#include "orbicode/series.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

namespace orbicode {

/// Default cap on visited nodes for short-vector enumeration.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

class Lattice {
 public:
  Lattice() = default;

  /// Lattice generated over Z by the rows of `gens` (ambient coordinates).
  static Lattice from_generators(std::shared_ptr<const RatMatrix> ambient_gram,
                                 const RatMatrix& gens) {
    if (!ambient_gram || ambient_gram->rows() != ambient_gram->cols())
      throw UsageError("ambient Gram matrix must be square");
    if (gens.cols() != ambient_gram->rows())
      throw UsageError("generator length differs from ambient dimension");
    Int d = 1;
    for (std::size_t i = 0; i < gens.rows(); ++i)
      for (std::size_t j = 0; j < gens.cols(); ++j) d = lcm(d, den(gens(i, j)));
    IntMatrix scaled(gens.rows(), gens.cols());
    for (std::size_t i = 0; i < gens.rows(); ++i)
      for (std::size_t j = 0; j < gens.cols(); ++j)
        scaled(i, j) = num(gens(i, j) * Rational(d));
    return from_scaled(std::move(ambient_gram), hnf(scaled), d);
  }
  static Lattice from_generators(const RatMatrix& ambient_gram,
                                 const RatMatrix& gens) {
    return from_generators(std::make_shared<const RatMatrix>(ambient_gram),
                           gens);
  }

  /// Z^n with the given Gram matrix on its standard basis.
  static Lattice from_gram(const RatMatrix& gram) {
    return from_generators(gram, RatMatrix::identity(gram.rows()));
  }

  /// (1/denom) * rowspan(basis); basis need not be reduced.
  static Lattice from_scaled(std::shared_ptr<const RatMatrix> ambient_gram,
                             IntMatrix basis, Int denom) {
    if (denom <= 0) throw UsageError("lattice denominator must be positive");
    basis = hnf(basis);
    Int g = denom;
    for (std::size_t i = 0; i < basis.rows(); ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j)
        g = gcd(g, basis(i, j));
    if (g > 1) {
      for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) basis(i, j) /= g;
      denom /= g;
    }
    auto data = std::make_shared<Data>();
    data->ambient = std::move(ambient_gram);
    data->denom = denom;
    data->basis = std::move(basis);
    data->finish();
    Lattice l;
    l.data_ = std::move(data);
    return l;
  }

  std::size_t rank() const { return data_->basis.rows(); }
  std::size_t ambient_dim() const { return data_->ambient->rows(); }
  const Int& denom() const { return data_->denom; }
  /// Integer rows spanning denom() * L, in Hermite normal form.
  const IntMatrix& basis() const { return data_->basis; }
  const RatMatrix& basis_rational() const { return data_->basis_q; }
  const RatMatrix& gram() const { return data_->gram; }
  const RatMatrix& ambient_gram() const { return *data_->ambient; }
  std::shared_ptr<const RatMatrix> ambient_ptr() const { return data_->ambient; }

  RatVector basis_vector(std::size_t i) const { return data_->basis_q.row(i); }

  Rational inner(const RatVector& x, const RatVector& y) const {
    const RatMatrix& g = *data_->ambient;
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0 && g(i, j) != 0) acc += x[i] * g(i, j) * y[j];
    }
    return acc;
  }
  Rational norm(const RatVector& x) const { return inner(x, x); }

  /// Rational coordinates in the basis, or nullopt outside the span.
  std::optional<RatVector> coordinates(const RatVector& x) const {
    if (x.size() != ambient_dim()) throw UsageError("vector length mismatch");
    RatVector c = row_times(x, data_->proj);
    if (row_times(c, data_->basis_q) != x) return std::nullopt;
    return c;
  }
  bool contains(const RatVector& x) const {
    auto c = coordinates(x);
    if (!c) return false;
    for (const auto& v : *c)
      if (!is_integer(v)) return false;
    return true;
  }
  RatVector vector_from(const RatVector& coords) const {
    return row_times(coords, data_->basis_q);
  }

  Rational gram_determinant() const { return data_->gram_det; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    if (a.data_ == b.data_) return true;
    return a.denom() == b.denom() && a.basis() == b.basis() &&
           (a.data_->ambient == b.data_->ambient ||
            a.ambient_gram() == b.ambient_gram());
  }

 private:
  struct Data {
    std::shared_ptr<const RatMatrix> ambient;
    Int denom;
    IntMatrix basis;
    RatMatrix basis_q;
    RatMatrix gram;
    RatMatrix proj;
    Rational gram_det;

    void finish() {
      basis_q = to_rational(basis);
      const Rational inv_d(Int(1), denom);
      for (std::size_t i = 0; i < basis_q.rows(); ++i)
        for (std::size_t j = 0; j < basis_q.cols(); ++j) basis_q(i, j) *= inv_d;
      gram = basis_q * (*ambient) * basis_q.transpose();
      check_positive_definite(gram);
      gram_det = determinant(gram);
      const RatMatrix bt = basis_q.transpose();
      proj = basis_q.rows() ? bt * inverse(basis_q * bt) : RatMatrix(bt.rows(), 0);
    }
  };

  static void check_positive_definite(RatMatrix g) {
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < n; ++i) {
      if (g(i, i) <= 0)
        throw HypothesisError("positive definite",
                              "Gram matrix is not positive definite");
      for (std::size_t k = i + 1; k < n; ++k) {
        Rational f = g(k, i) / g(i, i);
        for (std::size_t j = i; j < n; ++j) g(k, j) -= f * g(i, j);
      }
    }
  }

  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Lattice arithmetic

namespace detail {

inline IntMatrix rescale(const Lattice& l, const Int& d) {
  IntMatrix b = l.basis();
  const Int f = d / l.denom();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= f;
  return b;
}

inline void check_same_space(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim() ||
      (a.ambient_ptr() != b.ambient_ptr() &&
       a.ambient_gram() != b.ambient_gram()))
    throw UsageError("lattices live in different ambient spaces");
}

}  // namespace detail

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  detail::check_same_space(a, b);
  const Int d = lcm(a.denom(), b.denom());
  IntMatrix s = detail::rescale(a, d);
  IntMatrix t = detail::rescale(b, d);
  for (std::size_t i = 0; i < t.rows(); ++i) s.append_row(t.row(i));
  return Lattice::from_scaled(a.ambient_ptr(), hnf(s), d);
}

inline Lattice intersect(const Lattice& a, const Lattice& b) {
  detail::check_same_space(a, b);
  const Int d = lcm(a.denom(), b.denom());
  return Lattice::from_scaled(
      a.ambient_ptr(),
      lattice_intersect(detail::rescale(a, d), detail::rescale(b, d)), d);
}

/// Structure of super/sub. Both lattices must have equal rank.
inline AbelianQuotient quotient(const Lattice& super, const Lattice& sub) {
  detail::check_same_space(super, sub);
  const Int d = lcm(super.denom(), sub.denom());
  return quotient(detail::rescale(super, d), detail::rescale(sub, d));
}

/// True if every basis vector of `sub` lies in `super`.
inline bool contains(const Lattice& super, const Lattice& sub) {
  for (std::size_t i = 0; i < sub.rank(); ++i)
    if (!super.contains(sub.basis_vector(i))) return false;
  return true;
}

/// Image of the lattice under the ambient linear map x -> x * map.
inline Lattice image(const Lattice& l, const RatMatrix& map) {
  RatMatrix gens = l.basis_rational() * map;
  return Lattice::from_generators(l.ambient_ptr(), gens);
}

/// Orthogonal direct sum; the ambient space is the direct sum of ambients.
inline Lattice orthogonal_sum(const Lattice& a, const Lattice& b) {
  const std::size_t na = a.ambient_dim(), nb = b.ambient_dim();
  RatMatrix g(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) g(i, j) = a.ambient_gram()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) g(na + i, na + j) = b.ambient_gram()(i, j);
  RatMatrix gens(a.rank() + b.rank(), na + nb);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < na; ++j) gens(i, j) = a.basis_rational()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      gens(a.rank() + i, na + j) = b.basis_rational()(i, j);
  return Lattice::from_generators(g, gens);
}

/// L^circ = {x in Q L : <x, L> in Z}, as G^{-1} B in ambient coordinates.
inline Lattice dual_lattice(const Lattice& l) {
  return Lattice::from_generators(l.ambient_ptr(),
                                  inverse(l.gram()) * l.basis_rational());
}

struct ParityReport {
  bool integral = false;
  bool even = false;
  bool unimodular = false;
  friend bool operator==(const ParityReport&, const ParityReport&) = default;
};

inline ParityReport parity_report(const Lattice& l) {
  ParityReport r;
  const RatMatrix& g = l.gram();
  r.integral = true;
  for (std::size_t i = 0; i < g.rows() && r.integral; ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!is_integer(g(i, j))) {
        r.integral = false;
        break;
      }
  if (!r.integral) return r;
  r.even = true;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (num(g(i, i)) % 2 != 0) r.even = false;
  // Confirm on random vectors: an integral lattice with even diagonal must
  // give even norms everywhere.
  std::mt19937_64 rng(0x0dd5eed);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 32; ++trial) {
    RatVector x(l.rank());
    for (auto& v : x) v = coord(rng);
    Rational n = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) n += x[i] * g(i, j) * x[j];
    if (r.even && num(n) % 2 != 0)
      throw ConsistencyError("even diagonal but odd norm on a random vector");
  }
  r.unimodular = abs(l.gram_determinant()) == 1;
  return r;
}

/// L^circ / L for an integral lattice.
inline AbelianQuotient discriminant_group(const Lattice& l) {
  return quotient(dual_lattice(l), l);
}

// ---------------------------------------------------------------------------
// Short-vector enumeration (Fincke-Pohst with exact rational bounds)

namespace detail {

class ShortVectors {
 public:
  using Visitor =
      std::function<void(const std::vector<std::int64_t>&, const Rational&)>;

  explicit ShortVectors(const RatMatrix& gram, std::uint64_t budget)
      : n_(gram.rows()), budget_(budget) {
    // Q(y) = sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2
    RatMatrix q = gram;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        q(j, i) = q(i, j);
        q(i, j) /= q(i, i);
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) q(k, l) -= q(k, i) * q(i, l);
    }
    diag_.resize(n_);
    mu_.assign(n_, RatVector(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      diag_[i] = q(i, i);
      for (std::size_t j = i + 1; j < n_; ++j) mu_[i][j] = q(i, j);
    }
  }

  /// Visits every integer x with Q(x + center) <= bound.
  void enumerate(const RatVector& center, const Rational& bound,
                 const Visitor& visit) {
    shrink_ = false;
    run(center, bound, &visit);
  }

  /// min Q(x + center) over integer x, given an upper bound that is attained
  /// or exceeded by some x.
  std::optional<Rational> minimum(const RatVector& center,
                                  const Rational& bound) {
    shrink_ = true;
    best_.reset();
    run(center, bound, nullptr);
    return best_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void run(const RatVector& center, const Rational& bound,
           const Visitor* visit) {
    if (center.size() != n_) throw UsageError("center length mismatch");
    center_ = center;
    bound_ = bound;
    visit_ = visit;
    x_.assign(n_, 0);
    y_.assign(n_, Rational(0));
    if (n_ == 0) {
      if (bound >= 0) leaf(Rational(0));
      return;
    }
    descend(n_ - 1, Rational(0));
  }

  void leaf(const Rational& norm) {
    if (shrink_) {
      if (!best_ || norm < *best_) {
        best_ = norm;
        bound_ = norm;
      }
    } else {
      (*visit_)(x_, norm);
    }
  }

  void descend(std::size_t i, const Rational& acc) {
    Rational t = center_[i];
    for (std::size_t j = i + 1; j < n_; ++j)
      if (mu_[i][j] != 0) t += mu_[i][j] * y_[j];
    // Need d_i (x + t)^2 <= bound - acc, i.e. (x - z)^2 <= T with z = -t.
    const Rational rem = bound_ - acc;
    if (rem < 0) return;
    const Rational T = rem / diag_[i];
    const Rational z = -t;
    auto fits = [&](std::int64_t x) {
      Rational dx = Rational(x) - z;
      return dx * dx <= T;
    };
    const std::int64_t mid = to_i64(floor(z + Rational(1, 2)));
    if (!fits(mid)) return;
    const double zd = to_double(z), r = std::sqrt(to_double(T));
    std::int64_t lo = std::min<std::int64_t>(mid, static_cast<std::int64_t>(std::floor(zd - r)));
    std::int64_t hi = std::max<std::int64_t>(mid, static_cast<std::int64_t>(std::ceil(zd + r)));
    while (!fits(lo)) ++lo;
    while (fits(lo - 1)) --lo;
    while (!fits(hi)) --hi;
    while (fits(hi + 1)) ++hi;
    // Zig-zag from the center so minimum searches tighten early.
    for (std::int64_t k = 0;; ++k) {
      std::int64_t cand[2] = {mid + k, mid - k - 1};
      bool any = false;
      for (std::int64_t x : cand) {
        if (x < lo || x > hi) continue;
        any = true;
        if (++nodes_ > budget_)
          throw ResourceError("short-vector enumeration exceeded budget of " +
                                  std::to_string(budget_) + " nodes",
                              nodes_);
        Rational v = Rational(x) + t;
        Rational used = acc + diag_[i] * v * v;
        if (used > bound_) continue;
        x_[i] = x;
        y_[i] = Rational(x) + center_[i];
        if (i == 0)
          leaf(used);
        else
          descend(i - 1, used);
      }
      if (!any) break;
    }
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  RatVector diag_;
  std::vector<RatVector> mu_;
  RatVector center_;
  Rational bound_;
  const Visitor* visit_ = nullptr;
  bool shrink_ = false;
  std::optional<Rational> best_;
  std::vector<std::int64_t> x_;
  RatVector y_;
};

}  // namespace detail

/// A coset L + shift, with the shift reduced to the fundamental
/// parallelepiped of the basis (coordinates in [0, 1)).
class Coset {
 public:
  Coset(Lattice lattice, const RatVector& shift) : lattice_(std::move(lattice)) {
    auto c = lattice_.coordinates(shift);
    if (!c) throw UsageError("coset shift lies outside the lattice span");
    for (auto& v : *c) v = frac(v);
    coords_ = *c;
    shift_ = lattice_.vector_from(coords_);
  }

  const Lattice& lattice() const { return lattice_; }
  const RatVector& shift() const { return shift_; }
  /// Shift coordinates in the lattice basis, each in [0, 1).
  const RatVector& shift_coordinates() const { return coords_; }
  bool is_zero() const {
    for (const auto& v : coords_)
      if (v != 0) return false;
    return true;
  }
  bool contains(const RatVector& x) const {
    RatVector diff = x;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= shift_[i];
    return lattice_.contains(diff);
  }
  friend bool operator==(const Coset& a, const Coset& b) {
    return a.lattice_ == b.lattice_ && a.coords_ == b.coords_;
  }

 private:
  Lattice lattice_;
  RatVector coords_;
  RatVector shift_;
};

/// Exact minimum norm over a coset. `bound_hint`, when given, must be at
/// least the true minimum; by default the norm of the reduced shift is used.
inline Rational coset_min_norm(const Coset& c,
                               std::optional<Rational> bound_hint = {},
                               std::uint64_t budget = kDefaultBudget) {
  if (c.is_zero()) return 0;
  const Lattice& l = c.lattice();
  Rational bound = bound_hint ? *bound_hint : l.norm(c.shift());
  detail::ShortVectors sv(l.gram(), budget);
  auto m = sv.minimum(c.shift_coordinates(), bound);
  if (!m)
    throw HypothesisError("bound_hint",
                          "no coset vector within the supplied bound");
  return *m;
}

/// Theta series sum_{x in L} q^{<x,x>/2}, exact for exponents up to and
/// including `max_exponent`.
inline QSeries theta_coeffs(const Lattice& l, const Rational& max_exponent,
                            std::uint64_t budget = kDefaultBudget) {
  Int m = 1;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m = lcm(m, den(l.gram()(i, j)));
  const Int d = 2 * m;
  std::map<Rational, Int> counts;
  detail::ShortVectors sv(l.gram(), budget);
  sv.enumerate(RatVector(l.rank(), Rational(0)), 2 * max_exponent,
               [&](const std::vector<std::int64_t>&, const Rational& n) {
                 counts[n / 2] += 1;
               });
  QSeries s(to_i64(d), max_exponent + Rational(Int(1), d));
  for (const auto& [e, c] : counts) s.add_term(e, Rational(c));
  return s;
}

// ---------------------------------------------------------------------------
// The lattice N = sqrt(2) A_{p-1} realized in R^p with eps_i = sqrt(2) e_i,
// i.e. ambient Gram 2 * Id and beta_i = e_i - e_{i+1}.

inline void require_odd_p(std::int64_t p) {
  if (p < 3 || p % 2 == 0)
    throw UsageError("p must be an odd integer >= 3 (got " + std::to_string(p) +
                     ")");
}

/// Ambient Gram 2 * Id on R^{p d} shared by all lattices between N^d and
/// its dual.
inline std::shared_ptr<const RatMatrix> n_ambient(std::int64_t p,
                                                  std::int64_t d) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>,
                  std::shared_ptr<const RatMatrix>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, d}];
  if (!slot) {
    const auto n = static_cast<std::size_t>(p * d);
    auto g = std::make_shared<RatMatrix>(n, n);
    for (std::size_t i = 0; i < n; ++i) (*g)(i, i) = 2;
    slot = std::move(g);
  }
  return slot;
}

/// beta_i (1 <= i <= p-1) in block `block` of R^{p d}; i = 0 gives beta_0.
inline RatVector n_root(std::int64_t p, std::int64_t d, std::int64_t block,
                        std::int64_t i) {
  RatVector v(static_cast<std::size_t>(p * d));
  const std::int64_t off = block * p;
  const std::int64_t a = (i == 0 ? p : i) - 1;  // eps_i, eps_0 = eps_p
  const std::int64_t b = i % p;                 // eps_{i+1}
  v[static_cast<std::size_t>(off + a)] += 1;
  v[static_cast<std::size_t>(off + b)] -= 1;
  return v;
}

/// gamma = (1/p) sum_i i beta_i in block `block` of R^{p d}.
inline RatVector n_gamma(std::int64_t p, std::int64_t d, std::int64_t block) {
  RatVector v(static_cast<std::size_t>(p * d));
  const std::int64_t off = block * p;
  for (std::int64_t i = 0; i < p; ++i)
    v[static_cast<std::size_t>(off + i)] = Rational(1, p);
  v[static_cast<std::size_t>(off + p - 1)] -= 1;
  return v;
}

/// N^d = (sqrt(2) A_{p-1})^d.
inline Lattice build_N_power(std::int64_t p, std::int64_t d) {
  require_odd_p(p);
  if (d < 1) throw UsageError("d must be positive");
  RatMatrix gens(static_cast<std::size_t>((p - 1) * d),
                 static_cast<std::size_t>(p * d));
  std::size_t r = 0;
  for (std::int64_t b = 0; b < d; ++b)
    for (std::int64_t i = 1; i < p; ++i) gens.set_row(r++, n_root(p, d, b, i));
  return Lattice::from_generators(n_ambient(p, d), gens);
}

inline Lattice build_N(std::int64_t p) { return build_N_power(p, 1); }

inline RatVector gamma_vector(std::int64_t p) {
  require_odd_p(p);
  return n_gamma(p, 1, 0);
}

}  // namespace orbicode
