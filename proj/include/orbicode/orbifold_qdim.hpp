#pragma once

// Radicals, twisted-module counts, top-level dimensions, lowest conformal
// weights and exact quantum dimensions for lattices L_{C x D} twisted by
// powers of the Coxeter element.

#include "orbicode/cocycles.hpp"
#include "orbicode/code_search.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace orbicode {

/// Positive real number sqrt(square), square rational.
class QdimValue {
 public:
  QdimValue() = default;
  explicit QdimValue(Rational square) : square_(std::move(square)) {
    if (square_ <= 0) throw ConsistencyError("quantum dimension must be positive");
  }
  const Rational& squared() const noexcept { return square_; }

  /// sqrt(square) = coefficient * sqrt(radicand), radicand squarefree.
  std::pair<Rational, Int> normalized() const {
    // sqrt(a/b) = sqrt(a b) / b
    Int ab = num(square_) * den(square_);
    Int outside = 1, inside = 1;
    for (Int f = 2; f * f <= ab; ++f) {
      while (ab % (f * f) == 0) {
        ab /= f * f;
        outside *= f;
      }
      if (ab % f == 0) {
        ab /= f;
        inside *= f;
      }
    }
    inside *= ab;
    return {Rational(outside, den(square_)), inside};
  }
  bool is_rational() const { return normalized().second == 1; }
  double to_double() const { return std::sqrt(orbicode::to_double(square_)); }
  std::string to_string() const {
    auto [c, r] = normalized();
    if (r == 1) return orbicode::to_string(c);
    return orbicode::to_string(c) + "*sqrt(" + r.str() + ")";
  }
  friend bool operator==(const QdimValue&, const QdimValue&) = default;

 private:
  Rational square_ = 1;
};

inline void require_prime_order(const Isometry& s) {
  if (!is_prime(s.order()) || s.order() == 2)
    throw HypothesisError("odd prime order", "isometry order must be an odd prime");
  if (!s.fixed_point_free())
    throw HypothesisError("fixed-point-free", "isometry has nonzero fixed vectors");
}

/// R = ((1 - sigma) L°) cap L, cross-checked against the radical of c^sigma.
inline Lattice radical(const Isometry& s) {
  require_prime_order(s);
  const Lattice& l = s.lattice();
  Lattice r = intersect(s.one_minus_image(dual_lattice(l)), l);
  if (radical_of(CocycleSpec(s)) != r)
    throw ConsistencyError("radical of c^sigma differs from ((1-sigma)L°) cap L");
  return r;
}

/// |R / (1 - sigma) L|, the number of inequivalent irreducible twisted
/// modules. Needs L integral so that (1 - sigma) L lies in R.
inline Int num_twisted_irreps(const Isometry& s, const Lattice& r) {
  if (!parity_report(s.lattice()).integral)
    throw HypothesisError("integral lattice",
                          "(1 - sigma) L is not contained in R for non-integral L");
  return quotient(r, s.one_minus_image(s.lattice())).order();
}

/// dim T = sqrt([L : R]); must be an integer.
inline Int dim_T(const Lattice& l, const Lattice& r) {
  const Int index = quotient(l, r).order();
  Int root;
  if (!exact_sqrt(index, root)) throw ConsistencyError("[L : R] is not a square");
  return root;
}

/// Lowest conformal weight (1/4p^2) sum_i i (p - i) r_i of the twisted
/// Heisenberg module.
inline Rational rho_twisted(const SpectralData& sd) {
  if (sd.r.empty() || sd.r[0] != 0)
    throw HypothesisError("fixed-point-free", "r_0 must vanish");
  const std::int64_t p = sd.order;
  Rational acc = 0;
  for (std::int64_t i = 1; i < p; ++i)
    acc += Rational(Int(i * (p - i)) * sd.r[static_cast<std::size_t>(i)]);
  return acc / Rational(4 * p * p);
}

/// prod_d d^{m_d}
inline Rational cyclotomic_volume(const SpectralData& sd) {
  Rational v = 1;
  for (const auto& [dv, md] : sd.m) {
    const Int e = abs(md);
    const Rational f = md > 0 ? Rational(dv) : Rational(Int(1), Int(dv));
    for (Int i = 0; i < e; ++i) v *= f;
  }
  return v;
}

struct QdimReport {
  /// |L°/L| dim_T^2 / prod d^{m_d}
  QdimValue theorem;
  /// p^{-l/(p-1)} |L°/R|, prime order only
  std::optional<QdimValue> corollary;
};

inline QdimReport qdim_exact(const Isometry& s, const SpectralData& sd, const Int& dimT,
                             const std::optional<Lattice>& r = {}) {
  const Lattice& l = s.lattice();
  if (sd.r.empty() || sd.r[0] != 0)
    throw HypothesisError("fixed-point-free", "r_0 must vanish");
  if (!parity_report(l).even) throw HypothesisError("even lattice", "L must be even");
  const Lattice dual = dual_lattice(l);
  const Int disc = quotient(dual, l).order();
  QdimReport rep;
  rep.theorem = QdimValue(Rational(disc * dimT * dimT) / cyclotomic_volume(sd));
  if (is_prime(sd.order) && r) {
    const std::int64_t p = sd.order;
    const std::size_t ell = l.rank();
    if (ell % static_cast<std::size_t>(p - 1) != 0)
      throw ConsistencyError("rank is not a multiple of p - 1");
    const Int pe = ipow(Int(p), static_cast<unsigned>(ell / static_cast<std::size_t>(p - 1)));
    rep.corollary = QdimValue(Rational(quotient(dual, *r).order(), pe));
    if (!(*rep.corollary == rep.theorem))
      throw ConsistencyError("quantum dimension formulas disagree");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Statements about L_{C x D}

struct CodeHypotheses {
  bool sigma_invariant = false;
  bool c_even = false;
  bool d_even = false;
  bool c_self_dual = false;
  bool p_prime = false;
};

inline CodeHypotheses check_hypotheses(const CodeC& c, const CodeD& dc) {
  CodeHypotheses h;
  h.p_prime = is_prime(c.p());
  h.sigma_invariant = is_invariant(c, code_action(coxeter_sigma(c.p(), c.d()), c.p(), c.d()).k);
  auto ev = evenness(c, dc);
  h.c_even = ev.c_even;
  h.d_even = ev.d_even;
  h.c_self_dual = self_dual(c);
  return h;
}

/// Names the first failing standing hypothesis (sigma-invariant even C, even
/// D, prime p), or nullopt.
inline std::optional<std::string> failed_hypothesis(const CodeHypotheses& h) {
  if (!h.p_prime) return "p prime";
  if (!h.sigma_invariant) return "C sigma-invariant";
  if (!h.c_even) return "C even";
  if (!h.d_even) return "D even";
  return std::nullopt;
}

inline void require_standing(const CodeC& c, const CodeD& dc) {
  if (auto f = failed_hypothesis(check_hypotheses(c, dc)))
    throw HypothesisError(*f, "hypothesis '" + *f + "' does not hold");
}

/// sigma^power restricted to L_{C x D}.
inline Isometry twist_on(const Lattice& l, std::int64_t p, std::int64_t d, std::int64_t power) {
  const RatMatrix step = coxeter_ambient(p, d);
  RatMatrix a = RatMatrix::identity(step.rows());
  for (std::int64_t i = 0; i < ((power % p) + p) % p; ++i) a = a * step;
  return Isometry(l, a);
}

struct RadicalData {
  bool r_eq_formula = false;
  AbelianQuotient quot_D;  ///< R / (1 - sigma^s) L
  AbelianQuotient quot_C;  ///< (1 - sigma^s) L° / R
  AbelianQuotient coker;   ///< L° / (1 - sigma^s) L°
  bool quot_D_matches = false;
  bool quot_C_matches = false;
  bool coker_matches = false;
  bool chain_matches = false;  ///< p^d |C^perp/C| = |L°/R|
  bool all() const {
    return r_eq_formula && quot_D_matches && quot_C_matches && coker_matches && chain_matches;
  }
};

inline RadicalData radical_data_check(const CodeC& c, const CodeD& dc, std::int64_t power) {
  require_standing(c, dc);
  const std::int64_t p = c.p(), d = c.d();
  if (power % p == 0) throw UsageError("twist power must be coprime to p");
  const CodeC cp = dual_code_C(c);
  const CodeD dp = dual_code_D(dc);
  const Lattice l = to_lattice(c, dc);
  const Lattice ld = dual_lattice(l);
  const Isometry s = twist_on(l, p, d, power);
  const Lattice r = radical(s);
  RadicalData out;
  out.r_eq_formula = r == s.one_minus_image(to_lattice(c, dp));
  out.quot_D = quotient(r, s.one_minus_image(l));
  const Lattice img_dual = s.one_minus_image(ld);
  out.quot_C = quotient(img_dual, r);
  out.coker = quotient(ld, img_dual);
  out.quot_D_matches = out.quot_D == AbelianQuotient::elementary(p, dp.dim() - dc.dim());
  out.quot_C_matches = out.quot_C == AbelianQuotient::elementary(2, cp.dim() - c.dim());
  out.coker_matches = out.coker.order() == ipow(Int(p), static_cast<unsigned>(d));
  out.chain_matches = ipow(Int(p), static_cast<unsigned>(d)) * out.quot_C.order() ==
                      quotient(ld, r).order();
  return out;
}

/// qdim^2 = |C^perp / C|, cross-checked against qdim_exact on L_{C x D};
/// also verifies dim T = |D|.
inline QdimValue qdim_CD(const CodeC& c, const CodeD& dc, std::int64_t power) {
  require_standing(c, dc);
  const std::int64_t p = c.p(), d = c.d();
  const CodeC cp = dual_code_C(c);
  const QdimValue v(Rational(ipow(Int(2), static_cast<unsigned>(cp.dim() - c.dim()))));
  const Lattice l = to_lattice(c, dc);
  const Isometry s = twist_on(l, p, d, power);
  const Lattice r = radical(s);
  const Int dt = dim_T(l, r);
  if (dt != dc.size()) throw ConsistencyError("dim T differs from |D|");
  const QdimReport rep = qdim_exact(s, spectral(s), dt, r);
  if (!(rep.theorem == v)) throw ConsistencyError("qdim^2 differs from |C^perp/C|");
  return v;
}

inline bool group_like_fusion(const CodeC& c, const CodeD& dc) {
  require_standing(c, dc);
  return self_dual(c);
}

struct IrrCensus {
  Int order;
  Int expected;  ///< p^{d - 2r + 2}
  Int untwisted;
  std::vector<Int> twisted;  ///< per twist power s = 1 .. p-1
  std::set<Rational> weights_mod_Z;
  bool weights_ok = false;
  Rational rho;
  Rational rho_closed_form;
  bool ok() const {
    return order == expected && weights_ok && rho == rho_closed_form;
  }
};

inline IrrCensus irr_census(const CodeC& c, const CodeD& dc,
                            std::uint64_t budget = kDefaultBudget) {
  require_standing(c, dc);
  const std::int64_t p = c.p(), d = c.d();
  if (!self_dual(c)) throw HypothesisError("C self-dual", "C must equal its dual");
  if (p == 3 && d % 3 != 0) throw HypothesisError("3 | d", "p = 3 requires 3 | d");
  IrrCensus out;
  const Lattice l = to_lattice(c, dc);
  const Lattice ld = dual_lattice(l);
  out.untwisted = Int(p) * quotient(ld, l).order();
  out.order = out.untwisted;
  for (std::int64_t s = 1; s < p; ++s) {
    const Isometry iso = twist_on(l, p, d, s);
    const Int n = Int(p) * num_twisted_irreps(iso, radical(iso));
    out.twisted.push_back(n);
    out.order += n;
  }
  out.expected = ipow(Int(p), static_cast<unsigned>(d - 2 * static_cast<std::int64_t>(dc.dim()) + 2));

  // lowest weights of the untwisted sectors: min norm / 2 over cosets of L in L°
  const CodeD dp = dual_code_D(dc);
  for (const auto& a : dp.words()) {
    Rational w = coset_min_norm(Coset(l, beta_vector(p, d, 0, a)), {}, budget) / 2;
    out.weights_mod_Z.insert(frac(w));
  }
  out.rho = rho_twisted(spectral(twist_on(l, p, d, 1)));
  out.rho_closed_form = Rational(d * (p - 1) * (p + 1), 24 * p);
  for (std::int64_t s = 2; s < p; ++s)
    if (rho_twisted(spectral(twist_on(l, p, d, s))) != out.rho)
      throw ConsistencyError("twisted lowest weight depends on the twist power");
  out.weights_mod_Z.insert(frac(out.rho));
  out.weights_ok = true;
  for (const auto& w : out.weights_mod_Z)
    if (!is_integer(w * p)) out.weights_ok = false;
  return out;
}

}  // namespace orbicode
