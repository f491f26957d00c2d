#pragma once

// q-expansions of eta, theta series, lattice VOA characters and twisted
// Heisenberg characters, and their floating point evaluation on tau = i y.

#include "orbicode/orbifold_qdim.hpp"
#include "orbicode/series.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orbicode {

namespace detail {

/// (1 - q^e)^k truncated at `precision`, for e > 0 and any integer k.
inline QSeries one_minus_q_pow(const Rational& e, const Int& k, const Rational& precision) {
  std::vector<std::pair<Rational, Rational>> terms;
  if (k >= 0) {
    Int binom = 1;
    for (Int j = 0; j <= k && e * Rational(j) < precision; ++j) {
      terms.emplace_back(e * Rational(j), (j % 2 == 0) ? Rational(binom) : Rational(-binom));
      binom = binom * (k - j) / (j + 1);
    }
  } else {
    // (1 - x)^{-m} = sum_j binom(m - 1 + j, j) x^j
    const Int m = -k;
    Int binom = 1;
    for (Int j = 0; e * Rational(j) < precision; ++j) {
      terms.emplace_back(e * Rational(j), Rational(binom));
      binom = binom * (m + j) / (j + 1);
    }
  }
  return QSeries::from_terms(terms, precision);
}

inline std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
  return to_i64(lcm(Int(a), Int(b)));
}

}  // namespace detail

/// prod_{n >= 1} (1 - q^{n/d})^k known below q^{precision}.
inline QSeries euler_product(std::int64_t d, const Int& k, const Rational& precision) {
  QSeries acc = QSeries::monomial(0, 1, precision).with_denom(
      detail::lcm_i64(d, to_i64(den(precision))));
  if (k == 0) return acc;
  for (std::int64_t n = 1; Rational(n, d) < precision; ++n)
    acc = acc * detail::one_minus_q_pow(Rational(n, d), k, precision);
  return acc;
}

/// q^{1/24} prod (1 - q^n), exact through q^{1/24 + order}.
inline QSeries eta_series(std::int64_t order) {
  if (order < 1) throw UsageError("eta order must be at least 1");
  const Rational top = Rational(1, 24) + Rational(order + 1);
  return euler_product(1, 1, Rational(order + 1)).shifted(Rational(1, 24)).with_denom(24).truncated(top);
}

/// Z_{M(1)(sigma)} = q^{rho - l/24} / prod_{i=1}^{p-1} prod_{n>=0}
/// (1 - q^{i/p + n})^{r_{p-i}}, known through `order` above its leading
/// exponent.
inline QSeries twisted_char(const SpectralData& sd, std::int64_t p, std::size_t ell,
                            std::int64_t order) {
  if (sd.order != p) throw UsageError("spectral data has a different period");
  if (ell != sd.rank) throw UsageError("rank does not match spectral data");
  if (order < 1) throw UsageError("series order must be at least 1");
  const Rational rho = rho_twisted(sd);
  const Rational lead = rho - Rational(Int(ell), Int(24));
  const Rational prec = Rational(order + 1);
  const std::int64_t dn = detail::lcm_i64(24, 4 * p * p);
  QSeries acc = QSeries::monomial(0, 1, prec).with_denom(dn);
  for (std::int64_t i = 1; i < p; ++i) {
    const Int& mult = sd.r[static_cast<std::size_t>(p - i)];
    if (mult == 0) continue;
    for (std::int64_t n = 0; Rational(i, p) + Rational(n) < prec; ++n)
      acc = acc * detail::one_minus_q_pow(Rational(i, p) + Rational(n), -mult, prec);
  }
  return acc.shifted(lead);
}

/// q^{rho - l/24} prod_{d | n} q^{m_d / 24 d} eta(tau/d)^{-m_d}, the same
/// character written through the m_d.
inline QSeries twisted_char_via_eta(const SpectralData& sd, std::int64_t order) {
  const Rational rho = rho_twisted(sd);
  const Rational prec = Rational(order + 1);
  Rational shift = rho - Rational(Int(sd.rank), Int(24));
  QSeries acc = QSeries::monomial(0, 1, prec);
  for (const auto& [dv, md] : sd.m) {
    if (md == 0) continue;
    // eta(tau/d)^{-m} = q^{-m/24d} prod (1 - q^{n/d})^{-m}; the q-power cancels
    acc = acc * euler_product(dv, -md, prec);
  }
  return acc.with_denom(detail::lcm_i64(acc.denom(), to_i64(den(shift)))).shifted(shift);
}

/// eta(tau)^{-l}, known through `order` above q^{-l/24}.
inline QSeries eta_power_inverse(std::size_t ell, std::int64_t order) {
  return euler_product(1, -Int(static_cast<long>(ell)), Rational(order + 1))
      .shifted(-Rational(Int(ell), Int(24)));
}

/// Z_{V_L} = Theta_L / eta^l through `order` above q^{-l/24}.
inline QSeries lattice_voa_char(const Lattice& l, std::int64_t order,
                                std::uint64_t budget = kDefaultBudget) {
  QSeries th = theta_coeffs(l, Rational(order), budget);
  return (th * eta_power_inverse(l.rank(), order))
      .truncated(Rational(order + 1) - Rational(Int(l.rank()), Int(24)));
}

/// Floating point eta(i y), product to machine precision.
inline double eta_at(double y) {
  if (!(y > 0)) throw UsageError("y must be positive");
  const double q = std::exp(-2.0 * std::numbers::pi * y);
  double acc = std::exp(-2.0 * std::numbers::pi * y / 24.0);
  double qn = q;
  for (int n = 1; n < 100000 && qn > 1e-18; ++n, qn *= q) acc *= 1.0 - qn;
  return acc;
}

/// |eta(i y) - y^{-1/2} eta(i / y)|
inline double eta_transform_residual(double y) {
  return std::abs(eta_at(y) - eta_at(1.0 / y) / std::sqrt(y));
}

/// |Theta_L(i y) - y^{-l/2} v^{-1} Theta_{L°}(i / y)| with both theta series
/// summed over vectors of norm <= max_norm.
inline double transform_check(const Lattice& l, double y, const Rational& max_norm = 60,
                              std::uint64_t budget = kDefaultBudget) {
  if (!(y > 0)) throw UsageError("y must be positive");
  const QSeries a = theta_coeffs(l, max_norm / 2, budget);
  const QSeries b = theta_coeffs(dual_lattice(l), max_norm / 2, budget);
  const double v = std::sqrt(to_double(l.gram_determinant()));
  const double rhs =
      std::pow(y, -static_cast<double>(l.rank()) / 2.0) / v * b.evaluate_at_y(1.0 / y);
  return std::abs(a.evaluate_at_y(y) - rhs);
}

struct NumericQdimPoint {
  double y = 0;
  /// dim_T Z_M(i y) / Z_V(i y) from the q-expansions
  double ratio = 0;
  /// ratio divided by the S-dual correction factor
  double estimate = 0;
  /// change of `estimate` when the expansions lose one order
  double truncation = 0;
};

struct NumericQdim {
  double value = 0;
  /// |difference of the last two estimates| + truncation bound
  double error = 0;
  double limit_prefactor = 0;
  std::vector<NumericQdimPoint> points;
};

inline const std::vector<double>& default_y_schedule() {
  static const std::vector<double> ys{1.0, 0.8, 0.6, 0.5};
  return ys;
}

/// Quantum dimension as the y -> 0 limit of dim_T Z_M(iy) / Z_V(iy).
///
/// After S-transforming every factor the ratio equals
///   dim_T v prod d^{-m_d/2} * eta(i/y)^l prod_d eta(i d/y)^{-m_d} / Theta_{L°}(i/y)
/// and the correction factor (everything after the prefactor) tends to 1
/// geometrically in exp(-2 pi / y). Each estimate divides the directly
/// evaluated ratio by that correction.
inline NumericQdim numeric_qdim(const Lattice& l, const SpectralData& sd, const Int& dimT,
                                const std::vector<double>& ys = default_y_schedule(),
                                std::int64_t order = 0, double tolerance = 1e-9,
                                std::uint64_t budget = kDefaultBudget) {
  if (ys.empty()) throw UsageError("empty y schedule");
  for (double y : ys)
    if (!(y > 0)) throw UsageError("y values must be positive");
  if (sd.r.empty() || sd.r[0] != 0)
    throw HypothesisError("fixed-point-free", "r_0 must vanish");
  if (!parity_report(l).even) throw HypothesisError("even lattice", "L must be even");
  const double y_min = *std::min_element(ys.begin(), ys.end());
  const double y_max = *std::max_element(ys.begin(), ys.end());
  if (order <= 0) order = static_cast<std::int64_t>(std::ceil(8.0 / y_min)) + 2;
  const std::int64_t dual_order = static_cast<std::int64_t>(std::ceil(8.0 * y_max)) + 2;
  const std::int64_t p = sd.order;
  const std::size_t ell = l.rank();

  const QSeries zm = twisted_char(sd, p, ell, order);
  const QSeries th = theta_coeffs(l, Rational(order + 1), budget);
  const QSeries eta = eta_series(order);
  const QSeries th_dual = theta_coeffs(dual_lattice(l), Rational(dual_order), budget);
  const QSeries eta_dual = eta_series(dual_order);

  auto ratio_at = [&](double y, std::int64_t ord) {
    const Rational cut = Rational(ord + 1);
    double num = to_double(Rational(dimT)) * zm.truncated(cut + zm.valuation()).evaluate_at_y(y);
    double den = th.truncated(cut).evaluate_at_y(y) /
                 std::pow(eta.truncated(cut).evaluate_at_y(y), static_cast<double>(ell));
    return num / den;
  };
  auto correction_at = [&](double y, std::int64_t ord) {
    const Rational cut = Rational(ord + 1);
    const QSeries e = eta_dual.truncated(cut);
    double c = std::pow(e.evaluate_at_y(1.0 / y), static_cast<double>(ell));
    for (const auto& [dv, md] : sd.m)
      c *= std::pow(e.evaluate_at_y(static_cast<double>(dv) / y), -to_double(Rational(md)));
    return c / th_dual.truncated(cut).evaluate_at_y(1.0 / y);
  };

  NumericQdim out;
  out.limit_prefactor = std::sqrt(to_double(l.gram_determinant() / cyclotomic_volume(sd))) *
                        to_double(Rational(dimT));
  double worst_trunc = 0;
  for (double y : ys) {
    NumericQdimPoint pt;
    pt.y = y;
    pt.ratio = ratio_at(y, order);
    pt.estimate = pt.ratio / correction_at(y, dual_order);
    const double coarse = ratio_at(y, order - 1) / correction_at(y, dual_order - 1);
    pt.truncation = std::abs(pt.estimate - coarse);
    worst_trunc = std::max(worst_trunc, pt.truncation);
    out.points.push_back(pt);
  }
  auto smallest = std::min_element(out.points.begin(), out.points.end(),
                                   [](const auto& a, const auto& b) { return a.y < b.y; });
  out.value = smallest->estimate;
  double drift = 0;
  if (out.points.size() >= 2)
    drift = std::abs(out.points[out.points.size() - 1].estimate -
                     out.points[out.points.size() - 2].estimate);
  out.error = drift + worst_trunc;
  if (worst_trunc > tolerance * std::max(1.0, std::abs(out.value)))
    throw ResourceError("series truncation at order " + std::to_string(order) +
                            " only reaches " + std::to_string(worst_trunc),
                        static_cast<std::uint64_t>(order));
  return out;
}

}  // namespace orbicode
