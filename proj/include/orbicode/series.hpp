#pragma once

// Truncated power series in q^{1/D} with exact rational coefficients.

#include "orbicode/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace orbicode {

/// Series sum_e c_e q^e with exponents e in (1/D)Z. Every coefficient with
/// exponent strictly below `precision()` is exact; nothing is known at or
/// above it. Only nonzero coefficients are stored.
class QSeries {
 public:
  QSeries() : denom_(1), prec_(0) {}
  /// Zero series known up to (not including) `precision`.
  QSeries(std::int64_t denom, const Rational& precision) : denom_(denom) {
    if (denom <= 0) throw UsageError("series denominator must be positive");
    prec_ = to_num(precision, true);
  }

  static QSeries monomial(const Rational& exponent, const Rational& coeff,
                          const Rational& precision) {
    std::int64_t d = lcm_i64(to_i64(den(exponent)), to_i64(den(precision)));
    QSeries s(d, precision);
    s.add_term(exponent, coeff);
    return s;
  }
  /// Exact polynomial sum c_i q^{e_i} truncated at `precision`.
  static QSeries from_terms(
      const std::vector<std::pair<Rational, Rational>>& terms,
      const Rational& precision) {
    std::int64_t d = to_i64(den(precision));
    for (const auto& [e, c] : terms) d = lcm_i64(d, to_i64(den(e)));
    QSeries s(d, precision);
    for (const auto& [e, c] : terms) s.add_term(e, c);
    return s;
  }

  std::int64_t denom() const noexcept { return denom_; }
  Rational precision() const { return Rational(Int(prec_), Int(denom_)); }

  /// Smallest exponent with a nonzero coefficient, or the precision when the
  /// series is zero up to its truncation.
  Rational valuation() const {
    return coeffs_.empty() ? precision()
                           : Rational(Int(coeffs_.begin()->first), Int(denom_));
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Rational coefficient(const Rational& exponent) const {
    if (exponent >= precision())
      throw UsageError("coefficient requested beyond series precision");
    Rational scaled = exponent * Rational(Int(denom_));
    if (!is_integer(scaled)) return 0;
    auto it = coeffs_.find(to_i64(num(scaled)));
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  /// (exponent, coefficient) pairs in increasing exponent order.
  std::vector<std::pair<Rational, Rational>> terms() const {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [n, c] : coeffs_)
      out.emplace_back(Rational(Int(n), Int(denom_)), c);
    return out;
  }

  void add_term(const Rational& exponent, const Rational& coeff) {
    if (exponent >= precision()) return;
    std::int64_t n = to_num(exponent, false);
    if (coeff == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(n, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  /// Same series with exponents written over `d`, which must be a multiple
  /// of the current denominator.
  QSeries with_denom(std::int64_t d) const {
    if (d % denom_ != 0) throw UsageError("denominator must be a multiple");
    const std::int64_t f = d / denom_;
    QSeries s;
    s.denom_ = d;
    s.prec_ = prec_ * f;
    for (const auto& [n, c] : coeffs_) s.coeffs_.emplace(n * f, c);
    return s;
  }

  QSeries truncated(const Rational& precision) const {
    QSeries s = *this;
    std::int64_t p = std::min(prec_, s.to_num(precision, true));
    s.prec_ = p;
    s.coeffs_.erase(s.coeffs_.lower_bound(p), s.coeffs_.end());
    return s;
  }

  /// Multiplies by q^shift.
  QSeries shifted(const Rational& shift) const {
    std::int64_t d = lcm_i64(denom_, to_i64(den(shift)));
    QSeries a = with_denom(d);
    std::int64_t k = to_i64(num(shift * Rational(Int(d))));
    QSeries s;
    s.denom_ = d;
    s.prec_ = a.prec_ + k;
    for (const auto& [n, c] : a.coeffs_) s.coeffs_.emplace(n + k, c);
    return s;
  }

  friend QSeries operator+(const QSeries& x, const QSeries& y) {
    auto [a, b] = common(x, y);
    a.prec_ = std::min(a.prec_, b.prec_);
    a.coeffs_.erase(a.coeffs_.lower_bound(a.prec_), a.coeffs_.end());
    for (const auto& [n, c] : b.coeffs_) {
      if (n >= a.prec_) break;
      auto [it, inserted] = a.coeffs_.try_emplace(n, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) a.coeffs_.erase(it);
      }
    }
    return a;
  }
  friend QSeries operator-(const QSeries& x) {
    QSeries s = x;
    for (auto& [n, c] : s.coeffs_) c = -c;
    return s;
  }
  friend QSeries operator-(const QSeries& x, const QSeries& y) {
    return x + (-y);
  }
  friend QSeries operator*(const Rational& s, const QSeries& x) {
    QSeries r = x;
    if (s == 0) {
      r.coeffs_.clear();
      return r;
    }
    for (auto& [n, c] : r.coeffs_) c *= s;
    return r;
  }

  /// Truncated product; the result is exact below
  /// min(x.prec + y.val, y.prec + x.val).
  friend QSeries operator*(const QSeries& x, const QSeries& y) {
    auto [a, b] = common(x, y);
    const std::int64_t va = a.val_num(), vb = b.val_num();
    QSeries r;
    r.denom_ = a.denom_;
    r.prec_ = std::min(a.prec_ + vb, b.prec_ + va);
    for (const auto& [n1, c1] : a.coeffs_) {
      for (const auto& [n2, c2] : b.coeffs_) {
        if (n1 + n2 >= r.prec_) break;
        auto [it, inserted] = r.coeffs_.try_emplace(n1 + n2, c1 * c2);
        if (!inserted) {
          it->second += c1 * c2;
          if (it->second == 0) r.coeffs_.erase(it);
        }
      }
    }
    return r;
  }

  /// Multiplicative inverse; needs a nonzero leading coefficient below the
  /// precision. Relative precision is preserved.
  QSeries inverse() const {
    if (coeffs_.empty())
      throw HypothesisError("invertible", "series is zero to its precision");
    const std::int64_t v = coeffs_.begin()->first;
    const Rational a0 = coeffs_.begin()->second;
    const std::int64_t rel = prec_ - v;
    std::vector<std::pair<std::int64_t, Rational>> tail;
    for (auto it = std::next(coeffs_.begin()); it != coeffs_.end(); ++it)
      tail.emplace_back(it->first - v, it->second);
    std::vector<Rational> h(static_cast<std::size_t>(rel), Rational(0));
    const Rational inv0 = Rational(1) / a0;
    h[0] = inv0;
    for (std::int64_t n = 1; n < rel; ++n) {
      Rational acc = 0;
      for (const auto& [k, ak] : tail) {
        if (k > n) break;
        const Rational& hk = h[static_cast<std::size_t>(n - k)];
        if (hk != 0) acc += ak * hk;
      }
      h[static_cast<std::size_t>(n)] = -inv0 * acc;
    }
    QSeries r;
    r.denom_ = denom_;
    r.prec_ = rel - v;
    for (std::int64_t n = 0; n < rel; ++n)
      if (h[static_cast<std::size_t>(n)] != 0)
        r.coeffs_.emplace(n - v, h[static_cast<std::size_t>(n)]);
    return r;
  }

  QSeries pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    QSeries result = QSeries::monomial(0, 1, precision() - valuation());
    result = result.with_denom(lcm_i64(result.denom_, denom_));
    QSeries base = *this;
    bool first = true;
    while (k > 0) {
      if (k & 1) {
        result = first ? base : result * base;
        first = false;
      }
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  /// sum c_e exp(-2 pi y e), i.e. evaluation at tau = i y.
  double evaluate_at_y(double y) const {
    double acc = 0;
    for (const auto& [n, c] : coeffs_) {
      double e = static_cast<double>(n) / static_cast<double>(denom_);
      acc += to_double(c) * std::exp(-2.0 * std::numbers::pi * y * e);
    }
    return acc;
  }

  /// Exact equality of the truncated series (same precision, same terms).
  friend bool operator==(const QSeries& x, const QSeries& y) {
    if (x.precision() != y.precision()) return false;
    return x.terms() == y.terms();
  }

  /// Agreement below the smaller of the two precisions.
  bool agrees_with(const QSeries& other) const {
    Rational p = std::min(precision(), other.precision());
    return truncated(p).terms() == other.truncated(p).terms();
  }

 private:
  static std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
    return to_i64(lcm(Int(a), Int(b)));
  }
  static std::pair<QSeries, QSeries> common(const QSeries& x,
                                            const QSeries& y) {
    std::int64_t d = lcm_i64(x.denom_, y.denom_);
    return {x.with_denom(d), y.with_denom(d)};
  }
  std::int64_t val_num() const {
    return coeffs_.empty() ? prec_ : coeffs_.begin()->first;
  }
  // Numerator of `e` over denom_; precision values are rounded up.
  std::int64_t to_num(const Rational& e, bool round_up) const {
    Rational scaled = e * Rational(Int(denom_));
    if (!is_integer(scaled)) {
      if (!round_up)
        throw UsageError("exponent " + to_string(e) +
                         " is not a multiple of 1/" + std::to_string(denom_));
      return to_i64(orbicode::ceil(scaled));
    }
    return to_i64(num(scaled));
  }

  std::int64_t denom_;
  std::int64_t prec_;
  std::map<std::int64_t, Rational> coeffs_;
};

}  // namespace orbicode
