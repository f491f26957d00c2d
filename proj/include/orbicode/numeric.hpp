#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbicode {

/// Arbitrary-precision integer. Expression templates are disabled so that
/// `auto` captures values rather than lazy expressions.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

// Error taxonomy. The CLI maps these onto exit codes.

/// Caller supplied malformed input (wrong shape, out-of-range entries).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation does not hold.
class HypothesisError : public std::domain_error {
 public:
  HypothesisError(std::string predicate, const std::string& what)
      : std::domain_error(what), predicate_(std::move(predicate)) {}
  const std::string& predicate() const noexcept { return predicate_; }

 private:
  std::string predicate_;
};

/// An enumeration or truncation budget was exhausted before an exact answer
/// was reached.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t spent)
      : std::runtime_error(what), spent_(spent) {}
  std::uint64_t spent() const noexcept { return spent_; }

 private:
  std::uint64_t spent_;
};

/// Two independent computations of the same quantity disagree. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline Int num(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Int den(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

/// Floor division rounding toward negative infinity.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Representative of `a` modulo `m` in [0, |m|).
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline Int floor(const Rational& r) { return floor_div(num(r), den(r)); }
inline Int ceil(const Rational& r) { return -floor_div(-num(r), den(r)); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline std::int64_t to_i64(const Int& v) {
  return v.convert_to<std::int64_t>();
}
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Int& v) { return v.str(); }
/// "a/b" with b > 0; integers print as "a/1" so that the format is uniform.
inline std::string to_string(const Rational& r) {
  return num(r).str() + "/" + den(r).str();
}

/// Parses "a", "a/b" or "-a/b".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    Int n(text.substr(0, slash));
    Int d(text.substr(slash + 1));
    if (d == 0) throw UsageError("zero denominator in '" + text + "'");
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

inline Int ipow(const Int& base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t f = 1; f <= n; ++f)
    if (n % f == 0) out.push_back(f);
  return out;
}

inline int moebius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      n /= f;
      if (n % f == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Integer square root if `v` is a perfect square.
inline bool exact_sqrt(const Int& v, Int& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

}  // namespace orbicode
