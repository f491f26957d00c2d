#pragma once

// Exact integer / rational linear algebra: Hermite and Smith normal forms,
// integer kernels, sublattice intersection and finite abelian quotients.

#include "orbicode/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace orbicode {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw UsageError("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw UsageError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    std::copy(r.begin(), r.end(), data_.begin() + i * cols_);
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw UsageError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& v) { return v == 0; });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw UsageError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw UsageError("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

/// Row vector times matrix.
template <typename T>
std::vector<T> row_times(const std::vector<T>& v, const Matrix<T>& m) {
  if (v.size() != m.rows()) throw UsageError("vector/matrix shape mismatch");
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

/// Rejection of quotient(super, sub) when sub is not contained in super.
class NotSublatticeError : public HypothesisError {
 public:
  NotSublatticeError(std::size_t witness_row, RatVector coordinates)
      : HypothesisError("containment",
                        "row " + std::to_string(witness_row) +
                            " of the sublattice basis is not in the lattice"),
        witness_row_(witness_row),
        coordinates_(std::move(coordinates)) {}
  std::size_t witness_row() const noexcept { return witness_row_; }
  /// Rational coordinates of the offending row in the super basis.
  const RatVector& coordinates() const noexcept { return coordinates_; }

 private:
  std::size_t witness_row_;
  RatVector coordinates_;
};

namespace detail {

// Row-echelonizes columns [col_begin, col_end) of `m` in place, eliminating
// from the rightmost column leftwards so every surviving row ends in a
// positive pivot. Returns the pivot rows (in increasing pivot-column order)
// followed by the rows that became zero on the range, plus the pivot columns.
// Only integer row operations of determinant +-1 are used.
struct Echelon {
  std::vector<std::vector<Int>> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::vector<Int>> zero_rows;
};

inline Echelon echelonize(std::vector<std::vector<Int>> rows,
                          std::size_t col_begin, std::size_t col_end) {
  Echelon out;
  std::vector<std::vector<Int>> active = std::move(rows);
  std::vector<std::pair<std::size_t, std::vector<Int>>> pivots;

  auto axpy = [](std::vector<Int>& dst, const Int& f,
                 const std::vector<Int>& src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (src[j] != 0) dst[j] -= f * src[j];
  };

  for (std::size_t c = col_end; c-- > col_begin;) {
    while (true) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i][c] == 0) continue;
        ++nonzero;
        if (!best || abs(active[i][c]) < abs(active[*best][c])) best = i;
      }
      if (!best) break;
      if (nonzero == 1) {
        auto row = std::move(active[*best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(*best));
        if (row[c] < 0)
          for (auto& v : row) v = -v;
        pivots.emplace_back(c, std::move(row));
        break;
      }
      const std::vector<Int> piv = active[*best];
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == *best || active[i][c] == 0) continue;
        axpy(active[i], floor_div(active[i][c], piv[c]), piv);
      }
    }
  }
  std::reverse(pivots.begin(), pivots.end());
  // Reduce entries below each pivot into [0, pivot), largest column first so
  // later reductions never disturb columns already reduced.
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t c = pivots[k].first;
    const std::vector<Int>& piv = pivots[k].second;
    for (std::size_t i = k + 1; i < pivots.size(); ++i) {
      Int f = floor_div(pivots[i].second[c], piv[c]);
      if (f != 0) axpy(pivots[i].second, f, piv);
    }
  }
  for (auto& [c, r] : pivots) {
    out.pivot_cols.push_back(c);
    out.pivot_rows.push_back(std::move(r));
  }
  out.zero_rows = std::move(active);
  return out;
}

inline std::vector<std::vector<Int>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<Int>> r;
  r.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
  return r;
}

}  // namespace detail

/// Row-style Hermite normal form: lower-triangular echelon shape (each row's
/// last nonzero entry is its pivot, pivot columns strictly increase), pivots
/// positive, entries below a pivot reduced into [0, pivot). Zero rows are
/// dropped, so the result is a basis of the row span.
inline IntMatrix hnf(const IntMatrix& m) {
  auto e = detail::echelonize(detail::rows_of(m), 0, m.cols());
  return IntMatrix::from_rows(e.pivot_rows, m.cols());
}

/// Basis (rows) of the left kernel {x in Z^rows : x m = 0}.
inline IntMatrix left_kernel(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<std::vector<Int>> aug;
  aug.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Int> row(r + c, Int(0));
    row[i] = 1;
    for (std::size_t j = 0; j < c; ++j) row[r + j] = m(i, j);
    aug.push_back(std::move(row));
  }
  auto e = detail::echelonize(std::move(aug), r, r + c);
  std::vector<std::vector<Int>> kernel;
  for (auto& row : e.zero_rows) kernel.emplace_back(row.begin(), row.begin() + r);
  if (kernel.empty()) return IntMatrix(0, r);
  return hnf(IntMatrix::from_rows(kernel, r));
}

/// Bareiss fraction-free determinant.
inline Int determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw UsageError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Rational determinant(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw UsageError("determinant of a non-square matrix");
  Int d = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d = lcm(d, den(a(i, j)));
  IntMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = num(a(i, j) * Rational(d));
  return Rational(determinant(s), ipow(d, static_cast<unsigned>(n)));
}

/// Rank over Q.
inline std::size_t rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}
inline std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

/// Gauss-Jordan inverse; throws on singular input.
inline RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw UsageError("inverse of a non-square matrix");
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw HypothesisError("nonsingular", "matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational s = Rational(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Solves x * basis = target for each row of target, where basis has full
/// row rank. Returns nullopt in a row slot if the target row is outside the
/// rational span of basis.
inline std::vector<std::optional<RatVector>> solve_left(
    const RatMatrix& basis, const RatMatrix& target) {
  // x = t B^T (B B^T)^{-1}; then confirm x B == t exactly.
  const RatMatrix bt = basis.transpose();
  const RatMatrix proj = bt * inverse(basis * bt);
  const RatMatrix x = target * proj;
  const RatMatrix back = x * basis;
  std::vector<std::optional<RatVector>> out;
  for (std::size_t i = 0; i < target.rows(); ++i) {
    if (back.row(i) == target.row(i))
      out.emplace_back(x.row(i));
    else
      out.emplace_back(std::nullopt);
  }
  return out;
}

/// Smith normal form diagonal (length min(rows, cols)), nonnegative, with the
/// divisibility chain d1 | d2 | ... enforced; zeros trail for rank-deficient
/// input. Pivots on the entry of least absolute value.
inline IntVector snf(IntMatrix a) {
  const std::size_t r = a.rows(), c = a.cols();
  const std::size_t n = std::min(r, c);
  IntVector diag;
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 &&
              (!best || abs(a(i, j)) < abs(a(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      a.swap_rows(t, best->first);
      for (std::size_t i = 0; i < r; ++i) std::swap(a(i, t), a(i, best->second));
      const Int piv = a(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int f = floor_div(a(i, t), piv);
        for (std::size_t j = t; j < c; ++j) a(i, j) -= f * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int f = floor_div(a(t, j), piv);
        for (std::size_t i = t; i < r; ++i) a(i, j) -= f * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(a(t, t)));
  }
  // diag(a, b) ~ diag(gcd, lcm): restore the divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[i] == 0) {
        std::swap(diag[i], diag[j]);
        continue;
      }
      if (diag[j] == 0) continue;
      Int g = gcd(diag[i], diag[j]);
      Int l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

/// Finite abelian group given by its elementary divisors d1 | d2 | ... (all
/// greater than one).
struct AbelianQuotient {
  IntVector divisors;

  Int order() const {
    Int o = 1;
    for (const auto& d : divisors) o *= d;
    return o;
  }
  bool trivial() const { return divisors.empty(); }

  static AbelianQuotient from_diagonal(const IntVector& diag) {
    AbelianQuotient q;
    for (const auto& d : diag) {
      if (d == 0) throw HypothesisError("finite index", "quotient is infinite");
      if (d != 1) q.divisors.push_back(d);
    }
    return q;
  }
  /// Elementary abelian group (Z_p)^k.
  static AbelianQuotient elementary(const Int& p, std::size_t k) {
    AbelianQuotient q;
    if (p != 1) q.divisors.assign(k, p);
    return q;
  }
  friend bool operator==(const AbelianQuotient&,
                         const AbelianQuotient&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianQuotient& q) {
  os << "Z[";
  for (std::size_t i = 0; i < q.divisors.size(); ++i)
    os << (i ? "," : "") << q.divisors[i];
  return os << "]";
}

/// Structure of span(super)/span(sub). Both must have full row rank and the
/// same rank; sub's span must lie inside super's.
inline AbelianQuotient quotient(const IntMatrix& super, const IntMatrix& sub) {
  if (rank(super) != super.rows() || rank(sub) != sub.rows())
    throw UsageError("quotient needs bases of full row rank");
  if (super.rows() != sub.rows())
    throw HypothesisError("finite index",
                          "sublattice has smaller rank; quotient is infinite");
  auto coords = solve_left(to_rational(super), to_rational(sub));
  IntMatrix change(sub.rows(), super.rows());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i]) throw NotSublatticeError(i, {});
    for (std::size_t j = 0; j < super.rows(); ++j) {
      const Rational& x = (*coords[i])[j];
      if (!is_integer(x)) throw NotSublatticeError(i, *coords[i]);
      change(i, j) = num(x);
    }
  }
  return AbelianQuotient::from_diagonal(snf(change));
}

/// Basis of the intersection of two integer row lattices in a common Z^n.
inline IntMatrix lattice_intersect(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw UsageError("ambient dimension mismatch");
  if (rank(a) != a.rows() || rank(b) != b.rows())
    throw UsageError("lattice_intersect needs bases of full row rank");
  // x a = y b  <=>  (x, y) in the left kernel of [a; -b].
  IntMatrix stacked(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) stacked.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto r = b.row(i);
    for (auto& v : r) v = -v;
    stacked.set_row(a.rows() + i, r);
  }
  IntMatrix k = left_kernel(stacked);
  if (k.rows() == 0) return IntMatrix(0, a.cols());
  IntMatrix xs(k.rows(), a.rows());
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) xs(i, j) = k(i, j);
  return hnf(xs * a);
}

}  // namespace orbicode
