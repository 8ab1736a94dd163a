#pragma once

// Dense exact matrices. Matrix<T> is generic over the scalar so that the same
// products serve numeric verification (Rational, Integer) and symbolic form
// construction (MultiPoly). T{} must be the additive zero and T(1) the unit.

#include "eulermagic/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eulermagic {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("entry count " + std::to_string(data_.size()) +
                              " != " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    std::vector<T> flat;
    flat.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionMismatch("ragged rows");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(flat));
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto& row : rows) v.emplace_back(row);
    return from_rows(v);
  }

  static Matrix identity(std::size_t n, const T& one = T(1)) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  // 0-based.
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  T& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return (*this)(i, j);
  }

  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return mat_mul(a, b);
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <typename T, typename Op>
Matrix<T> zip_with(const Matrix<T>& a, const Matrix<T>& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("elementwise op on different shapes");
  std::vector<T> out;
  out.reserve(a.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    out.push_back(op(a.entries()[k], b.entries()[k]));
  return Matrix<T>(a.rows(), a.cols(), std::move(out));
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  return zip_with(a, b, [](const T& x, const T& y) -> T { return x + y; });
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  return zip_with(a, b, [](const T& x, const T& y) -> T { return x - y; });
}

template <typename T>
Matrix<T> scale(const Matrix<T>& m, const T& c) {
  std::vector<T> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(c * x);
  return Matrix<T>(m.rows(), m.cols(), std::move(out));
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& m) {
  return scale(m, T(-1));
}

/// Entrywise conversion, e.g. IntMatrix -> RatMatrix.
template <typename U, typename T, typename F>
Matrix<U> map_entries(const Matrix<T>& m, F f) {
  std::vector<U> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(f(x));
  return Matrix<U>(m.rows(), m.cols(), std::move(out));
}

inline RatMatrix to_rational(const IntMatrix& m) {
  return map_entries<Rational>(m, [](const Integer& z) { return Rational(z); });
}

/// Throws std::domain_error if an entry is not integral.
inline IntMatrix to_integer(const RatMatrix& m) {
  return map_entries<Integer>(m, [](const Rational& r) {
    if (!is_integral(r)) throw std::domain_error("non-integral entry " + to_string(r));
    return Integer(r.get_num());
  });
}

template <typename T>
bool is_zero(const Matrix<T>& m) {
  return std::all_of(m.entries().begin(), m.entries().end(),
                     [](const T& x) { return x == T{}; });
}

// Laplace expansion along the first row. Only for the small symbolic cases
// (n <= 4); numeric determinants go through fraction-free elimination.
template <typename T>
T determinant_expansion(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T det{};
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == T{}) continue;
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    T term = m(0, j) * determinant_expansion(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

/// Classical adjoint: adj(M)·M = det(M)·I. Cofactor-based, small n only.
template <typename T>
Matrix<T> adjugate(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<T> minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c)
          if (c != j) minor(mr, mc++) = m(r, c);
        ++mr;
      }
      T cof = determinant_expansion(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : T{} - cof;
    }
  return adj;
}

namespace detail {

// Row-scales a rational matrix to integers: returns the integer rows and the
// per-row multipliers (lcm of the row's denominators).
inline std::pair<IntMatrix, std::vector<Integer>> clear_row_denominators(
    const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  std::vector<Integer> scales(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, a(i, j).get_den());
    scales[i] = l;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational scaled = a(i, j) * Rational(l);
      out(i, j) = scaled.get_num();
    }
  }
  return {std::move(out), std::move(scales)};
}

inline void divexact_checked(Integer& x, const Integer& d) {
  if (mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) == 0)
    throw std::logic_error("fraction-free elimination: inexact division");
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

}  // namespace detail

/// Determinant by Bareiss fraction-free elimination on the row-scaled
/// integer matrix.
inline Rational determinant(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  auto [m, scales] = detail::clear_row_denominators(a);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        detail::divexact_checked(m(i, j), prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Integer denom = 1;
  for (const auto& s : scales) denom *= s;
  return make_rational(sign * m(n - 1, n - 1), denom);
}

/// Exact inverse by fraction-free Gauss-Jordan elimination. The rows are first
/// scaled to integers (A' = ΛA); eliminating [A' | Λ] leaves d·I on the left
/// and d·A^{-1} on the right, with every intermediate an integer minor.
inline RatMatrix mat_inverse(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  auto [left, scales] = detail::clear_row_denominators(a);
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = left(i, j);
    aug(i, n + i) = scales[i];
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && aug(piv, k) == 0) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    if (piv != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(k, j), aug(piv, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        aug(i, j) = aug(k, k) * aug(i, j) - aug(i, k) * aug(k, j);
        detail::divexact_checked(aug(i, j), prev);
      }
      aug(i, k) = 0;
    }
    prev = aug(k, k);
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = make_rational(aug(i, n + j), aug(i, i));
  return inv;
}

/// λ·m with λ > 0 chosen so the entries are coprime integers. Signs are never
/// flipped. Throws std::domain_error on the zero matrix.
inline IntMatrix rescale_primitive(const RatMatrix& m) {
  Integer den = 1;
  for (const auto& x : m.entries()) den = lcm(den, x.get_den());
  IntMatrix out = map_entries<Integer>(m, [&](const Rational& x) {
    return Integer(x.get_num() * (den / x.get_den()));
  });
  Integer content = 0;
  for (const auto& z : out.entries()) content = gcd(content, z);
  if (content == 0) throw std::domain_error("rescale_primitive: zero matrix");
  for (auto& z : out.entries()) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), content.get_mpz_t());
  return out;
}

inline IntMatrix rescale_primitive(const IntMatrix& m) {
  return rescale_primitive(to_rational(m));
}

}  // namespace eulermagic
