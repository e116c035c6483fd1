#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "flagcert/graph.hpp"

namespace flagcert {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

/// num/den reduced to lowest terms.
[[nodiscard]] Rational make_rational(long num, long den = 1);
[[nodiscard]] Rational make_rational(const mpz_class& num, const mpz_class& den);

/// Always "p/q", including q = 1.
[[nodiscard]] std::string to_fraction_string(const Rational& r);
/// Accepts "p/q" or "p"; throws FlagError(Parse) on malformed input or q = 0.
[[nodiscard]] Rational parse_rational(std::string_view text);

/// Shortest decimal that round-trips the nearest double.
[[nodiscard]] std::string to_decimal_string(double value);
[[nodiscard]] std::string to_decimal_string(const Rational& r);

/// True when r * den is an integer, i.e. the denominator of r divides den.
[[nodiscard]] bool denominator_divides(const Rational& r, long den);

[[nodiscard]] mpz_class binomial(int n, int k);

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix square(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = T(1);
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] bool is_symmetric() const {
    if (!is_square()) {
      return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = i + 1; j < cols_; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using DoubleMatrix = Matrix<double>;

}  // namespace flagcert
