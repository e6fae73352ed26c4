#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mbl {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

// Dense rational matrix stored row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static RationalMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Exact determinant by fraction Gaussian elimination.
Rational determinant(RationalMatrix m);

// Exact inverse; throws DomainError when singular.
RationalMatrix inverse(const RationalMatrix& m);

// Parses "3", "-7/4". Throws ParseError.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

// Exact integer n-th root of |value| when it is a perfect power; throws DomainError otherwise.
Integer exact_root(const Integer& value, unsigned n);

}  // namespace mbl
