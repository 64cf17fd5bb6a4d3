/// @file ratmat.hpp
/// @brief Small dense matrices over exact rationals, with Gaussian
/// elimination, rank and right-kernel computation. Sized for certificate
/// work (a handful of rows/columns), not numerics.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace hoboq {

using Rational = boost::multiprecision::cpp_rational;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-major construction from integer literals.
  RatMatrix(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RatMatrix column(std::size_t c) const;
  bool is_zero() const;
  bool operator==(const RatMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

/// Reduced row echelon form (returns the rank via out-parameter).
RatMatrix rref(RatMatrix m, std::size_t* rank_out = nullptr);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0} as matrix columns, from the RREF free columns
/// (each free variable set to 1). Empty-column matrix if the kernel is
/// trivial.
RatMatrix right_kernel(const RatMatrix& m);

/// True iff every column of `cols` lies in the column span of `basis`.
bool columns_in_span(const RatMatrix& basis, const RatMatrix& cols);

/// Sum of each column, as a 1 x cols matrix.
RatMatrix column_sums(const RatMatrix& m);

std::string to_string(const RatMatrix& m);

}  // namespace hoboq
