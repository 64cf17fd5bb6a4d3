#include "hoboq/ratmat.hpp"

#include <sstream>
#include <stdexcept>

namespace hoboq {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw std::invalid_argument("ragged matrix initializer");
    for (int v : row) data_.emplace_back(v);
  }
}

RatMatrix RatMatrix::column(std::size_t c) const {
  RatMatrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out.at(r, 0) = at(r, c);
  return out;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix dimension mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

RatMatrix rref(RatMatrix m, std::size_t* rank_out) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < m.rows() && m.at(r, col) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != pivot_row)
      for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m.at(r, c), m.at(pivot_row, c));
    Rational inv = m.at(pivot_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(pivot_row, c) /= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(i, c) -= f * m.at(pivot_row, c);
    }
    ++pivot_row;
  }
  if (rank_out) *rank_out = pivot_row;
  return m;
}

std::size_t rank(const RatMatrix& m) {
  std::size_t r = 0;
  rref(m, &r);
  return r;
}

RatMatrix right_kernel(const RatMatrix& m) {
  std::size_t rk = 0;
  RatMatrix red = rref(m, &rk);
  std::size_t n = m.cols();

  std::vector<std::size_t> pivot_col_of_row(rk);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < rk; ++r) {
    std::size_t c = 0;
    while (c < n && red.at(r, c) == 0) ++c;
    pivot_col_of_row[r] = c;
    is_pivot[c] = true;
  }

  RatMatrix kernel(n, n - rk);
  std::size_t k = 0;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    kernel.at(free_col, k) = 1;
    for (std::size_t r = 0; r < rk; ++r)
      kernel.at(pivot_col_of_row[r], k) = -red.at(r, free_col);
    ++k;
  }
  return kernel;
}

bool columns_in_span(const RatMatrix& basis, const RatMatrix& cols) {
  if (basis.rows() != cols.rows())
    throw std::invalid_argument("matrix dimension mismatch");
  std::size_t base_rank = rank(basis);
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    RatMatrix aug(basis.rows(), basis.cols() + 1);
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      for (std::size_t c = 0; c < basis.cols(); ++c)
        aug.at(r, c) = basis.at(r, c);
      aug.at(r, basis.cols()) = cols.at(r, j);
    }
    if (rank(aug) != base_rank) return false;
  }
  return true;
}

RatMatrix column_sums(const RatMatrix& m) {
  RatMatrix out(1, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out.at(0, c) += m.at(r, c);
  return out;
}

std::string to_string(const RatMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.at(r, c);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hoboq
