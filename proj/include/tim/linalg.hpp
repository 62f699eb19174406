#pragma once

#include "tim/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tim {

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// [A B]; row counts must agree (an empty-column A is allowed).
RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b);

// diag(d) * M
RationalMatrix scale_rows(const std::vector<Rational>& diagonal, const RationalMatrix& m);

// Exact rank by fraction-free (Bareiss) elimination over the integers after
// clearing each row's denominators. Pivot row = first nonzero in the column.
std::size_t rank_exact(const RationalMatrix& m);

// dim(span(A) ∩ span(B)) = rank A + rank B - rank [A B]
std::size_t intersection_dim(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace tim
