#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tsalg/modp.hpp"
#include "tsalg/poly.hpp"

namespace tsalg {

// Dense matrix over F_p, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Coeff p, std::size_t rows, std::size_t cols);
  static Matrix identity(Coeff p, std::size_t n);

  Coeff prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Coeff> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Coeff c) const;
  std::vector<Coeff> apply(std::span<const Coeff> v) const;
  bool is_zero() const;
  bool operator==(const Matrix&) const = default;

  std::size_t rank() const;
  // basis of {v : M v = 0}, one vector per row of the result
  Matrix kernel() const;
  // stack rows of o under this
  Matrix stacked(const Matrix& o) const;

 private:
  Coeff p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Coeff> data_;
};

// Incremental echelon basis of polynomials viewed as coefficient vectors over
// the monomials. Pivots are leading monomials, so distinct pivots mean independence.
class PolyEchelon {
 public:
  // returns true if f was independent of the basis so far
  bool insert(SparsePoly f);
  std::size_t rank() const { return basis_.size(); }
  // remainder of f after reduction; zero iff f lies in the span
  SparsePoly reduce(SparsePoly f) const;

 private:
  std::vector<SparsePoly> basis_;  // monic, pairwise distinct leading monomials
  std::map<std::vector<Exponent>, std::size_t> index_;
};

std::size_t poly_rank(std::span<const SparsePoly> fs);

}  // namespace tsalg
