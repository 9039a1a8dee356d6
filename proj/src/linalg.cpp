#include "tsalg/linalg.hpp"

#include "tsalg/error.hpp"

namespace tsalg {

Matrix::Matrix(Coeff p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Coeff p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw Error(ErrorCode::ArityMismatch, "matrix product shape");
  Matrix r(p_, rows_, o.cols_);
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = at(i, k);
      if (!a) continue;
      const Coeff* orow = o.data_.data() + k * o.cols_;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        acc[j] += a * orow[j];
        if (acc[j] >= (1ull << 62)) acc[j] %= p_;
      }
    }
    for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = static_cast<Coeff>(acc[j] % p_);
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::ArityMismatch, "matrix sum shape");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mod_add(data_[i], o.data_[i], p_);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::ArityMismatch, "matrix difference shape");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mod_sub(data_[i], o.data_[i], p_);
  return r;
}

Matrix Matrix::scaled(Coeff c) const {
  Matrix r = *this;
  for (auto& v : r.data_) v = mod_mul(v, c % p_, p_);
  return r;
}

std::vector<Coeff> Matrix::apply(std::span<const Coeff> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::ArityMismatch, "matrix-vector shape");
  std::vector<Coeff> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      s += std::uint64_t(at(i, k)) * v[k];
      if (s >= (1ull << 62)) s %= p_;
    }
    out[i] = static_cast<Coeff>(s % p_);
  }
  return out;
}

bool Matrix::is_zero() const {
  for (auto v : data_)
    if (v) return false;
  return true;
}

namespace {

// reduced row echelon form in place; returns pivot columns
std::vector<std::size_t> rref(Matrix& m) {
  const Coeff p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    Coeff inv = mod_inv(m.at(r, c), p);
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = mod_mul(m.at(r, j), inv, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Coeff f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m.at(r, j)) m.at(i, j) = mod_sub(m.at(i, j), mod_mul(f, m.at(r, j), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return rref(m).size();
}

Matrix Matrix::kernel() const {
  Matrix m = *this;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(p_, free.size(), cols_);
  for (std::size_t f = 0; f < free.size(); ++f) {
    k.at(f, free[f]) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k.at(f, pivots[r]) = mod_neg(m.at(r, free[f]), p_);
  }
  return k;
}

Matrix Matrix::stacked(const Matrix& o) const {
  if (rows_ == 0) return o;
  if (o.cols_ != cols_) throw Error(ErrorCode::ArityMismatch, "stacking shape");
  Matrix r(p_, rows_ + o.rows_, cols_);
  std::copy(data_.begin(), data_.end(), r.data_.begin());
  std::copy(o.data_.begin(), o.data_.end(), r.data_.begin() + data_.size());
  return r;
}

namespace {

std::vector<Exponent> lead(const SparsePoly& f) {
  auto e = f.exponents(0);
  return {e.begin(), e.end()};
}

}  // namespace

SparsePoly PolyEchelon::reduce(SparsePoly f) const {
  // leading terms of the basis are pairwise distinct, so reducing leads decides membership
  while (!f.is_zero()) {
    auto it = index_.find(lead(f));
    if (it == index_.end()) break;
    f -= basis_[it->second].scaled(f.coeff(0));
  }
  return f;
}

bool PolyEchelon::insert(SparsePoly f) {
  f = reduce(std::move(f));
  if (f.is_zero()) return false;
  index_.emplace(lead(f), basis_.size());
  basis_.push_back(f.scaled(mod_inv(f.coeff(0), f.prime())));
  return true;
}

std::size_t poly_rank(std::span<const SparsePoly> fs) {
  PolyEchelon e;
  for (const auto& f : fs) e.insert(f);
  return e.rank();
}

}  // namespace tsalg
