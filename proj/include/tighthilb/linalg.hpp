#pragma once

#include <cstddef>
#include <vector>

#include "tighthilb/field.hpp"

namespace tighthilb {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Coeff& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  const Coeff* row(std::size_t r) const noexcept { return data_.data() + r * cols_; }
  Coeff* row(std::size_t r) noexcept { return data_.data() + r * cols_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& k) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Coeff x = a(i, t);
      if (x == 0) continue;
      Coeff* dst = out.row(i);
      const Coeff* src = b.row(t);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j] != 0) dst[j] = k.add(dst[j], k.mul(x, src[j]));
      }
    }
  }
  return out;
}

/// In-place reduced row echelon form; returns the rank. Zero rows end up at
/// the bottom.
inline std::size_t row_reduce(Matrix& m, const PrimeField& k) {
  std::size_t rank = 0;
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
    }
    const Coeff inv = k.inv(m(rank, c));
    Coeff* prow = m.row(rank);
    for (std::size_t j = c; j < cols; ++j) prow[j] = k.mul(prow[j], inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      const Coeff f = k.neg(m(r, c));
      Coeff* dst = m.row(r);
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) dst[j] = k.add(dst[j], k.mul(f, prow[j]));
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(Matrix m, const PrimeField& k) { return row_reduce(m, k); }

/// Basis of {y : y·m = 0}, returned in reduced row echelon form.
inline Matrix left_kernel(const Matrix& m, const PrimeField& k) {
  const std::size_t n = m.rows();
  Matrix aug(n, m.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols() + i) = 1;
  }
  const std::size_t r = row_reduce(aug, k);
  std::size_t first_zero = r;
  for (std::size_t i = 0; i < r; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) zero = aug(i, j) == 0;
    if (zero) {
      first_zero = i;
      break;
    }
  }
  Matrix kernel(r - first_zero, n);
  for (std::size_t i = first_zero; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) kernel(i - first_zero, j) = aug(i, m.cols() + j);
  }
  row_reduce(kernel, k);
  return kernel;
}

}  // namespace tighthilb
