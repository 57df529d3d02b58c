#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nygap {

/// Dense row-major matrix of doubles. Value type, no aliasing tricks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix c(rows_, b.cols_);
    // i-k-j order keeps the inner loop on contiguous rows
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* ai = row(i);
      double* ci = c.row(i);
      for (std::size_t k = 0; k < cols_; ++k) {
        const double aik = ai[k];
        if (aik == 0.0) continue;
        const double* bk = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    check_same_shape(b, "add");
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  Matrix operator-(const Matrix& b) const {
    check_same_shape(b, "subtract");
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  Matrix scaled(double s) const {
    Matrix c = *this;
    for (double& v : c.data_) v *= s;
    return c;
  }

  /// Half-open sub-block [r0, r1) x [c0, c1).
  Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r1 < r0 || c1 < c0 || r1 > rows_ || c1 > cols_)
      throw std::invalid_argument("Matrix::block: range out of bounds");
    Matrix b(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  void check_same_shape(const Matrix& b, const char* what) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument(std::string("Matrix ") + what + ": shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// Square matrix constrained to exact symmetry; the constructor symmetrizes.
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) throw std::invalid_argument("SymMatrix: not square");
    if (mat_.rows() == 0) throw std::invalid_argument("SymMatrix: order must be >= 1");
    for (std::size_t i = 0; i < mat_.rows(); ++i)
      for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
        const double v = 0.5 * (mat_(i, j) + mat_(j, i));
        mat_(i, j) = v;
        mat_(j, i) = v;
      }
  }

  explicit SymMatrix(std::size_t order) : mat_(order, order) {
    if (order == 0) throw std::invalid_argument("SymMatrix: order must be >= 1");
  }

  std::size_t order() const { return mat_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  void set(std::size_t i, std::size_t j, double v) {
    mat_(i, j) = v;
    mat_(j, i) = v;
  }

  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

}  // namespace nygap
