#pragma once

#include <vector>

#include "rohull/core.hpp"

namespace rohull {

/// Dense m x n matrix of scalars, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Mode mode);
  Matrix(int rows, int cols, std::vector<Scalar> data);
  explicit Matrix(const Mat2& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Mode mode() const;
  const Scalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }

  Mat2 to_mat2() const;
  bool is_zero() const;
  Scalar max_abs() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Scalar& s);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// v w^T
Matrix outer(const std::vector<Scalar>& v, const std::vector<Scalar>& w);

/// rank <= 1: every 2x2 minor vanishes (relative to the largest entry
/// squared in float mode).
bool rank_at_most_one(const Matrix& m, double tol = kRankTolerance);

}  // namespace rohull
