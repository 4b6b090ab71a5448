#include "rohull/matrix.hpp"

#include <cmath>

namespace rohull {

Matrix::Matrix(int rows, int cols, Mode mode)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), Scalar::of(mode, 0)) {}

Matrix::Matrix(int rows, int cols, std::vector<Scalar> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (static_cast<int>(data_.size()) != rows * cols) throw Error("matrix data has the wrong size");
}

Matrix::Matrix(const Mat2& m) : rows_(2), cols_(2), data_{m.a11, m.a12, m.a21, m.a22} {}

Mode Matrix::mode() const { return data_.empty() ? Mode::exact : data_.front().mode(); }

Mat2 Matrix::to_mat2() const {
  if (rows_ != 2 || cols_ != 2) throw Error("matrix is not 2x2");
  return {data_[0], data_[1], data_[2], data_[3]};
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

Scalar Matrix::max_abs() const {
  Scalar best = Scalar::of(mode(), 0);
  for (const auto& v : data_) best = max(best, v.abs());
  return best;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shapes differ");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<Scalar> d = a.data_;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.data_[i];
  return {a.rows_, a.cols_, std::move(d)};
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  std::vector<Scalar> d = a.data_;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.data_[i];
  return {a.rows_, a.cols_, std::move(d)};
}

Matrix operator*(const Matrix& a, const Scalar& s) {
  std::vector<Scalar> d = a.data_;
  for (auto& v : d) v *= s;
  return {a.rows_, a.cols_, std::move(d)};
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix outer(const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
  std::vector<Scalar> d;
  d.reserve(v.size() * w.size());
  for (const auto& vi : v)
    for (const auto& wj : w) d.push_back(vi * wj);
  return {static_cast<int>(v.size()), static_cast<int>(w.size()), std::move(d)};
}

bool rank_at_most_one(const Matrix& m, double tol) {
  const bool exact = m.mode() == Mode::exact;
  const double scale = exact ? 0.0 : m.max_abs().to_double();
  for (int i = 0; i < m.rows(); ++i)
    for (int k = i + 1; k < m.rows(); ++k)
      for (int j = 0; j < m.cols(); ++j)
        for (int l = j + 1; l < m.cols(); ++l) {
          Scalar minor = m(i, j) * m(k, l) - m(i, l) * m(k, j);
          if (exact ? !minor.is_zero() : std::abs(minor.to_double()) > tol * scale * scale) return false;
        }
  return true;
}

}  // namespace rohull
