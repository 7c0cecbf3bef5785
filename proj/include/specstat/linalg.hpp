#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace specstat {

using cplx = std::complex<double>;

// Dense row-major matrix. Kept deliberately small: the solvers in eigen.cpp
// index the raw buffer directly.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c, T fill = T(0)) : rows_(r), cols_(c), data_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T *row(std::size_t i) { return data_.data() + i * cols_; }
  const T *row(std::size_t i) const { return data_.data() + i * cols_; }

  T *data() { return data_.data(); }
  const T *data() const { return data_.data(); }

  double frobenius() const {
    double s = 0;
    for (const T &v : data_) s += std::norm(std::complex<double>(v));
    return std::sqrt(s);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<cplx>;

inline CMatrix adjoint(const CMatrix &a) {
  CMatrix b(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
  return b;
}

template <typename T>
Matrix<T> matmul(const Matrix<T> &a, const Matrix<T> &b) {
  assert(a.cols() == b.rows());
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      T aik = a(i, k);
      if (aik == T(0)) continue;
      const T *brow = b.row(k);
      T *crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  return c;
}

// LU determinant with partial pivoting, returned as (sign-or-phase, log|det|).
// A zero pivot yields sign 0 and log -inf.
template <typename T>
std::pair<T, double> lu_log_det(Matrix<T> a) {
  const std::size_t n = a.rows();
  assert(n == a.cols());
  T phase = T(1);
  double logabs = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    if (best == 0.0) return {T(0), -std::numeric_limits<double>::infinity()};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      phase = -phase;
    }
    T piv = a(k, k);
    phase *= piv / T(std::abs(piv));
    logabs += std::log(std::abs(piv));
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = a(i, k) / piv;
      a(i, k) = f;
      if (f == T(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return {phase, logabs};
}

template <typename T>
T lu_det(const Matrix<T> &a) {
  auto [phase, logabs] = lu_log_det(a);
  if (phase == T(0)) return T(0);
  return phase * T(std::exp(logabs));
}

}  // namespace specstat
