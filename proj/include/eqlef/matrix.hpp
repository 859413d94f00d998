// Small dense matrices over an exact field (Cyclotomic, Rational).
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eqlef/error.hpp"

namespace eqlef {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix scalar(const T& v) {
    Matrix m(1, 1);
    m(0, 0) = v;
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == T(0))) return false;
    return true;
  }

  T trace() const {
    if (!square()) throw Error("trace of a non-square matrix");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& b) {
    check_same(b);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& b) {
    check_same(b);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix pow(unsigned e) const {
    if (!square()) throw Error("power of a non-square matrix");
    Matrix r = identity(rows_), base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }

  /// Kronecker product a (x) b.
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j) == T(0)) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l) c(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return c;
  }

  /// Gauss-Jordan inverse; throws on singular input.
  Matrix inverse() const {
    if (!square()) throw Error("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix a = *this, inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c) == T(0)) ++p;
      if (p == n) throw Error("matrix is singular");
      if (p != c)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(p, j), a(c, j));
          std::swap(inv(p, j), inv(c, j));
        }
      const T s = T(1) / a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) *= s;
        inv(c, j) *= s;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a(r, c) == T(0)) continue;
        const T f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix sum: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace eqlef
