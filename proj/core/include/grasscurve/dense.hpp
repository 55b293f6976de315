#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "grasscurve/exterior.hpp"

namespace grasscurve {

/// Small row-major dense matrix over an exact or float scalar.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// A * A^*.
template <class T>
Matrix<T> gram(const Matrix<T>& a) {
  Matrix<T> g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.rows(); ++j) {
      T s{};
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (is_exact_zero(a(i, k)) || is_exact_zero(a(j, k))) continue;
        s += a(i, k) * field_traits<T>::conj(a(j, k));
      }
      if (i != j) g(j, i) = field_traits<T>::conj(s);
      g(i, j) = std::move(s);
    }
  }
  return g;
}

template <class T>
Matrix<T> diagonal(const std::vector<T>& d) {
  Matrix<T> m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

template <class T>
Matrix<FloatComplex> to_float(const Matrix<T>& a) {
  Matrix<FloatComplex> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = field_traits<T>::to_float(a(i, j));
  }
  return out;
}

/// Frobenius norm of a - b in float.
template <class T>
double frobenius_distance(const Matrix<T>& a, const Matrix<T>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    s += std::norm(field_traits<T>::to_float(a.data()[i]) - field_traits<T>::to_float(b.data()[i]));
  }
  return std::sqrt(s);
}

}  // namespace grasscurve
