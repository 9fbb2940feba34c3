#pragma once

#include "flasque/integer.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flasque {

using IntVector = std::vector<Integer>;

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(size_t rows, size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("Matrix: entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  [[nodiscard]] size_t rows() const { return rows_; }
  [[nodiscard]] size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(size_t r, size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(size_t r, size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }

  [[nodiscard]] std::vector<T> column(size_t c) const {
    std::vector<T> out(rows_);
    for (size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(size_t c, std::span<const T> v) {
    for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  [[nodiscard]] const std::vector<T>& data() const { return data_; }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

inline IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline IntMatrix diagonal_matrix(std::span<const Integer> d) {
  IntMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline IntMatrix column_matrix(std::span<const Integer> v) {
  IntMatrix m(v.size(), 1);
  for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

inline IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      auto brow = b.row(k);
      for (size_t j = 0; j < b.cols(); ++j)
        if (!brow[j].is_zero()) orow[j].submul(-aik, brow[j]);
    }
  }
  return out;
}

inline IntVector operator*(const IntMatrix& a, std::span<const Integer> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  IntVector out(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    auto arow = a.row(i);
    for (size_t k = 0; k < a.cols(); ++k)
      if (!arow[k].is_zero() && !v[k].is_zero()) out[i].submul(-arow[k], v[k]);
  }
  return out;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: shape mismatch");
  IntMatrix out = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  IntMatrix out = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  return out;
}

inline IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix out = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  return out;
}

inline IntMatrix operator-(const IntMatrix& a) { return Integer(-1) * a; }

inline bool is_zero(const IntMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const Integer& x) { return x.is_zero(); });
}

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    throw std::invalid_argument("hstack: row count mismatch");
  }
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    throw std::invalid_argument("vstack: column count mismatch");
  }
  IntMatrix out(a.rows() + b.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

// Block diagonal matrix with `copies` copies of `a`.
inline IntMatrix repeat_diagonal(const IntMatrix& a, size_t copies) {
  IntMatrix out(a.rows() * copies, a.cols() * copies);
  for (size_t k = 0; k < copies; ++k)
    for (size_t r = 0; r < a.rows(); ++r)
      for (size_t c = 0; c < a.cols(); ++c) out(k * a.rows() + r, k * a.cols() + c) = a(r, c);
  return out;
}

inline IntMatrix select_columns(const IntMatrix& a, std::span<const size_t> cols) {
  IntMatrix out(a.rows(), cols.size());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t j = 0; j < cols.size(); ++j) out(r, j) = a(r, cols[j]);
  return out;
}

inline IntMatrix select_rows(const IntMatrix& a, std::span<const size_t> rows) {
  IntMatrix out(rows.size(), a.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t c = 0; c < a.cols(); ++c) out(i, c) = a(rows[i], c);
  return out;
}

inline IntMatrix submatrix(const IntMatrix& a, size_t r0, size_t c0, size_t nr, size_t nc) {
  IntMatrix out(nr, nc);
  for (size_t r = 0; r < nr; ++r)
    for (size_t c = 0; c < nc; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

inline IntMatrix int_matrix(size_t rows, size_t cols, std::initializer_list<long> entries) {
  if (entries.size() != rows * cols) throw std::invalid_argument("int_matrix: entry count");
  std::vector<Integer> data(entries.begin(), entries.end());
  return IntMatrix(rows, cols, std::move(data));
}

inline std::string to_string(const IntMatrix& a) {
  std::string s = "[";
  for (size_t r = 0; r < a.rows(); ++r) {
    s += r ? ",[" : "[";
    for (size_t c = 0; c < a.cols(); ++c) {
      if (c) s += ",";
      s += a(r, c).str();
    }
    s += "]";
  }
  return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& a) { return os << to_string(a); }

}  // namespace flasque
