#pragma once

// Exact integer linear algebra: Hermite/echelon forms, Smith normal form,
// kernels, integral solving and lattice utilities.

#include "flasque/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace flasque {

namespace detail {

// row[dst] -= q * row[src], over columns [start, cols)
inline void row_submul(IntMatrix& m, size_t dst, size_t src, const Integer& q, size_t start = 0) {
  auto d = m.row(dst);
  auto s = m.row(src);
  for (size_t c = start; c < m.cols(); ++c)
    if (!s[c].is_zero()) d[c].submul(q, s[c]);
}

inline void col_submul(IntMatrix& m, size_t dst, size_t src, const Integer& q, size_t start = 0) {
  for (size_t r = start; r < m.rows(); ++r)
    if (!m(r, src).is_zero()) m(r, dst).submul(q, m(r, src));
}

inline void negate_row(IntMatrix& m, size_t r) {
  for (auto& x : m.row(r))
    if (!x.is_zero()) x = -x;
}

inline void negate_col(IntMatrix& m, size_t c) {
  for (size_t r = 0; r < m.rows(); ++r)
    if (!m(r, c).is_zero()) m(r, c) = -m(r, c);
}

}  // namespace detail

struct EchelonForm {
  IntMatrix form;       // U * A, row echelon, positive pivots
  IntMatrix transform;  // U, unimodular (empty unless requested)
  std::vector<size_t> pivots;
  size_t rank = 0;
};

// Row echelon form by unimodular row operations. Pivots are chosen by
// smallest magnitude, ties broken by lowest row index. With `reduce`, entries
// above each pivot are reduced into [0, pivot), which yields the Hermite
// normal form.
inline EchelonForm row_echelon(IntMatrix a, bool with_transform = false, bool reduce = true) {
  EchelonForm out;
  const size_t rows = a.rows(), cols = a.cols();
  IntMatrix u = with_transform ? identity_matrix(rows) : IntMatrix();
  size_t rank = 0;
  for (size_t j = 0; j < cols && rank < rows; ++j) {
    bool has_pivot = false;
    while (true) {
      size_t best = rows;
      for (size_t i = rank; i < rows; ++i) {
        if (a(i, j).is_zero()) continue;
        if (best == rows || compare(abs(a(i, j)), abs(a(best, j))) < 0) best = i;
      }
      if (best == rows) break;
      has_pivot = true;
      a.swap_rows(rank, best);
      if (with_transform) u.swap_rows(rank, best);
      bool done = true;
      for (size_t i = rank + 1; i < rows; ++i) {
        if (a(i, j).is_zero()) continue;
        Integer q = div_round(a(i, j), a(rank, j));
        detail::row_submul(a, i, rank, q, j);
        if (with_transform) detail::row_submul(u, i, rank, q);
        if (!a(i, j).is_zero()) done = false;
      }
      if (done) break;
    }
    if (!has_pivot) continue;
    if (a(rank, j).sign() < 0) {
      detail::negate_row(a, rank);
      if (with_transform) detail::negate_row(u, rank);
    }
    if (reduce) {
      for (size_t i = 0; i < rank; ++i) {
        if (a(i, j).is_zero()) continue;
        Integer q = div_floor(a(i, j), a(rank, j));
        if (q.is_zero()) continue;
        detail::row_submul(a, i, rank, q, j);
        if (with_transform) detail::row_submul(u, i, rank, q);
      }
    }
    out.pivots.push_back(j);
    ++rank;
  }
  out.form = std::move(a);
  out.transform = std::move(u);
  out.rank = rank;
  return out;
}

struct SmithDecomposition {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, same shape as input
  IntMatrix V;  // unimodular, cols x cols
  std::vector<Integer> invariant_factors;  // nonzero non-unit diagonal entries
  size_t rank = 0;

  [[nodiscard]] std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

// U * A * V = D with d_1 | d_2 | ... and non-negative diagonal.
inline SmithDecomposition smith_normal_form(const IntMatrix& a, bool with_transforms = true) {
  const size_t rows = a.rows(), cols = a.cols();
  IntMatrix d = a;
  IntMatrix u = with_transforms ? identity_matrix(rows) : IntMatrix();
  IntMatrix v = with_transforms ? identity_matrix(cols) : IntMatrix();
  const size_t n = std::min(rows, cols);

  auto move_to = [&](size_t t, size_t i, size_t j) {
    if (i != t) {
      d.swap_rows(t, i);
      if (with_transforms) u.swap_rows(t, i);
    }
    if (j != t) {
      d.swap_cols(t, j);
      if (with_transforms) v.swap_cols(t, j);
    }
  };

  size_t t = 0;
  for (; t < n; ++t) {
    size_t bi = rows, bj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (d(i, j).is_zero()) continue;
        if (bi == rows || compare(abs(d(i, j)), abs(d(bi, bj))) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi == rows) break;
    move_to(t, bi, bj);
    while (true) {
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (d(i, t).is_zero()) continue;
        Integer q = div_round(d(i, t), d(t, t));
        detail::row_submul(d, i, t, q, t);
        if (with_transforms) detail::row_submul(u, i, t, q);
        if (!d(i, t).is_zero()) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (d(t, j).is_zero()) continue;
        Integer q = div_round(d(t, j), d(t, t));
        detail::col_submul(d, j, t, q, t);
        if (with_transforms) detail::col_submul(v, j, t, q);
        if (!d(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        size_t pi = t, pj = t;
        for (size_t i = t; i < rows; ++i)
          if (!d(i, t).is_zero() && compare(abs(d(i, t)), abs(d(pi, pj))) < 0) {
            pi = i;
            pj = t;
          }
        for (size_t j = t; j < cols; ++j)
          if (!d(t, j).is_zero() && compare(abs(d(t, j)), abs(d(pi, pj))) < 0) {
            pi = t;
            pj = j;
          }
        move_to(t, pi, pj);
        continue;
      }
      // Row and column t are clear; enforce divisibility on the remainder.
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (!(d(i, j) % d(t, t)).is_zero()) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      detail::row_submul(d, t, bad, Integer(-1), t);
      if (with_transforms) detail::row_submul(u, t, bad, Integer(-1));
    }
    if (d(t, t).sign() < 0) {
      detail::negate_row(d, t);
      if (with_transforms) detail::negate_row(u, t);
    }
  }

  SmithDecomposition out;
  out.rank = t;
  for (size_t i = 0; i < t; ++i)
    if (!d(i, i).is_one()) out.invariant_factors.push_back(d(i, i));
  out.U = std::move(u);
  out.D = std::move(d);
  out.V = std::move(v);
  return out;
}

// Hermite basis of the column span of `a` (columns of the result).
inline IntMatrix image_basis(const IntMatrix& a) {
  if (a.cols() == 0) return IntMatrix(a.rows(), 0);
  EchelonForm e = row_echelon(transpose(a), false, true);
  IntMatrix out(a.rows(), e.rank);
  for (size_t k = 0; k < e.rank; ++k)
    for (size_t r = 0; r < a.rows(); ++r) out(r, k) = e.form(k, r);
  return out;
}

// Columns form a basis of the full integer kernel {x : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  const size_t n = a.cols();
  if (a.rows() == 0) return identity_matrix(n);
  EchelonForm e = row_echelon(transpose(a), true, false);
  IntMatrix k(n, n - e.rank);
  for (size_t i = e.rank; i < n; ++i)
    for (size_t c = 0; c < n; ++c) k(c, i - e.rank) = e.transform(i, c);
  return image_basis(k);
}

// Reusable integral solver for a x = b against a fixed matrix a.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
    EchelonForm e = row_echelon(transpose(a), true, false);
    h_ = std::move(e.form);
    u_ = std::move(e.transform);
    pivots_ = std::move(e.pivots);
    rank_ = e.rank;
  }

  [[nodiscard]] size_t rank() const { return rank_; }

  [[nodiscard]] std::optional<IntVector> solve(std::span<const Integer> b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve: right-hand side length mismatch");
    IntVector y(rank_);
    IntVector residual(b.begin(), b.end());
    for (size_t k = 0; k < rank_; ++k) {
      const size_t p = pivots_[k];
      const Integer& piv = h_(k, p);
      if (residual[p].is_zero()) continue;
      if (!(residual[p] % piv).is_zero()) return std::nullopt;
      y[k] = residual[p] / piv;
      auto hrow = h_.row(k);
      for (size_t j = p; j < rows_; ++j)
        if (!hrow[j].is_zero()) residual[j].submul(y[k], hrow[j]);
    }
    for (const auto& r : residual)
      if (!r.is_zero()) return std::nullopt;
    IntVector x(cols_);
    for (size_t k = 0; k < rank_; ++k) {
      if (y[k].is_zero()) continue;
      auto urow = u_.row(k);
      for (size_t c = 0; c < cols_; ++c)
        if (!urow[c].is_zero()) x[c].submul(-y[k], urow[c]);
    }
    return x;
  }

  [[nodiscard]] bool solvable(std::span<const Integer> b) const { return solve(b).has_value(); }

  // Solves a X = B column by column; nullopt if any column fails.
  [[nodiscard]] std::optional<IntMatrix> solve_columns(const IntMatrix& b) const {
    IntMatrix out(cols_, b.cols());
    for (size_t j = 0; j < b.cols(); ++j) {
      auto col = b.column(j);
      auto x = solve(col);
      if (!x) return std::nullopt;
      out.set_column(j, *x);
    }
    return out;
  }

  [[nodiscard]] IntMatrix kernel() const {
    IntMatrix k(cols_, cols_ - rank_);
    for (size_t i = rank_; i < cols_; ++i)
      for (size_t c = 0; c < cols_; ++c) k(c, i - rank_) = u_(i, c);
    return k;
  }

 private:
  size_t rows_, cols_;
  IntMatrix h_, u_;
  std::vector<size_t> pivots_;
  size_t rank_ = 0;
};

struct IntegerSolution {
  IntVector particular;
  IntMatrix homogeneous;  // kernel basis as columns
};

inline std::optional<IntegerSolution> solve_integer(const IntMatrix& a, std::span<const Integer> b) {
  IntegerSolver solver(a);
  auto x = solver.solve(b);
  if (!x) return std::nullopt;
  return IntegerSolution{std::move(*x), kernel_basis(a)};
}

inline Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const size_t n = a.rows();
  if (n == 0) return Integer(1);
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return Integer(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  return abs(determinant(a)).is_one();
}

inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  IntegerSolver solver(a);
  auto inv = solver.solve_columns(identity_matrix(a.rows()));
  if (!inv || a.rows() != a.cols() || solver.rank() != a.rows())
    throw std::invalid_argument("unimodular_inverse: matrix is not invertible over the integers");
  return *inv;
}

inline size_t matrix_rank(const IntMatrix& a) { return row_echelon(a, false, false).rank; }

// Saturation of the column lattice of `a` inside Z^rows.
inline IntMatrix saturation(const IntMatrix& a) {
  IntMatrix orth = kernel_basis(transpose(a));
  return kernel_basis(transpose(orth));
}

// Does the column lattice of `big` contain every column of `small`?
inline bool lattice_contains(const IntMatrix& big, const IntMatrix& small) {
  if (small.cols() == 0) return true;
  IntegerSolver solver(big);
  for (size_t j = 0; j < small.cols(); ++j)
    if (!solver.solvable(small.column(j))) return false;
  return true;
}

inline bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

inline IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) { return image_basis(hstack(a, b)); }

inline IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix k = kernel_basis(hstack(a, -b));
  IntMatrix top = submatrix(k, 0, 0, a.cols(), k.cols());
  return image_basis(a * top);
}

}  // namespace flasque
