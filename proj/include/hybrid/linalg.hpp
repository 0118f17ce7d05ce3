#pragma once

// Exact dense linear algebra as free functions over Eigen matrices.
// Intended for exact scalars (Rational); comparisons with zero are exact.

#include "hybrid/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

namespace hybrid {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using MatrixQ = Mat<Rational>;
using VectorQ = Vec<Rational>;
using RowVectorQ = RowVec<Rational>;

template <class Scalar>
struct Echelon {
  Mat<Scalar> reduced;               // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <class Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{input, {}};
  Mat<Scalar>& a = out.reduced;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < cols && r < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    Scalar inv = Scalar(1) / a(r, col);
    for (Eigen::Index j = col; j < cols; ++j) {
      if (a(r, j) != 0) a(r, j) *= inv;
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, col) == 0) continue;
      Scalar factor = a(i, col);
      for (Eigen::Index j = col; j < cols; ++j) {
        if (a(r, j) != 0) a(i, j) -= factor * a(r, j);
      }
    }
    out.pivots.push_back(col);
    ++r;
  }
  return out;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  return static_cast<Eigen::Index>(rref(a).pivots.size());
}

// Columns form a basis of { x : a x = 0 }.
template <class Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  auto e = rref(a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (auto p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
  }
  Mat<Scalar> basis = Mat<Scalar>::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index fc = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(fc, kk) = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) {
      const auto rr = static_cast<Eigen::Index>(r);
      if (e.reduced(rr, fc) != 0) basis(e.pivots[r], kk) = -e.reduced(rr, fc);
    }
  }
  return basis;
}

// Rows form a basis of { y : y a = 0 }.
template <class Derived>
Mat<typename Derived::Scalar> left_nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> t = a.transpose();
  return nullspace(t).transpose();
}

// Linearly independent rows spanning the row space of a.
template <class Derived>
Mat<typename Derived::Scalar> row_basis(const Eigen::MatrixBase<Derived>& a) {
  auto e = rref(a);
  return e.reduced.topRows(static_cast<Eigen::Index>(e.pivots.size()));
}

// Some x with a x = b, if one exists.
template <class DA, class DB>
std::optional<Vec<typename DA::Scalar>> solve(const Eigen::MatrixBase<DA>& a,
                                              const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Mat<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto e = rref(aug);
  Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(rr, a.cols());
  }
  return x;
}

// Some row vector y with y basis = v, if v lies in the row space.
template <class DA, class DB>
std::optional<RowVec<typename DA::Scalar>> solve_left(const Eigen::MatrixBase<DA>& basis,
                                                      const Eigen::MatrixBase<DB>& v) {
  using Scalar = typename DA::Scalar;
  Mat<Scalar> bt = basis.transpose();
  Vec<Scalar> vt = v.transpose();
  auto x = solve(bt, vt);
  if (!x) return std::nullopt;
  return RowVec<Scalar>(x->transpose());
}

// Some X with a X = b for all columns of b at once, if one exists.
template <class DA, class DB>
std::optional<Mat<typename DA::Scalar>> solve_many(const Eigen::MatrixBase<DA>& a,
                                                   const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Mat<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(b.cols()) = b;
  auto e = rref(aug);
  Mat<Scalar> x = Mat<Scalar>::Zero(a.cols(), b.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    x.row(e.pivots[r]) = e.reduced.block(rr, a.cols(), 1, b.cols());
  }
  return x;
}

// Coordinates X with X basis = rows, for rows inside the row space of basis.
template <class DA, class DB>
std::optional<Mat<typename DA::Scalar>> coordinates_in(const Eigen::MatrixBase<DA>& basis,
                                                       const Eigen::MatrixBase<DB>& rows) {
  using Scalar = typename DA::Scalar;
  Mat<Scalar> bt = basis.transpose();
  Mat<Scalar> rt = rows.transpose();
  auto x = solve_many(bt, rt);
  if (!x) return std::nullopt;
  return Mat<Scalar>(x->transpose());
}

// Rows spanning the intersection of two row spaces.
template <class DA, class DB>
Mat<typename DA::Scalar> intersect_rows(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& w) {
  using Scalar = typename DA::Scalar;
  if (u.rows() == 0 || w.rows() == 0) return Mat<Scalar>::Zero(0, u.cols());
  Mat<Scalar> stacked(u.rows() + w.rows(), u.cols());
  stacked.topRows(u.rows()) = u;
  stacked.bottomRows(w.rows()) = -w;
  Mat<Scalar> rel = left_nullspace(stacked);  // y_u u = y_w w
  Mat<Scalar> out = rel.leftCols(u.rows()) * u;
  return row_basis(out);
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> a = input;
  const Eigen::Index n = a.rows();
  Scalar det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = col; i < n; ++i) {
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Scalar factor = a(i, col) / a(col, col);
      for (Eigen::Index j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) return false;
    }
  }
  return true;
}

// Rows of the identity completing the row space of `basis` to the full space.
template <class Derived>
Mat<typename Derived::Scalar> complement_rows(const Eigen::MatrixBase<Derived>& basis) {
  using Scalar = typename Derived::Scalar;
  auto e = rref(basis);
  const Eigen::Index n = basis.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (auto p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  Mat<Scalar> out = Mat<Scalar>::Zero(n - static_cast<Eigen::Index>(e.pivots.size()), n);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<size_t>(c)]) out(r++, c) = 1;
  }
  return out;
}

}  // namespace hybrid
