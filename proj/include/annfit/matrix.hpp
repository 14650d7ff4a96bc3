#pragma once

#include <vector>

#include "annfit/group_ring.hpp"

namespace annfit {

// Dense row-major matrix over any value type with ring semantics.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(long rows, long cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw BadParameterError("negative matrix shape");
  }
  Matrix(long rows, long cols, T fill)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows * cols), std::move(fill)) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  T& at(long r, long c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& at(long r, long c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  static Matrix identity(long n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (long i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_, T());
    for (long r = 0; r < rows_; ++r)
      for (long c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  long rows_, cols_;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
template <class S>
using GroupRingMatrix = Matrix<GroupRingElement<S>>;
using ZGMatrix = GroupRingMatrix<Int>;
using QGMatrix = GroupRingMatrix<Rat>;

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows()) throw BadParameterError("matmul shape mismatch");
  Matrix<T> r(a.rows(), b.cols(), zero);
  for (long i = 0; i < a.rows(); ++i)
    for (long k = 0; k < a.cols(); ++k)
      for (long j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
  return r;
}

// Zero-filled group-ring matrix over a fixed group.
template <class S>
GroupRingMatrix<S> zero_gr_matrix(const FiniteAbelianGroup& g, long rows,
                                  long cols) {
  return GroupRingMatrix<S>(rows, cols, GroupRingElement<S>(g));
}

template <class S>
GroupRingMatrix<S> identity_gr_matrix(const FiniteAbelianGroup& g, long n) {
  auto m = zero_gr_matrix<S>(g, n, n);
  for (long i = 0; i < n; ++i)
    m.at(i, i) = GroupRingElement<S>::scalar(g, S(1));
  return m;
}

template <class S>
GroupRingMatrix<S> gr_matmul(const GroupRingMatrix<S>& a,
                             const GroupRingMatrix<S>& b,
                             const FiniteAbelianGroup& g) {
  return matmul(a, b, GroupRingElement<S>(g));
}

// Entrywise tau followed by transpose; the differential of the dual complex.
template <class S>
GroupRingMatrix<S> tau_transpose(const GroupRingMatrix<S>& a,
                                 const FiniteAbelianGroup& g) {
  auto m = zero_gr_matrix<S>(g, a.cols(), a.rows());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) m.at(c, r) = a.at(r, c).tau();
  return m;
}

// Regular representation of a single element: column h holds the
// coefficients of x * h, i.e. rep[g][h] = coeff of x at g * h^{-1}.
// Multiplication matrices turn group-ring systems into scalar systems.
template <class S>
Matrix<S> regular_representation(const GroupRingElement<S>& x) {
  const FiniteAbelianGroup& g = x.group();
  long n = g.order();
  Matrix<S> m(n, n, S(0));
  for (long a = 0; a < n; ++a)
    for (long h = 0; h < n; ++h) m.at(g.mul(a, h), h) = x.coeff(a);
  return m;
}

// Blockwise expansion of a group-ring matrix to a scalar matrix; block (i, j)
// is the regular representation of entry (i, j).  Row/column (i, g) sits at
// index i * |G| + g.
template <class S>
Matrix<S> expand(const GroupRingMatrix<S>& a, const FiniteAbelianGroup& g) {
  long n = g.order();
  Matrix<S> m(a.rows() * n, a.cols() * n, S(0));
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) {
      Matrix<S> blk = regular_representation(a.at(r, c));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m.at(r * n + i, c * n + j) = blk.at(i, j);
    }
  return m;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix m(a.rows(), a.cols(), Rat(0));
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) m.at(r, c) = Rat(a.at(r, c));
  return m;
}

inline QGMatrix to_rational(const ZGMatrix& a, const FiniteAbelianGroup& g) {
  auto m = zero_gr_matrix<Rat>(g, a.rows(), a.cols());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) m.at(r, c) = to_rational(a.at(r, c));
  return m;
}

}  // namespace annfit
