#pragma once

#include <vector>

#include "annfit/matrix.hpp"

namespace annfit {

// Berkowitz determinant: division-free, so it is valid over rings with zero
// divisors (group rings in particular).  Works over any commutative ring
// given explicit zero and one.  det of the empty matrix is one.
template <class R>
R det_division_free(const Matrix<R>& a, const R& zero, const R& one) {
  long n = a.rows();
  if (n != a.cols()) throw BadParameterError("determinant of non-square matrix");
  if (n == 0) return one;

  // q holds the characteristic polynomial coefficients (monic first) of the
  // leading principal r x r submatrix; the Berkowitz step multiplies by a
  // Toeplitz matrix built from entries of the next bordering.
  std::vector<R> q{one};
  for (long r = 1; r <= n; ++r) {
    // c_0 = 1, c_1 = -a_rr, c_k = -(Row * M^{k-2} * Col) for k >= 2, where
    // M is the (r-1) x (r-1) leading block, Row/Col the borderings.
    std::vector<R> c(static_cast<std::size_t>(r) + 1, zero);
    c[0] = one;
    c[1] = zero - a.at(r - 1, r - 1);
    std::vector<R> w(static_cast<std::size_t>(r - 1), zero);  // M^k * Col
    for (long i = 0; i < r - 1; ++i) w[i] = a.at(i, r - 1);
    for (long k = 2; k <= r; ++k) {
      R dot = zero;
      for (long i = 0; i < r - 1; ++i) dot += a.at(r - 1, i) * w[i];
      c[k] = zero - dot;
      if (k < r) {
        std::vector<R> w2(static_cast<std::size_t>(r - 1), zero);
        for (long i = 0; i < r - 1; ++i)
          for (long j = 0; j < r - 1; ++j) w2[i] += a.at(i, j) * w[j];
        w = std::move(w2);
      }
    }
    std::vector<R> q2(static_cast<std::size_t>(r) + 1, zero);
    for (std::size_t j = 0; j < q.size(); ++j)
      for (std::size_t i = 0; i + j < q2.size() && i < c.size(); ++i)
        q2[i + j] += c[i] * q[j];
    q = std::move(q2);
  }
  // char(A)(0) = (-1)^n det(A).
  R det = q[static_cast<std::size_t>(n)];
  if (n % 2) det = zero - det;
  return det;
}

// Cofactor expansion; exponential, used as an independent oracle in tests
// and for tiny matrices.
template <class R>
R det_cofactor(const Matrix<R>& a, const R& zero, const R& one) {
  long n = a.rows();
  if (n != a.cols()) throw BadParameterError("determinant of non-square matrix");
  if (n == 0) return one;
  if (n == 1) return a.at(0, 0);
  R det = zero;
  for (long j = 0; j < n; ++j) {
    Matrix<R> sub(n - 1, n - 1, zero);
    for (long r = 1; r < n; ++r) {
      long cc = 0;
      for (long c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(r - 1, cc++) = a.at(r, c);
      }
    }
    R term = a.at(0, j) * det_cofactor(sub, zero, one);
    if (j % 2)
      det -= term;
    else
      det += term;
  }
  return det;
}

// All k x k minors, row subsets then column subsets in lexicographic order.
template <class R>
std::vector<R> all_minors(const Matrix<R>& a, long k, const R& zero,
                          const R& one) {
  if (k < 0 || k > a.rows() || k > a.cols())
    throw BadParameterError("minor size out of range");
  std::vector<R> out;
  std::vector<long> rs(k), cs(k);
  for (long i = 0; i < k; ++i) rs[i] = i;
  auto advance = [](std::vector<long>& idx, long limit) {
    long k2 = static_cast<long>(idx.size());
    for (long i = k2 - 1; i >= 0; --i) {
      if (idx[i] < limit - (k2 - i)) {
        ++idx[i];
        for (long j = i + 1; j < k2; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    for (long i = 0; i < k; ++i) cs[i] = i;
    do {
      Matrix<R> sub(k, k, zero);
      for (long r = 0; r < k; ++r)
        for (long c = 0; c < k; ++c) sub.at(r, c) = a.at(rs[r], cs[c]);
      out.push_back(det_division_free(sub, zero, one));
    } while (advance(cs, a.cols()));
  } while (advance(rs, a.rows()));
  return out;
}

template <class S>
GroupRingElement<S> det_division_free(const GroupRingMatrix<S>& a,
                                      const FiniteAbelianGroup& g) {
  return det_division_free(a, GroupRingElement<S>(g),
                           GroupRingElement<S>::scalar(g, S(1)));
}

template <class S>
std::vector<GroupRingElement<S>> all_minors(const GroupRingMatrix<S>& a, long k,
                                            const FiniteAbelianGroup& g) {
  return all_minors(a, k, GroupRingElement<S>(g),
                    GroupRingElement<S>::scalar(g, S(1)));
}

}  // namespace annfit
