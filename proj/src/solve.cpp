#include "annfit/solve.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "annfit/errors.hpp"

namespace annfit {

std::optional<RatMatrix> solve_rational(const RatMatrix& a, const RatMatrix& b,
                                        std::uint64_t pivot_seed) {
  if (a.rows() != b.rows()) throw BadParameterError("solve shape mismatch");
  long m = a.rows(), n = a.cols(), k = b.cols();

  std::vector<long> col_order(n);
  std::iota(col_order.begin(), col_order.end(), 0);
  if (pivot_seed != 0) {
    std::mt19937_64 rng(pivot_seed);
    std::shuffle(col_order.begin(), col_order.end(), rng);
  }

  RatMatrix w(m, n + k, Rat(0));  // augmented working copy
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) w.at(i, j) = a.at(i, col_order[j]);
    for (long j = 0; j < k; ++j) w.at(i, n + j) = b.at(i, j);
  }

  std::vector<long> pivot_of_col(n, -1);
  long row = 0;
  for (long col = 0; col < n && row < m; ++col) {
    long pr = -1;
    for (long i = row; i < m; ++i)
      if (w.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (long j = col; j < n + k; ++j) std::swap(w.at(pr, j), w.at(row, j));
    Rat inv = 1 / w.at(row, col);
    for (long j = col; j < n + k; ++j) w.at(row, j) *= inv;
    for (long i = 0; i < m; ++i) {
      if (i == row || w.at(i, col) == 0) continue;
      Rat f = w.at(i, col);
      for (long j = col; j < n + k; ++j) w.at(i, j) -= f * w.at(row, j);
    }
    pivot_of_col[col] = row;
    ++row;
  }
  // Consistency: zero rows of A-part must have zero b-part.
  for (long i = row; i < m; ++i)
    for (long j = 0; j < k; ++j)
      if (w.at(i, n + j) != 0) return std::nullopt;

  RatMatrix x(n, k, Rat(0));
  for (long col = 0; col < n; ++col) {
    if (pivot_of_col[col] < 0) continue;  // free variable, left at zero
    for (long j = 0; j < k; ++j)
      x.at(col_order[col], j) = w.at(pivot_of_col[col], n + j);
  }
  return x;
}

std::optional<QGMatrix> equivariant_solve(const QGMatrix& a, const QGMatrix& b,
                                          const FiniteAbelianGroup& g,
                                          std::uint64_t pivot_seed) {
  if (a.rows() != b.rows()) throw BadParameterError("solve shape mismatch");
  long ord = g.order();
  RatMatrix ae = expand(a, g);
  // Unknowns are the coefficient vectors of the X entries; the expanded
  // matrix applied to a stacked coefficient vector computes exactly the
  // coefficients of A * X, so the B columns decouple into scalar systems.
  RatMatrix rhs(a.rows() * ord, b.cols(), Rat(0));
  for (long r = 0; r < b.rows(); ++r)
    for (long c = 0; c < b.cols(); ++c)
      for (long h = 0; h < ord; ++h) rhs.at(r * ord + h, c) = b.at(r, c).coeff(h);
  auto sol = solve_rational(ae, rhs, pivot_seed);
  if (!sol) return std::nullopt;
  QGMatrix x = zero_gr_matrix<Rat>(g, a.cols(), b.cols());
  for (long r = 0; r < a.cols(); ++r)
    for (long c = 0; c < b.cols(); ++c)
      for (long h = 0; h < ord; ++h) x.at(r, c).coeff(h) = sol->at(r * ord + h, c);
  return x;
}

QG invert(const QG& x) {
  const FiniteAbelianGroup& g = x.group();
  QGMatrix a = zero_gr_matrix<Rat>(g, 1, 1);
  a.at(0, 0) = x;
  QGMatrix one = identity_gr_matrix<Rat>(g, 1);
  auto sol = equivariant_solve(a, one, g);
  if (!sol) throw NotInvertibleError("element is a zero divisor in Q[G]");
  QG y = sol->at(0, 0);
  if ((x * y) != QG::scalar(g, Rat(1)))
    throw InternalCheckError("inverse verification failed");
  return y;
}

bool is_integral_unit(const QG& x, long l) {
  QG y = invert(x);
  return min_l_valuation(x, l) >= 0 && min_l_valuation(y, l) >= 0;
}

}  // namespace annfit
