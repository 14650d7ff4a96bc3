#pragma once

#include <vector>

#include "annfit/scalars.hpp"

namespace annfit {

// Canonical basis of a row span over Z/l^n.  Properties:
//   - one row per pivot column, rows sorted by pivot column;
//   - each pivot entry is exactly l^v for some 0 <= v < n;
//   - entries above a pivot are reduced mod that pivot;
//   - the span is Howell-closed: l^{n-v} * row is in the span of later rows.
// Two generating sets span the same submodule iff their forms are identical,
// which is what every ideal-equality test in the library relies on.
struct HowellBasis {
  long l = 0;
  long n = 0;
  long cols = 0;
  std::vector<std::vector<Int>> rows;
  std::vector<long> pivot_cols;
  std::vector<long> pivot_vals;  // v_l of each pivot

  Int modulus() const { return pow_l(l, n); }
  // Number of elements of the span (product of l^{n - v} over pivots).
  Int span_size() const;
  bool operator==(const HowellBasis& o) const {
    return l == o.l && n == o.n && cols == o.cols && rows == o.rows;
  }
};

HowellBasis howell_form(std::vector<std::vector<Int>> generators, long l, long n,
                        long cols);

// Membership of v (reduced mod l^n) in the span described by the basis.
bool residue_membership(const HowellBasis& basis, std::vector<Int> v);

}  // namespace annfit
