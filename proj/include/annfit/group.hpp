#pragma once

#include <cstddef>
#include <vector>

namespace annfit {

// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k, all
// d_i >= 2.  An element is the exponent tuple (e_1, ..., e_k) with
// 0 <= e_i < d_i, addressed everywhere by its mixed-radix index
//
//   index(e) = sum_i e_i * prod_{j<i} d_j       (first factor fastest)
//
// which is the layout every coefficient vector in the library assumes.
// The empty factor list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup();  // trivial group
  explicit FiniteAbelianGroup(std::vector<long> invariant_factors);

  // Builds the invariant-factor form of C_{n_1} x ... x C_{n_r} for
  // arbitrary cyclic orders (redistributes prime powers).
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<long>& orders);

  long order() const { return order_; }
  long exponent() const;  // d_k, 1 for the trivial group
  std::size_t rank() const { return factors_.size(); }
  const std::vector<long>& invariant_factors() const { return factors_; }

  long index_of(const std::vector<long>& exps) const;
  std::vector<long> exps_of(long index) const;

  long identity() const { return 0; }
  long mul(long a, long b) const;
  long inverse(long a) const;
  long power(long a, long e) const;  // e may be negative
  long element_order(long a) const;
  // Index of the i-th standard generator (exponent tuple e_i = 1, rest 0).
  long generator(std::size_t i) const;

  // Sylow data at the prime l.  exps[i] = v_l(d_i); the Sylow subgroup is
  // prod C_{l^exps[i]} and is cyclic iff at most one exps[i] is nonzero.
  std::vector<long> sylow_exponents(long l) const;
  bool sylow_cyclic(long l) const;
  // d_i with the l-part removed; orders of the prime-to-l quotient factors.
  std::vector<long> prime_to_l_orders(long l) const;

  bool operator==(const FiniteAbelianGroup& o) const {
    return factors_ == o.factors_;
  }
  bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

 private:
  std::vector<long> factors_;
  long order_ = 1;
};

}  // namespace annfit
