#pragma once

#include <vector>

#include "annfit/group_ring.hpp"
#include "annfit/modules.hpp"

namespace annfit {

// Exact Bernoulli numbers, B_1 = -1/2 convention.
Rat bernoulli_number(long k);

// B_n(q) = sum_j C(n, j) B_j q^{n-j}.
Rat bernoulli_polynomial(long n, const Rat& q);

// zeta_f(a, 1-n) = -f^{n-1} B_n(<a/f>) / n with <a/f> in (0, 1].
// Requires gcd(a, f) = 1 and n >= 2.
Rat partial_zeta(long f, long a, long n);

// Abelian field L = fixed field of the subgroup H <= (Z/f)* inside the f-th
// cyclotomic field.  The Galois group (Z/f)*/H is materialized in invariant
// factor form, with a two-way dictionary between residues a (giving sigma_a)
// and element indices.
class AbelianFieldSpec {
 public:
  AbelianFieldSpec(long f, const std::vector<long>& subgroup_gens);

  long conductor() const { return f_; }
  const std::vector<long>& units() const { return units_; }
  const std::vector<long>& subgroup() const { return h_; }
  const FiniteAbelianGroup& galois_group() const { return group_; }

  bool in_subgroup(long a) const;
  // Element index of sigma_a; a must be coprime to the conductor.
  long sigma(long a) const;
  // Some residue a with sigma(a) = element.
  long coset_representative(long element) const;
  // -1 in H, i.e. L is totally real.
  bool plus_field() const;

  bool operator==(const AbelianFieldSpec& o) const {
    return f_ == o.f_ && h_ == o.h_;
  }

 private:
  long f_;
  std::vector<long> units_, h_;
  FiniteAbelianGroup group_;
  std::vector<long> sigma_of_unit_;   // parallel to units_
  std::vector<long> rep_of_element_;  // element index -> residue
};

struct ThetaElement {
  AbelianFieldSpec field;
  long weight = 0;
  QG element;
};

// Theta_{L/Q}(n) = sum over residues a of zeta_f(a, 1-n) sigma_a^{-1}
// (coefficients accumulate over H-cosets).  Euler factors at primes dividing
// the conductor are absent by construction.  Requires n >= 2.
ThetaElement theta_element(const AbelianFieldSpec& field, long n);

// Coefficient transport along (Z/f)*/H_src ->> (Z/f)*/H_tgt; requires the
// same conductor and H_src <= H_tgt (IncompatibleFieldsError).
ThetaElement pushforward_theta(const ThetaElement& theta,
                               const AbelianFieldSpec& target);

// Identification of Galois groups at two levels of the same field: src has
// conductor a multiple of dst's and H_src is the full preimage of H_dst.
// Transports coefficients along sigma_a -> sigma_{a mod f_dst}.
QG transport(const QG& x, const AbelianFieldSpec& src,
             const AbelianFieldSpec& dst);

// 1 - p^{n-1} sigma_p^{-1}; requires p coprime to the conductor
// (RamifiedPrimeError) and n >= 1.
QG euler_factor(long p, const AbelianFieldSpec& field, long n);

// 1 - (-1)^n sigma_{-1}: multiplying Theta(n) by this is identically zero,
// the group-ring form of parity vanishing of L(1-n, chi) at mismatched sign.
QG parity_projector(const AbelianFieldSpec& field, long n);

// Largest k with the image of {a in (Z/lcm(f, p^k))* : a mod f in H} in
// (Z/p^k)* of exponent dividing n, i.e. v_p(w_n(L)).
long w_valuation(const AbelianFieldSpec& field, long n, long p);

// w_n(L) = prod_p p^{v_p}; contributing primes satisfy (p-1) | n or p | f.
Int w_invariant(const AbelianFieldSpec& field, long n);

// The invariants H^0 of Q_l/Z_l(n+1): the cyclic module Z/l^a with
// a = v_l(w_{n+1}(L)) and sigma_b acting by b'^{n+1} for a lift b' of b
// coprime to l (lift-independence is rechecked; a = 0 gives the zero
// module over the Galois group).
ConcreteModule h0_model(const AbelianFieldSpec& field, long n, long l);

struct CoatesSinnottReport {
  QG smoothed;                     // w_{n+1}(Q) (b^{n+1} - sigma_b) Theta(n+1)
  bool smoothed_integral = false;  // all coefficients l-integral
  std::vector<long> primes;       // unramified P != l used as generators
  std::vector<bool> annihilates;  // sigma_P - P^{n+1} kills h0_model
  bool ideal_contained = false;   // those generators plus l^a lie in ann(h0)
  bool pass = false;
};

// Integrality of the smoothed Stickelberger element at l plus the classical
// annihilator cross-checks against h0_model.  Requires gcd(b, f) = 1 and
// n >= 1.
CoatesSinnottReport coates_sinnott_check(const AbelianFieldSpec& field, long n,
                                         long l, long b,
                                         long prime_count = 8,
                                         long guard = kDefaultGuard);

}  // namespace annfit
