#pragma once

#include <optional>
#include <vector>

#include "annfit/group_ring.hpp"
#include "annfit/howell.hpp"
#include "annfit/matrix.hpp"

namespace annfit {

inline constexpr long kDefaultGuard = 8;

// Finite Z_l[G]-module given by a presentation over Z[G]: rows are relations,
// columns generators; M = Z_l[G]^b / (row span).
struct PresentedModule {
  FiniteAbelianGroup group;
  long l = 0;
  ZGMatrix relations;  // a x b
};

// Finite Z_l[G]-module in diagonal form: underlying group prod Z/l^{e_j}
// with e_1 <= ... <= e_k, plus one invertible action matrix per group
// generator.  Matrix entry (i, j) is only meaningful mod l^{e_i}; matrices
// are stored with each row i canonically reduced mod l^{e_i}, which makes
// products of canonical representatives well defined (the compatibility
// condition l^{e_i - e_j} | A[i][j] for e_i > e_j is validated).
class ConcreteModule {
 public:
  ConcreteModule(FiniteAbelianGroup g, long l, std::vector<long> factor_exps,
                 std::vector<IntMatrix> generator_actions);
  static ConcreteModule trivial(FiniteAbelianGroup g, long l);

  const FiniteAbelianGroup& group() const { return group_; }
  long l() const { return l_; }
  const std::vector<long>& factors() const { return factors_; }
  const std::vector<IntMatrix>& generator_actions() const { return actions_; }
  long factor_count() const { return static_cast<long>(factors_.size()); }
  long exponent_max() const { return factors_.empty() ? 0 : factors_.back(); }
  Int order() const;
  bool is_trivial() const { return factors_.empty(); }

  // Canonical-form product respecting the per-row moduli.
  IntMatrix compose(const IntMatrix& a, const IntMatrix& b) const;
  IntMatrix canonical(IntMatrix m) const;
  IntMatrix identity_action() const;
  IntMatrix action_of_element(long element) const;
  const std::vector<IntMatrix>& element_actions() const;  // cached, all of G
  IntMatrix action_of(const ZG& r) const;
  bool annihilated_by(const ZG& r) const;

  bool same_shape(const ConcreteModule& o) const {
    return group_ == o.group_ && l_ == o.l_ && factors_ == o.factors_;
  }

 private:
  void validate() const;

  FiniteAbelianGroup group_;
  long l_ = 0;
  std::vector<long> factors_;
  std::vector<IntMatrix> actions_;
  mutable std::vector<IntMatrix> element_actions_;  // lazy cache
};

// Ideal of Z/l^N[G] given by integer generators, closed under G and Howell-
// canonicalized at the working precision N and again at N + guard.  Every
// membership answer is recomputed at the higher precision; disagreement is
// an internal error, not a result.
class IdealHandle {
 public:
  IdealHandle(FiniteAbelianGroup g, long l, long precision, std::vector<ZG> gens,
              long guard = kDefaultGuard);

  const FiniteAbelianGroup& group() const { return group_; }
  long l() const { return l_; }
  long precision() const { return precision_; }
  long guard() const { return guard_; }
  const std::vector<ZG>& generators() const { return generators_; }
  const HowellBasis& howell() const { return basis_; }

  // Integer lifts of the Howell basis rows; canonical generating set.
  std::vector<ZG> howell_generator_lifts() const;

  bool contains(const ZG& x) const;
  // Rational coefficients may carry prime-to-l denominators (units mod l^N);
  // an l in any denominator throws NotIntegralError.
  bool contains(const QG& x) const;
  bool contains(const FractionalGroupRingElement& x) const;

  bool equals(const IdealHandle& o) const;
  IdealHandle tau() const;

 private:
  FiniteAbelianGroup group_;
  long l_, precision_, guard_;
  std::vector<ZG> generators_;
  HowellBasis basis_, check_basis_;
};

// Diagonalization of the underlying abelian group with the induced G-action.
// Throws NotFiniteError / NotLPowerError when the cokernel is not a finite
// l-group.
ConcreteModule realize(const PresentedModule& pm);

// Shared quotient construction: Z^n modulo the column span of `relations`,
// carrying commuting integer `ambient_actions` down to the quotient.
ConcreteModule quotient_module(const FiniteAbelianGroup& g, long l, long n,
                               const IntMatrix& relations,
                               const std::vector<IntMatrix>& ambient_actions);

// Annihilator ideal; the relation lattice is computed exactly over Z, so the
// handle is correct at any admissible precision.
// Pre: precision >= exponent_max + guard (PrecisionError).
IdealHandle annihilator(const ConcreteModule& m, long precision,
                        long guard = kDefaultGuard);

// Fitting ideal of a presentation: all b x b minors (zero rows appended when
// the presentation has fewer relations than generators).
IdealHandle fitting_ideal(const PresentedModule& pm, long precision,
                          long guard = kDefaultGuard);

// Fitting ideal of a concrete module via a small honest presentation.
IdealHandle fitting_of_module(const ConcreteModule& m, long precision,
                              long guard = kDefaultGuard);

// Minimal number of Z_l[G]-generators, by Nakayama reduction to the
// semisimple quotient F_l[H] and splitting into simple components.
long min_generators(const ConcreteModule& m);

ConcreteModule pontryagin_dual(const ConcreteModule& m);

// Canonical (order + action) presentation: k generators, k + rank*k relations.
PresentedModule presentation_of(const ConcreteModule& m);

// Presentation on Nakayama-lifted generators with an exact relation lattice;
// generator count is dim_{F_l} M/rad(M), which keeps Fitting minors small.
PresentedModule small_presentation(const ConcreteModule& m);

// Brute-force annihilator at precision e: all residue elements killing M.
// Pre: e >= exponent_max and l^{e * |G|} <= 2^20.
std::vector<ZG> oracle_annihilator(const ConcreteModule& m, long e);

}  // namespace annfit
