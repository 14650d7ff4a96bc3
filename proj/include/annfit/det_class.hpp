#pragma once

#include "annfit/solve.hpp"

namespace annfit {

// Coset of a Q[G]-unit modulo Z_l[G]-units: the value of the refined Euler
// characteristic attached to a perfect complex.  The representative is kept
// exactly; equality means the ratio is a unit of Z_l[G] in both directions.
class DetClass {
 public:
  DetClass(long l, QG rep) : l_(l), rep_(std::move(rep)) {
    inverse_ = invert(rep_);  // throws NotInvertibleError for zero divisors
  }

  long l() const { return l_; }
  const QG& rep() const { return rep_; }
  const QG& rep_inverse() const { return inverse_; }

  DetClass inverse() const { return DetClass(l_, inverse_); }
  DetClass operator*(const DetClass& o) const {
    return DetClass(l_, rep_ * o.rep_);
  }

  // The class under the involution tau, inverted: the value dualization is
  // expected to produce.
  DetClass tau_inverse() const { return DetClass(l_, invert(rep_.tau())); }

 private:
  long l_;
  QG rep_;
  QG inverse_;
};

inline bool det_class_equals(const DetClass& a, const DetClass& b) {
  if (a.l() != b.l() || a.rep().group() != b.rep().group())
    throw BadParameterError("det classes over different rings");
  return is_integral_unit(a.rep() * b.rep_inverse(), a.l());
}

}  // namespace annfit
