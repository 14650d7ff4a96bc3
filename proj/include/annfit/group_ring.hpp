#pragma once

#include <string>
#include <vector>

#include "annfit/errors.hpp"
#include "annfit/group.hpp"
#include "annfit/scalars.hpp"

namespace annfit {

// Element of the group ring S[G], S one of Int (Z) or Rat (Q).  Coefficients
// are stored densely in the group's canonical element order.  Mixed-group
// arithmetic is a caller bug and throws.
template <class S>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(FiniteAbelianGroup g)
      : group_(std::move(g)), coeffs_(group_.order()) {}
  GroupRingElement(FiniteAbelianGroup g, std::vector<S> coeffs)
      : group_(std::move(g)), coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != group_.order())
      throw BadParameterError("coefficient vector length != group order");
  }

  static GroupRingElement scalar(const FiniteAbelianGroup& g, const S& c) {
    GroupRingElement r(g);
    r.coeffs_[0] = c;
    return r;
  }
  static GroupRingElement basis(const FiniteAbelianGroup& g, long element) {
    GroupRingElement r(g);
    r.coeffs_.at(element) = S(1);
    return r;
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<S>& coeffs() const { return coeffs_; }
  const S& coeff(long element) const { return coeffs_.at(element); }
  S& coeff(long element) { return coeffs_.at(element); }

  bool is_zero() const {
    for (const S& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  S augmentation() const {
    S s(0);
    for (const S& c : coeffs_) s += c;
    return s;
  }

  // The involution g -> g^{-1} extended linearly.
  GroupRingElement tau() const {
    GroupRingElement r(group_);
    for (long g = 0; g < group_.order(); ++g)
      r.coeffs_[group_.inverse(g)] = coeffs_[g];
    return r;
  }

  GroupRingElement operator+(const GroupRingElement& o) const {
    check_group(o);
    GroupRingElement r(group_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
  }
  GroupRingElement operator-(const GroupRingElement& o) const {
    check_group(o);
    GroupRingElement r(group_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
  }
  GroupRingElement operator-() const {
    GroupRingElement r(group_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
    return r;
  }
  GroupRingElement operator*(const GroupRingElement& o) const {
    check_group(o);
    GroupRingElement r(group_);
    for (long g = 0; g < group_.order(); ++g) {
      if (coeffs_[g] == 0) continue;
      for (long h = 0; h < group_.order(); ++h) {
        if (o.coeffs_[h] == 0) continue;
        r.coeffs_[group_.mul(g, h)] += coeffs_[g] * o.coeffs_[h];
      }
    }
    return r;
  }
  GroupRingElement operator*(const S& c) const {
    GroupRingElement r(group_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * c;
    return r;
  }
  GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
  GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
  GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }

  GroupRingElement pow(long e) const {
    if (e < 0) throw BadParameterError("negative group-ring power");
    GroupRingElement r = scalar(group_, S(1));
    GroupRingElement b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const GroupRingElement& o) const {
    return group_ == o.group_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ", ";
      if constexpr (std::is_same_v<S, Rat>)
        s += coeffs_[i].get_str();
      else
        s += coeffs_[i].get_str();
    }
    return s + "]";
  }

 private:
  void check_group(const GroupRingElement& o) const {
    if (group_ != o.group_)
      throw BadParameterError("group-ring operands over different groups");
  }

  FiniteAbelianGroup group_;
  std::vector<S> coeffs_;
};

using ZG = GroupRingElement<Int>;
using QG = GroupRingElement<Rat>;

inline QG to_rational(const ZG& x) {
  std::vector<Rat> c;
  c.reserve(x.coeffs().size());
  for (const Int& v : x.coeffs()) c.emplace_back(v);
  return QG(x.group(), std::move(c));
}

// Minimal l-valuation over all coefficients (kValuationInfinity for 0).
template <class S>
long min_l_valuation(const GroupRingElement<S>& x, long l) {
  long v = kValuationInfinity;
  for (const S& c : x.coeffs()) {
    long cv = l_valuation(c, l);
    if (cv < v) v = cv;
  }
  return v;
}

// Element of Q_l[G] written as l^{-denom_exp} * numerator with an integral
// numerator.  Normal form: denom_exp == 0, or l does not divide every
// numerator coefficient.
struct FractionalGroupRingElement {
  long l = 0;
  long denom_exp = 0;
  ZG numerator;

  FractionalGroupRingElement(long prime, long e, ZG num)
      : l(prime), denom_exp(e), numerator(std::move(num)) {
    normalize();
  }

  bool is_integral() const { return denom_exp == 0; }

  QG to_rational() const {
    Rat scale(1);
    scale /= Rat(pow_l(l, denom_exp));
    return annfit::to_rational(numerator) * scale;
  }

 private:
  void normalize() {
    if (l < 2) throw BadParameterError("fractional element needs a prime l");
    if (denom_exp < 0) {
      numerator = numerator * pow_l(l, -denom_exp);
      denom_exp = 0;
    }
    long v = min_l_valuation(numerator, l);
    if (v == kValuationInfinity) {
      denom_exp = 0;
      return;
    }
    long shift = std::min(v, denom_exp);
    if (shift > 0) {
      Int d = pow_l(l, shift);
      ZG reduced(numerator.group());
      for (long g = 0; g < numerator.group().order(); ++g)
        mpz_divexact(reduced.coeff(g).get_mpz_t(), numerator.coeff(g).get_mpz_t(),
                     d.get_mpz_t());
      numerator = reduced;
      denom_exp -= shift;
    }
  }
};

// Splits a rational element into l-power denominator form.  A coefficient
// denominator with a prime-to-l part throws NotIntegralError.
FractionalGroupRingElement to_fractional(const QG& x, long l);

}  // namespace annfit
