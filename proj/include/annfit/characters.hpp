#pragma once

#include <vector>

#include "annfit/group_ring.hpp"

namespace annfit {

// Character chi of G with chi(g_i) = zeta_e^{exps[i]}, e = exponent(G).
// Validity: (e / d_i) | exps[i] so that chi(g_i)^{d_i} = 1.
struct CharacterSpec {
  std::vector<long> exps;
};

// Element of Q[x]/(x^e - 1).  Character values land here; working modulo
// x^e - 1 avoids factoring cyclotomics while still separating characters.
class CyclotomicValue {
 public:
  explicit CyclotomicValue(long e) : coeffs_(e) {
    if (e < 1) throw BadParameterError("cyclotomic modulus must have e >= 1");
  }
  CyclotomicValue(long e, std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != e)
      throw BadParameterError("cyclotomic coefficient length mismatch");
  }

  long modulus_degree() const { return static_cast<long>(coeffs_.size()); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat& coeff(long i) { return coeffs_.at(i); }
  const Rat& coeff(long i) const { return coeffs_.at(i); }

  bool is_zero() const {
    for (const Rat& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  CyclotomicValue operator+(const CyclotomicValue& o) const;
  CyclotomicValue operator-(const CyclotomicValue& o) const;
  CyclotomicValue operator*(const CyclotomicValue& o) const;
  bool operator==(const CyclotomicValue& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const CyclotomicValue& o) const { return !(*this == o); }

 private:
  std::vector<Rat> coeffs_;
};

void validate_character(const FiniteAbelianGroup& g, const CharacterSpec& chi);
std::vector<CharacterSpec> all_characters(const FiniteAbelianGroup& g);

// chi applied to a group element, as the exponent k with chi(g) = zeta_e^k.
long character_exponent(const FiniteAbelianGroup& g, const CharacterSpec& chi,
                        long element);

// Sum_g c_g x^{k(g)} in Q[x]/(x^e - 1).
CyclotomicValue evaluate_character(const QG& x, const CharacterSpec& chi);

// chi(-1 coset): +1 / -1 for the element acting as inversion, i.e. chi
// evaluated at the given element, which must square to the identity.
int character_sign_at(const FiniteAbelianGroup& g, const CharacterSpec& chi,
                      long element);

}  // namespace annfit
