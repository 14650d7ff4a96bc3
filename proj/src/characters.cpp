#include "annfit/characters.hpp"

namespace annfit {

CyclotomicValue CyclotomicValue::operator+(const CyclotomicValue& o) const {
  if (coeffs_.size() != o.coeffs_.size())
    throw BadParameterError("cyclotomic degree mismatch");
  CyclotomicValue r(modulus_degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return r;
}

CyclotomicValue CyclotomicValue::operator-(const CyclotomicValue& o) const {
  if (coeffs_.size() != o.coeffs_.size())
    throw BadParameterError("cyclotomic degree mismatch");
  CyclotomicValue r(modulus_degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return r;
}

CyclotomicValue CyclotomicValue::operator*(const CyclotomicValue& o) const {
  if (coeffs_.size() != o.coeffs_.size())
    throw BadParameterError("cyclotomic degree mismatch");
  long e = modulus_degree();
  CyclotomicValue r(e);
  for (long i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    for (long j = 0; j < e; ++j) {
      if (o.coeffs_[j] == 0) continue;
      r.coeffs_[(i + j) % e] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return r;
}

void validate_character(const FiniteAbelianGroup& g, const CharacterSpec& chi) {
  const auto& d = g.invariant_factors();
  if (chi.exps.size() != d.size())
    throw BadParameterError("character exponent tuple has wrong length");
  long e = g.exponent();
  for (std::size_t i = 0; i < d.size(); ++i) {
    long step = e / d[i];
    long k = chi.exps[i] % e;
    if (k < 0) k += e;
    if (k % step != 0)
      throw BadParameterError("character exponent not a multiple of e/d_i");
  }
}

std::vector<CharacterSpec> all_characters(const FiniteAbelianGroup& g) {
  const auto& d = g.invariant_factors();
  long e = g.exponent();
  std::vector<CharacterSpec> out;
  std::vector<long> cur(d.size(), 0);
  long total = g.order();
  for (long idx = 0; idx < total; ++idx) {
    long t = idx;
    for (std::size_t i = 0; i < d.size(); ++i) {
      long pick = t % d[i];
      t /= d[i];
      cur[i] = pick * (e / d[i]);
    }
    out.push_back(CharacterSpec{cur});
  }
  return out;
}

long character_exponent(const FiniteAbelianGroup& g, const CharacterSpec& chi,
                        long element) {
  long e = g.exponent();
  auto exps = g.exps_of(element);
  long k = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    long ki = chi.exps[i] % e;
    if (ki < 0) ki += e;
    k = (k + exps[i] % e * ki) % e;
  }
  return k;
}

CyclotomicValue evaluate_character(const QG& x, const CharacterSpec& chi) {
  const FiniteAbelianGroup& g = x.group();
  validate_character(g, chi);
  CyclotomicValue v(g.exponent());
  for (long el = 0; el < g.order(); ++el)
    v.coeff(character_exponent(g, chi, el)) += x.coeff(el);
  return v;
}

int character_sign_at(const FiniteAbelianGroup& g, const CharacterSpec& chi,
                      long element) {
  if (g.mul(element, element) != g.identity())
    throw BadParameterError("sign element must be an involution");
  long k = character_exponent(g, chi, element);
  if (k == 0) return 1;
  if (2 * k == g.exponent()) return -1;
  throw BadParameterError("character value at involution is not a sign");
}

}  // namespace annfit
