#include "annfit/group_ring.hpp"

namespace annfit {

FractionalGroupRingElement to_fractional(const QG& x, long l) {
  long e = 0;
  for (const Rat& c : x.coeffs()) {
    Int den = c.get_den();
    long v = l_valuation(den, l);
    Int rest = den / pow_l(l, v);
    if (rest != 1)
      throw NotIntegralError("coefficient denominator is not a power of l");
    if (v > e) e = v;
  }
  Int scale = pow_l(l, e);
  ZG num(x.group());
  for (long g = 0; g < x.group().order(); ++g) {
    Rat scaled = x.coeff(g) * Rat(scale);
    if (scaled.get_den() != 1)
      throw InternalCheckError("fractional normalization failed");
    num.coeff(g) = scaled.get_num();
  }
  return FractionalGroupRingElement(l, e, std::move(num));
}

}  // namespace annfit
