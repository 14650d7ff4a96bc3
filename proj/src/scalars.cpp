#include "annfit/scalars.hpp"

#include "annfit/errors.hpp"

namespace annfit {

long l_valuation(const Int& x, long l) {
  if (x == 0) return kValuationInfinity;
  Int t = x;
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(l))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(l));
    ++v;
  }
  return v;
}

long l_valuation(const Rat& x, long l) {
  if (x == 0) return kValuationInfinity;
  return l_valuation(x.get_num(), l) - l_valuation(x.get_den(), l);
}

Int pow_l(long l, long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(l),
                static_cast<unsigned long>(e));
  return r;
}

Int pow_int(const Int& base, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Int mod_reduce(const Int& x, const Int& modulus) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int rational_mod_reduce(const Rat& x, long l, long n) {
  if (l_valuation(x, l) < 0)
    throw NotIntegralError("rational has l in its denominator");
  Int m = pow_l(l, n);
  Int num = mod_reduce(x.get_num(), m);
  Int den_inv = mod_inverse(mod_reduce(x.get_den(), m), m);
  return mod_reduce(num * den_inv, m);
}

Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw NotInvertibleError("element not invertible mod m");
  return r;
}

}  // namespace annfit
