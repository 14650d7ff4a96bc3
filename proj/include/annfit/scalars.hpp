#pragma once

#include <gmpxx.h>

#include <limits>

namespace annfit {

using Int = mpz_class;
using Rat = mpq_class;

// Valuation of 0 at any prime.
inline constexpr long kValuationInfinity = std::numeric_limits<long>::max();

long l_valuation(const Int& x, long l);
long l_valuation(const Rat& x, long l);

Int pow_l(long l, long e);               // l^e, e >= 0
Int pow_int(const Int& base, long e);    // base^e, e >= 0

// Canonical representative of x in [0, l^n).
Int mod_reduce(const Int& x, const Int& modulus);

// Reduces a rational with l-integral denominator mod l^n by inverting the
// prime-to-l denominator.  Throws NotIntegralError when v_l(x) < 0.
Int rational_mod_reduce(const Rat& x, long l, long n);

// Inverse of a mod m; throws NotInvertibleError when gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

}  // namespace annfit
