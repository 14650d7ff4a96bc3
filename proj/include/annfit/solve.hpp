#pragma once

#include <cstdint>
#include <optional>

#include "annfit/matrix.hpp"

namespace annfit {

// One rational solution of A X = B, or nullopt when inconsistent.  When the
// system is underdetermined the free variables are set to zero; pivot_seed
// shuffles the column elimination order, so different seeds can return
// different particular solutions (used to probe splitting independence).
std::optional<RatMatrix> solve_rational(const RatMatrix& a, const RatMatrix& b,
                                        std::uint64_t pivot_seed = 0);

// Solves A X = B over Q[G] by expanding to the |G|-fold scalar system in the
// coefficient unknowns.  Free components are seed-dependent as above.
std::optional<QGMatrix> equivariant_solve(const QGMatrix& a, const QGMatrix& b,
                                          const FiniteAbelianGroup& g,
                                          std::uint64_t pivot_seed = 0);

// Inverse in Q[G]; throws NotInvertibleError for zero divisors.
QG invert(const QG& x);

// True when x and its Q[G]-inverse both have l-integral coefficients, i.e.
// x is a unit of Z_l[G].  Throws NotInvertibleError when x is not a unit of
// Q[G] at all.
bool is_integral_unit(const QG& x, long l);

}  // namespace annfit
