#pragma once

#include <random>

#include "annfit/complexes.hpp"
#include "annfit/modules.hpp"

namespace annfit {

// Instance generators for the verification suites.  All draws come from the
// caller-owned engine, so one seed fixes the whole corpus.  Every returned
// instance satisfies the preconditions of the checks it feeds: cones have
// finite l-power homology concentrated in degrees 0 and 1, presented modules
// realize to finite l-power modules of order at most l^max_exp.

// Mapping-cone spec over g with base ranks b_0 + b_1 <= 3.  Twist families:
// shared or independent 1 -+ l^k h, and rejection-sampled general twists
// whose expanded determinant is an l-power (shared twists may carry a
// nonzero base differential; independent twists force d = 0).
ConeSpec random_cone_spec(const FiniteAbelianGroup& g, long l,
                          std::mt19937_64& rng);

// Direct sum of cyclic blocks Z[G]/(l^{a_j}, g_t - c_{t,j}) with unit
// residues c, followed by row mixes that keep the relation lattice.  The sum
// of the a_j is at most max_exp.
PresentedModule random_presented_module(const FiniteAbelianGroup& g, long l,
                                        long max_exp, std::mt19937_64& rng);

// Same module, different presentation: group-ring row mixes plus appended
// redundant rows (random combinations of existing ones).
PresentedModule reshuffled_presentation(const PresentedModule& pm,
                                        std::mt19937_64& rng);

// One extra relation row, presenting a quotient of pm's module.
PresentedModule quotient_presentation(const PresentedModule& pm,
                                      std::mt19937_64& rng);

}  // namespace annfit
