#pragma once

#include <optional>
#include <vector>

#include "annfit/matrix.hpp"

namespace annfit {

// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ... >= 0.
// The inverses are maintained alongside; quotient constructions need U^{-1}
// to transport group actions into diagonal coordinates.
struct SmithDecomposition {
  IntMatrix u, s, v;
  IntMatrix u_inv, v_inv;
  long rank = 0;  // number of nonzero diagonal entries
  std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Adapted basis for the column lattice L of A when L has full rank in Z^rows:
// U unimodular with U L = diag_1 Z e_1 + ... + diag_n Z e_n, diag_1 | diag_2
// | ... Column transforms are not tracked, which permits mod-determinant
// entry reduction and keeps intermediate sizes Hadamard-bounded; this is the
// routine to use for quotient computations on matrices with many redundant
// columns. full_rank is false when the quotient would be infinite.
struct LatticeQuotient {
  std::vector<Int> diag;
  IntMatrix u, u_inv;
  bool full_rank = false;
};

// With known_exponent e nonzero, the quotient taken is by the column lattice
// plus e Z^rows, no rank probe needed; when e Z^rows already lies inside the
// column lattice that is the plain column-lattice quotient with e replacing
// the Bareiss determinant as reduction modulus (smaller is faster).
LatticeQuotient lattice_quotient(const IntMatrix& a, Int known_exponent = Int());

// Rank over Q by fraction-free elimination; every intermediate entry is a
// minor of the input, so this never swells the way transform-tracking can.
long integer_rank(const IntMatrix& a);

// Basis of {x : A x = 0} as columns; always a basis of the saturated kernel
// lattice (a direct summand of Z^cols).
IntMatrix integer_kernel(const IntMatrix& a);

// One integer solution of A x = b, if any.
std::optional<IntMatrix> integer_solve(const IntMatrix& a, const IntMatrix& b);

// Membership of v in the lattice spanned by the columns of L.
bool lattice_contains(const IntMatrix& l, const std::vector<Int>& v);

// Equality of the column-span lattices (mutual membership of generators).
bool lattices_equal(const IntMatrix& a, const IntMatrix& b);

}  // namespace annfit
