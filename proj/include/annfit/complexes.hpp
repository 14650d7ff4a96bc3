#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annfit/det_class.hpp"
#include "annfit/matrix.hpp"
#include "annfit/modules.hpp"

namespace annfit {

// Bounded chain complex 0 -> F_k -> ... -> F_1 -> F_0 -> 0 of free Z[G]
// modules.  differentials[i] is d_{i+1}: F_{i+1} -> F_i with matrix shape
// ranks[i] x ranks[i+1] acting on column vectors, so always
// differentials.size() + 1 == ranks.size().
struct PerfectComplex {
  FiniteAbelianGroup group;
  long l = 0;
  std::vector<long> ranks;
  std::vector<ZGMatrix> differentials;

  long top_degree() const { return static_cast<long>(ranks.size()) - 1; }
};

// d compose d = 0 and shape/group consistency; throws NotAComplexError or
// BadParameterError.
void check_complex_structure(const PerfectComplex& c);

struct ComplexDiagnostic {
  std::vector<Int> homology_orders;  // degrees 0..top
  bool concentrated = true;          // trivial outside degrees 0, 1
};

// Structural checks plus per-degree homology orders.  Infinite homology
// throws NotFiniteError, a non-l-power order NotLPowerError; strict mode
// additionally rejects homology outside degrees 0, 1 (NotConcentratedError).
ComplexDiagnostic validate_complex(const PerfectComplex& c,
                                   bool strict = false);

// H_i = ker(d_i)/im(d_{i+1}) with the induced G-action, through the expanded
// integer matrices: the kernel lattice basis gives coordinates, the image
// columns and generator translates are solved into those coordinates, and
// the quotient is put in cyclic canonical form.  Degrees outside [0, k]
// return the zero module.  Throws NotFiniteError / NotLPowerError.
ConcreteModule homology(const PerfectComplex& c, long degree);

struct HomologyReport {
  std::vector<ConcreteModule> h;  // degrees 0..top
  long m0 = 0;                    // min generators of H_0
  long m1 = 0;                    // min generators of the dual of H_1
};

HomologyReport homology_report(const PerfectComplex& c);

// Quasi-isomorphic three-term complex 0 -> B_1 -> F_1 -> F_0 -> 0 with B_1 a
// certified-free module mapping isomorphically onto im(d_2).  Requires
// homology concentrated in degrees 0, 1 (NotConcentratedError otherwise);
// TruncationError when no free basis of im(d_2) is certified.
PerfectComplex truncate(const PerfectComplex& c);

// Linear dual of a three-term truncated complex, reindexed as a chain
// complex: D_2 = dual(F_0), D_1 = dual(F_1), D_0 = dual(B_1) with the
// tau-transposed differentials; H_i of the output is the Pontryagin dual of
// the input's H_{1-i}.
PerfectComplex dualize(const PerfectComplex& c);

// The determinant class of the complex: truncate, solve a rational splitting
// eta with d_1 eta = id, and take the division-free determinant of
// Y = [eta | d_2]: (F_0 + B_1) tensor Q -> F_1 tensor Q.  The class does not
// depend on the splitting; pivot_seed only shuffles the solver's pivot order
// to exercise that independence.
DetClass det_class(const PerfectComplex& c, std::uint64_t pivot_seed = 0);

// Mapping cone input: a two-term base complex d: P_1 -> P_0 with integer
// group-ring entries and central twists u_1, u_0 acting on P_1, P_0.  The
// chain-map condition (u_0 - u_1) d = 0 and invertibility of 1 - u_i in Q[G]
// are enforced by generate_cone.
struct ConeSpec {
  FiniteAbelianGroup group;
  long l = 0;
  long b1 = 0, b0 = 0;
  ZGMatrix d;  // b0 x b1
  ZG u1, u0;
};

PerfectComplex generate_cone(const ConeSpec& spec);

// (1 - u_1)^{b_1} (1 - u_0)^{-b_0}, the class det_class must reproduce.
DetClass cone_expected_class(const ConeSpec& spec);

struct CheckRecord {
  long direction = 0;      // i in the statement: 0 or 1
  long generator = 0;      // index into the Howell generator lifts
  long exponent = 0;       // m_i
  std::string target;      // "ann" or "fitting"
  bool integral = false;   // product is l-integral
  bool contained = false;  // product lies in the target ideal
  bool pass() const { return integral && contained; }
};

struct VerificationReport {
  DetClass det;
  HomologyReport homology;
  std::vector<CheckRecord> checks;
  bool fitting_checked = false;          // Sylow-l of G cyclic
  std::optional<bool> chain_verdict;     // set when m1 == 1
  bool pass = true;
};

// For every Howell generator t_0 of ann(H_0): det * t_0^{m_0} is l-integral
// and lies in ann(H_1); symmetrically det^{-1} * t_1^{m_1} in ann(H_0).
// With a cyclic Sylow-l subgroup the same products are also tested against
// the Fitting ideals, and when m_1 = 1 the two-step chain
// {t^{m_0}} in det^{-1} ann(H_1) in ann(H_0) is recorded as a verdict.
VerificationReport verify_annihilator_theorem(const PerfectComplex& c,
                                              long precision = 0,
                                              long guard = kDefaultGuard,
                                              std::uint64_t pivot_seed = 0);

struct AugmentationWitnessReport {
  long fitting_valuation = 0;       // augmentation image of F(M)
  long dual_fitting_valuation = 0;  // augmentation image of F(M^#)
  bool ann_duality_ok = false;      // ann(M^#) = tau(ann(M))
};

// The square-vs-first-power witness: G = C_l x C_l, M = kernel of the mod-l
// augmentation.  The augmentation image of F(M) has valuation 2 while the
// dual (a cyclic module) gives valuation 1, so Fitting ideals of M and M^#
// genuinely differ even though the annihilators are tau-exchanged.
AugmentationWitnessReport augmentation_kernel_witness(long l,
                                                      long guard = kDefaultGuard);

}  // namespace annfit
