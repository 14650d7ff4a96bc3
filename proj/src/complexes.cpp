#include "annfit/complexes.hpp"

#include <algorithm>

#include "annfit/determinant.hpp"
#include "annfit/errors.hpp"
#include "annfit/snf.hpp"
#include "annfit/solve.hpp"

namespace annfit {
namespace {

// Permutation matrix of multiplication by the t-th group generator on the
// flat coordinates (j, g) = j * |G| + g of Z[G]^rank.
IntMatrix generator_permutation(const FiniteAbelianGroup& g, long rank,
                                std::size_t t) {
  long ord = g.order();
  long n = rank * ord;
  IntMatrix p(n, n, Int(0));
  long gen = g.generator(t);
  for (long j = 0; j < rank; ++j)
    for (long gg = 0; gg < ord; ++gg)
      p.at(j * ord + g.mul(gen, gg), j * ord + gg) = 1;
  return p;
}

ZGMatrix scalar_diagonal(const FiniteAbelianGroup& g, long n, const ZG& x) {
  ZGMatrix m = zero_gr_matrix<Int>(g, n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = x;
  return m;
}

// Solve K X = B for integral X when K has full column rank (kernel bases
// always do), via rational elimination; the unique rational solution is
// integral exactly when an integer solution exists.  Avoids transform
// bookkeeping that can swell on redundant systems.
std::optional<IntMatrix> unique_integer_solve(const IntMatrix& k,
                                              const IntMatrix& b) {
  RatMatrix ka(k.rows(), k.cols(), Rat(0));
  for (long i = 0; i < k.rows(); ++i)
    for (long j = 0; j < k.cols(); ++j) ka.at(i, j) = Rat(k.at(i, j));
  RatMatrix bb(b.rows(), b.cols(), Rat(0));
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) bb.at(i, j) = Rat(b.at(i, j));
  auto sol = solve_rational(ka, bb, 0);
  if (!sol) return std::nullopt;
  IntMatrix out(k.cols(), b.cols(), Int(0));
  for (long i = 0; i < out.rows(); ++i)
    for (long j = 0; j < out.cols(); ++j) {
      const Rat& v = sol->at(i, j);
      if (v.get_den() != 1) return std::nullopt;
      out.at(i, j) = v.get_num();
    }
  return out;
}

}  // namespace

void check_complex_structure(const PerfectComplex& c) {
  if (c.l < 2) throw BadParameterError("complex needs a prime l");
  if (c.ranks.empty()) throw BadParameterError("complex needs at least one term");
  for (long r : c.ranks)
    if (r < 0) throw BadParameterError("negative rank");
  if (c.differentials.size() + 1 != c.ranks.size())
    throw BadParameterError("differential count does not match term count");
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    const ZGMatrix& d = c.differentials[i];
    if (d.rows() != c.ranks[i] || d.cols() != c.ranks[i + 1])
      throw BadParameterError("differential shape mismatch");
    for (long r = 0; r < d.rows(); ++r)
      for (long cc = 0; cc < d.cols(); ++cc)
        if (d.at(r, cc).group() != c.group)
          throw BadParameterError("differential entry over a different group");
  }
  ZG zero(c.group);
  for (std::size_t i = 0; i + 1 < c.differentials.size(); ++i) {
    ZGMatrix prod =
        gr_matmul(c.differentials[i], c.differentials[i + 1], c.group);
    for (long r = 0; r < prod.rows(); ++r)
      for (long cc = 0; cc < prod.cols(); ++cc)
        if (prod.at(r, cc) != zero)
          throw NotAComplexError("d compose d is nonzero");
  }
}

ComplexDiagnostic validate_complex(const PerfectComplex& c, bool strict) {
  check_complex_structure(c);
  ComplexDiagnostic diag;
  for (long i = 0; i <= c.top_degree(); ++i) {
    ConcreteModule h = homology(c, i);
    diag.homology_orders.push_back(h.order());
    if (i >= 2 && !h.is_trivial()) diag.concentrated = false;
  }
  if (strict && !diag.concentrated)
    throw NotConcentratedError("homology present above degree 1");
  return diag;
}

ConcreteModule homology(const PerfectComplex& c, long degree) {
  check_complex_structure(c);
  long top = c.top_degree();
  if (degree < 0 || degree > top) return ConcreteModule::trivial(c.group, c.l);
  long ord = c.group.order();
  long n = c.ranks[degree] * ord;

  // Kernel coordinates: columns of K are a basis of ker(expanded d_degree),
  // the whole space when degree = 0.
  IntMatrix kbasis = IntMatrix::identity(n, Int(0), Int(1));
  if (degree > 0)
    kbasis = integer_kernel(expand(c.differentials[degree - 1], c.group));
  long dk = kbasis.cols();

  // Relations: image columns of d_{degree+1} written in kernel coordinates.
  IntMatrix rel(dk, 0, Int(0));
  if (degree < top) {
    IntMatrix img = expand(c.differentials[degree], c.group);
    auto sol = unique_integer_solve(kbasis, img);
    if (!sol)
      throw InternalCheckError("image does not lie in the kernel lattice");
    rel = std::move(*sol);
  }

  // Induced generator actions on kernel coordinates.
  std::vector<IntMatrix> actions;
  for (std::size_t t = 0; t < c.group.rank(); ++t) {
    IntMatrix moved =
        matmul(generator_permutation(c.group, c.ranks[degree], t), kbasis,
               Int(0));
    auto sol = unique_integer_solve(kbasis, moved);
    if (!sol)
      throw InternalCheckError("group action does not preserve the kernel");
    actions.push_back(std::move(*sol));
  }
  return quotient_module(c.group, c.l, dk, rel, actions);
}

HomologyReport homology_report(const PerfectComplex& c) {
  HomologyReport r;
  long top = std::max<long>(c.top_degree(), 1);
  for (long i = 0; i <= top; ++i) r.h.push_back(homology(c, i));
  r.m0 = min_generators(r.h[0]);
  r.m1 = min_generators(pontryagin_dual(r.h[1]));
  return r;
}

PerfectComplex truncate(const PerfectComplex& c) {
  check_complex_structure(c);
  long top = c.top_degree();
  for (long i = 2; i <= top; ++i) {
    bool vanishes;
    try {
      vanishes = homology(c, i).is_trivial();
    } catch (const NotFiniteError&) {
      vanishes = false;
    }
    if (!vanishes)
      throw NotConcentratedError("homology present above degree 1");
  }
  homology(c, 0);  // finiteness gates (NotFinite / NotLPower)
  if (top >= 1) homology(c, 1);

  if (top <= 1) {
    PerfectComplex out = c;
    if (top == 0) {
      out.ranks = {c.ranks[0], 0, 0};
      out.differentials = {zero_gr_matrix<Int>(c.group, c.ranks[0], 0),
                           zero_gr_matrix<Int>(c.group, 0, 0)};
    } else {
      out.ranks.push_back(0);
      out.differentials.push_back(zero_gr_matrix<Int>(c.group, c.ranks[1], 0));
    }
    return out;
  }
  if (top == 2) return c;  // exactness at degree 2 already certified above

  // B_1 = im(d_2) must be exhibited as a free module: search column subsets
  // of d_2 whose G-translates span the same lattice as all of im(d_2) with
  // full rank (a surjection between free modules of equal rank over the
  // commutative ring Z[G] is an isomorphism, so such a subset is a basis).
  const ZGMatrix& d2 = c.differentials[1];
  long ord = c.group.order();
  IntMatrix full = expand(d2, c.group);
  long rank_full = integer_rank(full);
  if (rank_full % ord != 0)
    throw TruncationError("boundary module rank is not a multiple of |G|");
  long s = rank_full / ord;
  std::vector<long> cols(s);
  for (long i = 0; i < s; ++i) cols[i] = i;
  auto advance = [&](std::vector<long>& idx, long limit) {
    for (long i = s - 1; i >= 0; --i) {
      if (idx[i] < limit - (s - i)) {
        ++idx[i];
        for (long j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  if (s > d2.cols()) throw TruncationError("no free basis among the columns");
  do {
    ZGMatrix sub = zero_gr_matrix<Int>(c.group, d2.rows(), s);
    for (long j = 0; j < s; ++j)
      for (long i = 0; i < d2.rows(); ++i) sub.at(i, j) = d2.at(i, cols[j]);
    IntMatrix esub = expand(sub, c.group);
    if (integer_rank(esub) != s * ord) continue;
    if (!lattices_equal(esub, full)) continue;
    PerfectComplex out;
    out.group = c.group;
    out.l = c.l;
    out.ranks = {c.ranks[0], c.ranks[1], s};
    out.differentials = {c.differentials[0], sub};
    return out;
  } while (advance(cols, d2.cols()));
  throw TruncationError("no free basis among the columns of d_2");
}

PerfectComplex dualize(const PerfectComplex& c) {
  check_complex_structure(c);
  if (c.ranks.size() != 3)
    throw BadParameterError("dualize expects a three-term complex");
  PerfectComplex out;
  out.group = c.group;
  out.l = c.l;
  out.ranks = {c.ranks[2], c.ranks[1], c.ranks[0]};
  out.differentials = {tau_transpose(c.differentials[1], c.group),
                       tau_transpose(c.differentials[0], c.group)};
  return out;
}

DetClass det_class(const PerfectComplex& c, std::uint64_t pivot_seed) {
  PerfectComplex t = truncate(c);
  long r0 = t.ranks[0], r1 = t.ranks[1], b1 = t.ranks[2];
  if (r1 != r0 + b1)
    throw InternalCheckError("truncated complex ranks are not additive");
  QGMatrix d1 = to_rational(t.differentials[0], t.group);
  auto eta = equivariant_solve(d1, identity_gr_matrix<Rat>(t.group, r0),
                               t.group, pivot_seed);
  if (!eta)
    throw InternalCheckError("splitting system inconsistent on valid input");
  QGMatrix d2 = to_rational(t.differentials[1], t.group);
  QGMatrix y = zero_gr_matrix<Rat>(t.group, r1, r1);
  for (long i = 0; i < r1; ++i) {
    for (long j = 0; j < r0; ++j) y.at(i, j) = eta->at(i, j);
    for (long j = 0; j < b1; ++j) y.at(i, r0 + j) = d2.at(i, j);
  }
  return DetClass(c.l, det_division_free(y, t.group));
}

PerfectComplex generate_cone(const ConeSpec& spec) {
  const FiniteAbelianGroup& g = spec.group;
  if (spec.b1 < 0 || spec.b0 < 0 || spec.l < 2)
    throw BadParameterError("cone spec shape invalid");
  if (spec.d.rows() != spec.b0 || spec.d.cols() != spec.b1)
    throw BadParameterError("cone base differential shape mismatch");
  if (spec.u1.group() != g || spec.u0.group() != g)
    throw BadParameterError("cone twist group mismatch");
  ZG one = ZG::scalar(g, Int(1));
  ZG w1 = one - spec.u1, w0 = one - spec.u0;
  invert(to_rational(w1));  // NotInvertibleError when 1 - u is a zero divisor
  invert(to_rational(w0));
  ZG chain = (spec.u0 - spec.u1);
  for (long i = 0; i < spec.d.rows(); ++i)
    for (long j = 0; j < spec.d.cols(); ++j)
      if (chain * spec.d.at(i, j) != ZG(g))
        throw BadParameterError("twists do not commute with the differential");

  PerfectComplex out;
  out.group = g;
  out.l = spec.l;
  out.ranks = {spec.b0, spec.b0 + spec.b1, spec.b1};
  // d_1 = [(1-u_0) I | d], d_2 = [-d ; (1-u_1) I] on F_1 = P_0 + P_1.
  ZGMatrix d1 = zero_gr_matrix<Int>(g, spec.b0, spec.b0 + spec.b1);
  for (long i = 0; i < spec.b0; ++i) d1.at(i, i) = w0;
  for (long i = 0; i < spec.b0; ++i)
    for (long j = 0; j < spec.b1; ++j) d1.at(i, spec.b0 + j) = spec.d.at(i, j);
  ZGMatrix d2 = zero_gr_matrix<Int>(g, spec.b0 + spec.b1, spec.b1);
  for (long i = 0; i < spec.b0; ++i)
    for (long j = 0; j < spec.b1; ++j) d2.at(i, j) = ZG(g) - spec.d.at(i, j);
  for (long j = 0; j < spec.b1; ++j) d2.at(spec.b0 + j, j) = w1;
  out.differentials = {std::move(d1), std::move(d2)};
  check_complex_structure(out);
  return out;
}

DetClass cone_expected_class(const ConeSpec& spec) {
  ZG one = ZG::scalar(spec.group, Int(1));
  QG w1 = to_rational(one - spec.u1);
  QG w0inv = invert(to_rational(one - spec.u0));
  QG rep = QG::scalar(spec.group, Rat(1));
  for (long i = 0; i < spec.b1; ++i) rep = rep * w1;
  for (long i = 0; i < spec.b0; ++i) rep = rep * w0inv;
  return DetClass(spec.l, rep);
}

VerificationReport verify_annihilator_theorem(const PerfectComplex& c,
                                              long precision, long guard,
                                              std::uint64_t pivot_seed) {
  for (long i = 2; i <= c.top_degree(); ++i)
    if (!homology(c, i).is_trivial())
      throw NotConcentratedError("homology present above degree 1");
  HomologyReport hr = homology_report(c);
  const ConcreteModule& h0 = hr.h[0];
  const ConcreteModule& h1 = hr.h[1];
  long emax = std::max(h0.exponent_max(), h1.exponent_max());
  long n = precision > 0 ? precision : emax + guard;

  VerificationReport report{det_class(c, pivot_seed), hr};
  IdealHandle ann0 = annihilator(h0, n, guard);
  IdealHandle ann1 = annihilator(h1, n, guard);
  std::optional<IdealHandle> fit0, fit1;
  report.fitting_checked = c.group.sylow_cyclic(c.l);
  if (report.fitting_checked) {
    fit0 = fitting_of_module(h0, n, guard);
    fit1 = fitting_of_module(h1, n, guard);
  }

  auto run_direction = [&](long dir, const QG& detpart, const IdealHandle& src,
                           long m, const IdealHandle& tgt_ann,
                           const std::optional<IdealHandle>& tgt_fit) {
    std::vector<ZG> lifts = src.howell_generator_lifts();
    for (std::size_t idx = 0; idx < lifts.size(); ++idx) {
      ZG power = ZG::scalar(c.group, Int(1));
      for (long e = 0; e < m; ++e) power = power * lifts[idx];
      QG prod = detpart * to_rational(power);
      bool integral = min_l_valuation(prod, c.l) >= 0;
      CheckRecord rec{dir, static_cast<long>(idx), m, "ann", integral,
                      integral && tgt_ann.contains(prod)};
      report.checks.push_back(rec);
      if (tgt_fit) {
        CheckRecord frec{dir, static_cast<long>(idx), m, "fitting", integral,
                         integral && tgt_fit->contains(prod)};
        report.checks.push_back(frec);
      }
    }
  };
  run_direction(0, report.det.rep(), ann0, hr.m0, ann1, fit1);
  run_direction(1, report.det.rep_inverse(), ann1, hr.m1, ann0, fit0);

  if (hr.m1 == 1) {
    bool chain = true;
    for (const CheckRecord& r : report.checks)
      if (r.target == "ann" && !r.pass()) chain = false;
    report.chain_verdict = chain;
  }
  for (const CheckRecord& r : report.checks)
    if (!r.pass()) report.pass = false;
  return report;
}

AugmentationWitnessReport augmentation_kernel_witness(long l, long guard) {
  FiniteAbelianGroup g({l, l});
  long ord = g.order();
  long k = ord - 1;  // basis e_h - e_1 over h != identity; h has index h >= 1
  std::vector<IntMatrix> actions;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    long gen = g.generator(t);
    IntMatrix a(k, k, Int(0));
    for (long j = 1; j < ord; ++j) {
      // g_t (e_j - e_1) = (e_{g_t j} - e_1) - (e_{g_t} - e_1)
      long moved = g.mul(gen, j);
      if (moved != 0) a.at(moved - 1, j - 1) += 1;
      a.at(gen - 1, j - 1) -= 1;
    }
    actions.push_back(std::move(a));
  }
  ConcreteModule m(g, l, std::vector<long>(k, 1), std::move(actions));
  ConcreteModule md = pontryagin_dual(m);
  long n = 1 + guard;

  auto aug_valuation = [&](const IdealHandle& ideal) {
    long best = kValuationInfinity;
    for (const ZG& gen : ideal.generators())
      best = std::min(best, l_valuation(gen.augmentation(), l));
    return best;
  };
  AugmentationWitnessReport r;
  r.fitting_valuation = aug_valuation(fitting_of_module(m, n, guard));
  r.dual_fitting_valuation = aug_valuation(fitting_of_module(md, n, guard));
  r.ann_duality_ok = annihilator(md, n, guard).equals(annihilator(m, n, guard).tau());
  return r;
}

}  // namespace annfit
