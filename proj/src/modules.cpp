#include "annfit/modules.hpp"

#include <algorithm>
#include <cmath>

#include "annfit/determinant.hpp"
#include "annfit/errors.hpp"
#include "annfit/snf.hpp"

namespace annfit {

ConcreteModule::ConcreteModule(FiniteAbelianGroup g, long l,
                               std::vector<long> factor_exps,
                               std::vector<IntMatrix> generator_actions)
    : group_(std::move(g)), l_(l), factors_(std::move(factor_exps)),
      actions_(std::move(generator_actions)) {
  for (auto& a : actions_) a = canonical(std::move(a));
  validate();
}

ConcreteModule ConcreteModule::trivial(FiniteAbelianGroup g, long l) {
  std::vector<IntMatrix> actions(g.rank(), IntMatrix(0, 0));
  return ConcreteModule(std::move(g), l, {}, std::move(actions));
}

Int ConcreteModule::order() const {
  long s = 0;
  for (long e : factors_) s += e;
  return pow_l(l_, s);
}

IntMatrix ConcreteModule::canonical(IntMatrix m) const {
  for (long i = 0; i < m.rows(); ++i) {
    Int mod = pow_l(l_, factors_[i]);
    for (long j = 0; j < m.cols(); ++j) m.at(i, j) = mod_reduce(m.at(i, j), mod);
  }
  return m;
}

IntMatrix ConcreteModule::compose(const IntMatrix& a, const IntMatrix& b) const {
  return canonical(matmul(a, b, Int(0)));
}

IntMatrix ConcreteModule::identity_action() const {
  return IntMatrix::identity(factor_count(), Int(0), Int(1));
}

IntMatrix ConcreteModule::action_of_element(long element) const {
  auto exps = group_.exps_of(element);
  IntMatrix r = identity_action();
  for (std::size_t t = 0; t < exps.size(); ++t) {
    IntMatrix p = actions_[t];
    long e = exps[t];
    while (e) {
      if (e & 1) r = compose(r, p);
      e >>= 1;
      if (e) p = compose(p, p);
    }
  }
  return r;
}

const std::vector<IntMatrix>& ConcreteModule::element_actions() const {
  if (element_actions_.empty() && group_.order() > 0) {
    element_actions_.reserve(group_.order());
    for (long el = 0; el < group_.order(); ++el)
      element_actions_.push_back(action_of_element(el));
  }
  return element_actions_;
}

IntMatrix ConcreteModule::action_of(const ZG& r) const {
  if (r.group() != group_) throw BadParameterError("module/element group mismatch");
  IntMatrix sum(factor_count(), factor_count(), Int(0));
  const auto& acts = element_actions();
  for (long el = 0; el < group_.order(); ++el) {
    if (r.coeff(el) == 0) continue;
    for (long i = 0; i < factor_count(); ++i)
      for (long j = 0; j < factor_count(); ++j)
        sum.at(i, j) += r.coeff(el) * acts[el].at(i, j);
  }
  return canonical(std::move(sum));
}

bool ConcreteModule::annihilated_by(const ZG& r) const {
  IntMatrix a = action_of(r);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) return false;
  return true;
}

void ConcreteModule::validate() const {
  if (l_ < 2) throw BadParameterError("module needs a prime l");
  long k = factor_count();
  for (long i = 0; i < k; ++i) {
    if (factors_[i] < 1) throw BadParameterError("factor exponent must be >= 1");
    if (i && factors_[i] < factors_[i - 1])
      throw BadParameterError("factor exponents must be ascending");
  }
  if (actions_.size() != group_.rank())
    throw BadParameterError("one action matrix per group generator required");
  for (const auto& a : actions_)
    if (a.rows() != k || a.cols() != k)
      throw BadParameterError("action matrix shape mismatch");
  // Compatibility: entry (i, j) maps Z/l^{e_j} into Z/l^{e_i}.
  for (const auto& a : actions_)
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j)
        if (factors_[i] > factors_[j]) {
          Int need = pow_l(l_, factors_[i] - factors_[j]);
          if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), need.get_mpz_t()))
            throw BadParameterError("action entry violates factor compatibility");
        }
  for (std::size_t s = 0; s < actions_.size(); ++s)
    for (std::size_t t = s + 1; t < actions_.size(); ++t)
      if (compose(actions_[s], actions_[t]) != compose(actions_[t], actions_[s]))
        throw BadParameterError("action matrices must commute");
  const auto& d = group_.invariant_factors();
  for (std::size_t t = 0; t < actions_.size(); ++t) {
    IntMatrix p = identity_action();
    for (long e = 0; e < d[t]; ++e) p = compose(p, actions_[t]);
    if (p != identity_action())
      throw BadParameterError("action order does not divide the generator order");
  }
}

ConcreteModule quotient_module(const FiniteAbelianGroup& g, long l, long n,
                               const IntMatrix& relations,
                               const std::vector<IntMatrix>& ambient_actions) {
  if (n == 0) return ConcreteModule::trivial(g, l);
  if (relations.rows() != n) throw BadParameterError("relation height mismatch");
  LatticeQuotient d = lattice_quotient(relations);
  if (!d.full_rank) throw NotFiniteError("quotient has free rank > 0");
  std::vector<long> exps;
  std::vector<long> torsion_rows;
  for (long i = 0; i < n; ++i) {
    const Int& s = d.diag[i];
    if (s == 1) continue;
    long v = l_valuation(s, l);
    if (pow_l(l, v) != s)
      throw NotLPowerError("quotient has torsion away from l");
    exps.push_back(v);
    torsion_rows.push_back(i);
  }
  long k = static_cast<long>(exps.size());
  std::vector<IntMatrix> actions;
  for (const IntMatrix& m : ambient_actions) {
    IntMatrix c = matmul(matmul(d.u, m, Int(0)), d.u_inv, Int(0));
    IntMatrix b(k, k, Int(0));
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j)
        b.at(i, j) = c.at(torsion_rows[i], torsion_rows[j]);
    actions.push_back(std::move(b));
  }
  return ConcreteModule(g, l, std::move(exps), std::move(actions));
}

ConcreteModule realize(const PresentedModule& pm) {
  const FiniteAbelianGroup& g = pm.group;
  long ord = g.order();
  long a = pm.relations.rows(), b = pm.relations.cols();
  long n = b * ord;
  // Relations expand to their G-orbit: column (i, h) is the relation h * r_i
  // in the flat coordinates (generator j, group element gg) = j * ord + gg.
  IntMatrix rel(n, a * ord, Int(0));
  for (long i = 0; i < a; ++i)
    for (long h = 0; h < ord; ++h) {
      long hinv = g.inverse(h);
      for (long j = 0; j < b; ++j)
        for (long gg = 0; gg < ord; ++gg)
          rel.at(j * ord + gg, i * ord + h) =
              pm.relations.at(i, j).coeff(g.mul(hinv, gg));
    }
  std::vector<IntMatrix> actions;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    IntMatrix p(n, n, Int(0));
    long gen = g.generator(t);
    for (long j = 0; j < b; ++j)
      for (long gg = 0; gg < ord; ++gg)
        p.at(j * ord + g.mul(gen, gg), j * ord + gg) = 1;
    actions.push_back(std::move(p));
  }
  return quotient_module(g, pm.l, n, rel, actions);
}

IdealHandle::IdealHandle(FiniteAbelianGroup g, long l, long precision,
                         std::vector<ZG> gens, long guard)
    : group_(std::move(g)), l_(l), precision_(precision), guard_(guard),
      generators_(std::move(gens)) {
  if (l_ < 2) throw BadParameterError("ideal needs a prime l");
  if (precision_ < 1 || guard_ < 0)
    throw BadParameterError("ideal precision must be >= 1, guard >= 0");
  long ord = group_.order();
  std::vector<std::vector<Int>> rows;
  for (const ZG& s : generators_) {
    if (s.group() != group_) throw BadParameterError("generator group mismatch");
    for (long el = 0; el < ord; ++el) {
      ZG shifted = ZG::basis(group_, el) * s;
      rows.push_back(shifted.coeffs());
    }
  }
  basis_ = howell_form(rows, l_, precision_, ord);
  check_basis_ = howell_form(std::move(rows), l_, precision_ + guard_, ord);
}

std::vector<ZG> IdealHandle::howell_generator_lifts() const {
  std::vector<ZG> out;
  for (const auto& row : basis_.rows) out.emplace_back(group_, row);
  return out;
}

bool IdealHandle::contains(const ZG& x) const {
  if (x.group() != group_) throw BadParameterError("membership group mismatch");
  bool primary = residue_membership(basis_, x.coeffs());
  bool check = residue_membership(check_basis_, x.coeffs());
  if (primary != check)
    throw InternalCheckError(
        "ideal membership differs between working and guard precision");
  return primary;
}

bool IdealHandle::contains(const QG& x) const {
  if (x.group() != group_) throw BadParameterError("membership group mismatch");
  std::vector<Int> v, vc;
  for (const Rat& c : x.coeffs()) {
    v.push_back(rational_mod_reduce(c, l_, precision_));
    vc.push_back(rational_mod_reduce(c, l_, precision_ + guard_));
  }
  bool primary = residue_membership(basis_, v);
  bool check = residue_membership(check_basis_, vc);
  if (primary != check)
    throw InternalCheckError(
        "ideal membership differs between working and guard precision");
  return primary;
}

bool IdealHandle::contains(const FractionalGroupRingElement& x) const {
  if (!x.is_integral())
    throw NotIntegralError("fractional element with l-denominator");
  return contains(x.numerator);
}

bool IdealHandle::equals(const IdealHandle& o) const {
  if (group_ != o.group_ || l_ != o.l_ || precision_ != o.precision_)
    throw BadParameterError("ideal comparison needs matching ring and precision");
  bool primary = basis_ == o.basis_;
  if (guard_ == o.guard_) {
    bool check = check_basis_ == o.check_basis_;
    if (primary != check)
      throw InternalCheckError(
          "ideal equality differs between working and guard precision");
  }
  return primary;
}

IdealHandle IdealHandle::tau() const {
  std::vector<ZG> gens;
  for (const ZG& s : generators_) gens.push_back(s.tau());
  return IdealHandle(group_, l_, precision_, std::move(gens), guard_);
}

IdealHandle annihilator(const ConcreteModule& m, long precision, long guard) {
  if (precision < m.exponent_max() + guard)
    throw PrecisionError("annihilator precision below exponent_max + guard");
  const FiniteAbelianGroup& g = m.group();
  long ord = g.order();
  long k = m.factor_count();
  if (k == 0)
    return IdealHandle(g, m.l(), precision, {ZG::scalar(g, Int(1))}, guard);
  // r = sum c_el el annihilates M iff for all (i, j):
  //   sum_el c_el * E_el[i][j] = 0 mod l^{e_i}.
  // The solution set is the exact integer lattice ker[K | diag(l^{e_i})]
  // projected to the c coordinates, so the handle is precision-independent.
  const auto& acts = m.element_actions();
  long rows = k * k;
  IntMatrix a(rows, ord + rows, Int(0));
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) {
      long r = i * k + j;
      for (long el = 0; el < ord; ++el) a.at(r, el) = acts[el].at(i, j);
      a.at(r, ord + r) = pow_l(m.l(), m.factors()[i]);
    }
  IntMatrix ker = integer_kernel(a);
  std::vector<ZG> gens;
  for (long c = 0; c < ker.cols(); ++c) {
    std::vector<Int> coeffs(ord);
    bool nonzero = false;
    for (long el = 0; el < ord; ++el) {
      coeffs[el] = ker.at(el, c);
      if (coeffs[el] != 0) nonzero = true;
    }
    if (nonzero) gens.emplace_back(g, std::move(coeffs));
  }
  if (gens.empty()) gens.push_back(ZG(g));  // zero ideal (cannot happen: l^e * 1 annihilates)
  return IdealHandle(g, m.l(), precision, std::move(gens), guard);
}

namespace {

IdealHandle fitting_minors(const PresentedModule& pm, long emax,
                           long precision, long guard) {
  if (precision < emax + guard)
    throw PrecisionError("fitting precision below exponent_max + guard");
  long a = pm.relations.rows(), b = pm.relations.cols();
  ZGMatrix padded = pm.relations;
  if (a < b) {
    padded = zero_gr_matrix<Int>(pm.group, b, b);
    for (long i = 0; i < a; ++i)
      for (long j = 0; j < b; ++j) padded.at(i, j) = pm.relations.at(i, j);
  }
  std::vector<ZG> minors = all_minors(padded, b, pm.group);
  return IdealHandle(pm.group, pm.l, precision, std::move(minors), guard);
}

}  // namespace

IdealHandle fitting_ideal(const PresentedModule& pm, long precision, long guard) {
  ConcreteModule m = realize(pm);  // validates finiteness and l-power order
  return fitting_minors(pm, m.exponent_max(), precision, guard);
}

IdealHandle fitting_of_module(const ConcreteModule& m, long precision,
                              long guard) {
  // The small presentation presents m itself, so no realization round trip.
  return fitting_minors(small_presentation(m), m.exponent_max(), precision,
                        guard);
}

ConcreteModule pontryagin_dual(const ConcreteModule& m) {
  const FiniteAbelianGroup& g = m.group();
  long k = m.factor_count();
  std::vector<IntMatrix> duals;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    IntMatrix inv_act = m.action_of_element(g.inverse(g.generator(t)));
    // Adjoint for the pairing <x, f> = sum_j x_j f_j / l^{e_j}:
    // B[j][i] = l^{e_j - e_i} * A[i][j], exact by compatibility.
    IntMatrix b(k, k, Int(0));
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) {
        long diff = m.factors()[j] - m.factors()[i];
        if (diff >= 0) {
          b.at(j, i) = inv_act.at(i, j) * pow_l(m.l(), diff);
        } else {
          Int q, r;
          Int div = pow_l(m.l(), -diff);
          mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), inv_act.at(i, j).get_mpz_t(),
                      div.get_mpz_t());
          if (r != 0)
            throw InternalCheckError("dual action entry not divisible");
          b.at(j, i) = q;
        }
      }
    duals.push_back(std::move(b));
  }
  return ConcreteModule(g, m.l(), m.factors(), std::move(duals));
}

PresentedModule presentation_of(const ConcreteModule& m) {
  const FiniteAbelianGroup& g = m.group();
  long k = m.factor_count();
  long rows = k + static_cast<long>(g.rank()) * k;
  ZGMatrix rel = zero_gr_matrix<Int>(g, rows, k);
  for (long j = 0; j < k; ++j)
    rel.at(j, j) = ZG::scalar(g, pow_l(m.l(), m.factors()[j]));
  long r = k;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    const IntMatrix& a = m.generator_actions()[t];
    for (long j = 0; j < k; ++j, ++r) {
      rel.at(r, j) = ZG::basis(g, g.generator(t));
      for (long i = 0; i < k; ++i)
        rel.at(r, i) -= ZG::scalar(g, a.at(i, j));
    }
  }
  return PresentedModule{g, m.l(), std::move(rel)};
}

// Defined in min_generators.cpp: coordinates of a Nakayama generating set,
// i.e. standard basis vectors of M spanning M / (l M + I_{G_1} M).
std::vector<long> nakayama_generator_coords(const ConcreteModule& m);

PresentedModule small_presentation(const ConcreteModule& m) {
  const FiniteAbelianGroup& g = m.group();
  long ord = g.order();
  long k = m.factor_count();
  if (k == 0) return PresentedModule{g, m.l(), zero_gr_matrix<Int>(g, 0, 0)};
  std::vector<long> gens = nakayama_generator_coords(m);
  long b = static_cast<long>(gens.size());
  // Relation lattice of the map Z[G]^b -> M, (a_j) -> sum a_j u_j, as the
  // projection of ker[Phi | diag(l^{e_i})].
  const auto& acts = m.element_actions();
  long cols = b * ord;
  IntMatrix a(k, cols + k, Int(0));
  for (long j = 0; j < b; ++j)
    for (long el = 0; el < ord; ++el)
      for (long i = 0; i < k; ++i)
        a.at(i, j * ord + el) = acts[el].at(i, gens[j]);
  for (long i = 0; i < k; ++i) a.at(i, cols + i) = pow_l(m.l(), m.factors()[i]);
  IntMatrix ker = integer_kernel(a);
  std::vector<std::vector<Int>> rel_rows;
  for (long c = 0; c < ker.cols(); ++c) {
    std::vector<Int> row(cols);
    bool nonzero = false;
    for (long i = 0; i < cols; ++i) {
      row[i] = ker.at(i, c);
      if (row[i] != 0) nonzero = true;
    }
    if (nonzero) rel_rows.push_back(std::move(row));
  }
  // l^{e_max} annihilates M, so l^{e_max} Z[G]^b sits inside the relation
  // lattice; appending those rows lets every coefficient be reduced mod
  // l^{e_max}, which keeps later minor and realization arithmetic small.
  Int cap = pow_l(m.l(), m.exponent_max());
  Int half = cap / 2;
  long a2 = static_cast<long>(rel_rows.size());
  ZGMatrix rel = zero_gr_matrix<Int>(g, a2 + b, b);
  for (long r = 0; r < a2; ++r)
    for (long j = 0; j < b; ++j) {
      std::vector<Int> coeffs(rel_rows[r].begin() + j * ord,
                              rel_rows[r].begin() + (j + 1) * ord);
      for (Int& c : coeffs) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), cap.get_mpz_t());
        if (c > half) c -= cap;
      }
      rel.at(r, j) = ZG(g, std::move(coeffs));
    }
  for (long j = 0; j < b; ++j) rel.at(a2 + j, j) = ZG::scalar(g, cap);
  return PresentedModule{g, m.l(), std::move(rel)};
}

std::vector<ZG> oracle_annihilator(const ConcreteModule& m, long e) {
  const FiniteAbelianGroup& g = m.group();
  long ord = g.order();
  if (e < m.exponent_max())
    throw BadParameterError("oracle precision below module exponent");
  double bits = static_cast<double>(e) * ord * std::log2(static_cast<double>(m.l()));
  if (bits > 20.0 + 1e-9)
    throw BadParameterError("oracle enumeration larger than 2^20");
  Int mod = pow_l(m.l(), e);
  std::vector<Int> digits(ord, 0);
  std::vector<ZG> out;
  for (;;) {
    ZG x(g, digits);
    if (m.annihilated_by(x)) out.push_back(x);
    long p = 0;
    while (p < ord) {
      digits[p] += 1;
      if (digits[p] < mod) break;
      digits[p] = 0;
      ++p;
    }
    if (p == ord) break;
  }
  return out;
}

}  // namespace annfit
