#include "annfit/stickelberger.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "annfit/errors.hpp"
#include "annfit/snf.hpp"

namespace annfit {
namespace {

Rat binomial(long n, long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(b);
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Rat bernoulli_number(long k) {
  if (k < 0) throw BadParameterError("Bernoulli index must be >= 0");
  static std::vector<Rat> table{Rat(1)};
  while (static_cast<long>(table.size()) <= k) {
    long m = static_cast<long>(table.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m from the earlier values.
    Rat acc(0);
    for (long j = 0; j < m; ++j) acc += binomial(m + 1, j) * table[j];
    Rat bm = -acc / binomial(m + 1, m);
    bm.canonicalize();
    table.push_back(bm);
  }
  return table[k];
}

Rat bernoulli_polynomial(long n, const Rat& q) {
  if (n < 0) throw BadParameterError("Bernoulli degree must be >= 0");
  Rat acc(0);
  Rat qpow(1);
  for (long j = n; j >= 0; --j) {
    // accumulate C(n, j) B_j q^{n-j}; qpow holds q^{n-j}
    acc += binomial(n, j) * bernoulli_number(j) * qpow;
    qpow *= q;
  }
  acc.canonicalize();
  return acc;
}

Rat partial_zeta(long f, long a, long n) {
  if (f < 1) throw BadParameterError("conductor must be >= 1");
  if (n < 2) throw BadParameterError("partial zeta needs n >= 2");
  long r = ((a % f) + f) % f;
  if (std::gcd(r, f) != 1) throw BadParameterError("residue not coprime to conductor");
  if (r == 0) r = f;  // <a/f> in (0, 1]
  Rat q(r, f);
  q.canonicalize();
  Rat fpow(1);
  for (long i = 0; i < n - 1; ++i) fpow *= f;
  Rat out = -fpow * bernoulli_polynomial(n, q) / n;
  out.canonicalize();
  return out;
}

AbelianFieldSpec::AbelianFieldSpec(long f, const std::vector<long>& subgroup_gens)
    : f_(f) {
  if (f < 1) throw BadParameterError("conductor must be >= 1");
  for (long a = 0; a < f; ++a)
    if (std::gcd(a == 0 && f == 1 ? 1 : a, f) == 1) units_.push_back(a);
  long id = f == 1 ? 0 : 1;

  // Subgroup closure of the generators.
  std::set<long> h{id};
  std::vector<long> queue{id};
  std::vector<long> gens;
  for (long g : subgroup_gens) {
    long r = ((g % f) + f) % f;
    if (std::gcd(r == 0 && f == 1 ? 1 : r, f) != 1)
      throw BadParameterError("subgroup generator not coprime to conductor");
    gens.push_back(r);
  }
  while (!queue.empty()) {
    long x = queue.back();
    queue.pop_back();
    for (long g : gens) {
      long y = f == 1 ? 0 : (x * g) % f;
      if (h.insert(y).second) queue.push_back(y);
    }
  }
  h_.assign(h.begin(), h.end());

  // Cosets aH in ascending order of their smallest member.
  std::vector<long> coset_of(f, -1);
  std::vector<long> reps;
  for (long u : units_) {
    if (coset_of[u] >= 0) continue;
    long c = static_cast<long>(reps.size());
    reps.push_back(u);
    for (long hh : h_) coset_of[f == 1 ? 0 : (u * hh) % f] = c;
  }
  long r = static_cast<long>(reps.size());

  // Multiplication-table presentation of the quotient: generators e_c, one
  // per coset, relations e_i + e_j - e_{ij} and e_{identity coset}.
  IntMatrix rel(r, r * r + 1, Int(0));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      long col = i * r + j;
      long prod = coset_of[f == 1 ? 0 : (reps[i] * reps[j]) % f];
      rel.at(i, col) += 1;
      rel.at(j, col) += 1;
      rel.at(prod, col) -= 1;
    }
  rel.at(coset_of[id], r * r) = 1;
  LatticeQuotient d = lattice_quotient(rel);
  if (!d.full_rank) throw InternalCheckError("unit quotient not finite");
  std::vector<long> factors, keep;
  for (long i = 0; i < r; ++i) {
    const Int& s = d.diag[i];
    if (s == 1) continue;
    factors.push_back(s.get_si());
    keep.push_back(i);
  }
  group_ = FiniteAbelianGroup(factors);
  if (group_.order() != r)
    throw InternalCheckError("unit quotient order mismatch");

  // sigma_a = image of the coset of a under x -> Ux in diagonal coordinates.
  sigma_of_unit_.resize(units_.size());
  rep_of_element_.assign(r, -1);
  for (std::size_t p = 0; p < units_.size(); ++p) {
    long c = coset_of[units_[p]];
    std::vector<long> exps(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      Int v = mod_reduce(d.u.at(keep[i], c), Int(factors[i]));
      exps[i] = v.get_si();
    }
    long idx = group_.index_of(exps);
    sigma_of_unit_[p] = idx;
    if (rep_of_element_[idx] < 0)
      rep_of_element_[idx] = units_[p];
    else if (coset_of[rep_of_element_[idx]] != c)
      throw InternalCheckError("coset map not constant on elements");
  }
  for (long e = 0; e < r; ++e)
    if (rep_of_element_[e] < 0)
      throw InternalCheckError("coset map misses a group element");
}

bool AbelianFieldSpec::in_subgroup(long a) const {
  long x = ((a % f_) + f_) % f_;
  return std::binary_search(h_.begin(), h_.end(), x);
}

long AbelianFieldSpec::sigma(long a) const {
  long x = ((a % f_) + f_) % f_;
  auto it = std::lower_bound(units_.begin(), units_.end(), x);
  if (it == units_.end() || *it != x)
    throw BadParameterError("residue not coprime to conductor");
  return sigma_of_unit_[it - units_.begin()];
}

long AbelianFieldSpec::coset_representative(long element) const {
  if (element < 0 || element >= group_.order())
    throw BadParameterError("element index out of range");
  return rep_of_element_[element];
}

bool AbelianFieldSpec::plus_field() const { return in_subgroup(f_ - 1); }

ThetaElement theta_element(const AbelianFieldSpec& field, long n) {
  if (n < 2) throw BadParameterError("theta needs n >= 2");
  const FiniteAbelianGroup& g = field.galois_group();
  std::vector<Rat> coeffs(g.order(), Rat(0));
  for (long a : field.units())
    coeffs[g.inverse(field.sigma(a))] += partial_zeta(field.conductor(), a, n);
  for (Rat& c : coeffs) c.canonicalize();
  return ThetaElement{field, n, QG(g, std::move(coeffs))};
}

ThetaElement pushforward_theta(const ThetaElement& theta,
                               const AbelianFieldSpec& target) {
  const AbelianFieldSpec& src = theta.field;
  if (src.conductor() != target.conductor())
    throw IncompatibleFieldsError("pushforward requires a common conductor");
  for (long hh : src.subgroup())
    if (!target.in_subgroup(hh))
      throw IncompatibleFieldsError("target subgroup does not contain source");
  const FiniteAbelianGroup& g = target.galois_group();
  std::vector<Rat> coeffs(g.order(), Rat(0));
  for (long e = 0; e < src.galois_group().order(); ++e)
    coeffs[target.sigma(src.coset_representative(e))] += theta.element.coeff(e);
  for (Rat& c : coeffs) c.canonicalize();
  return ThetaElement{target, theta.weight, QG(g, std::move(coeffs))};
}

QG transport(const QG& x, const AbelianFieldSpec& src,
             const AbelianFieldSpec& dst) {
  if (src.conductor() % dst.conductor() != 0)
    throw IncompatibleFieldsError("transport needs nested conductors");
  for (long a : src.units())
    if (src.in_subgroup(a) != dst.in_subgroup(a % dst.conductor()))
      throw IncompatibleFieldsError("source subgroup is not the full preimage");
  const FiniteAbelianGroup& gs = src.galois_group();
  const FiniteAbelianGroup& gd = dst.galois_group();
  if (gs.order() != gd.order())
    throw IncompatibleFieldsError("transport between different group orders");
  if (x.group() != gs) throw BadParameterError("element not over the source group");
  std::vector<Rat> coeffs(gd.order(), Rat(0));
  std::vector<bool> hit(gd.order(), false);
  for (long e = 0; e < gs.order(); ++e) {
    long t = dst.sigma(src.coset_representative(e) % dst.conductor());
    if (hit[t]) throw InternalCheckError("transport map not injective");
    hit[t] = true;
    coeffs[t] = x.coeff(e);
  }
  return QG(gd, std::move(coeffs));
}

QG euler_factor(long p, const AbelianFieldSpec& field, long n) {
  if (p < 2) throw BadParameterError("Euler factor needs a prime p");
  if (n < 1) throw BadParameterError("Euler factor needs n >= 1");
  if (field.conductor() % p == 0)
    throw RamifiedPrimeError("Euler factor at a ramified prime");
  const FiniteAbelianGroup& g = field.galois_group();
  std::vector<Rat> coeffs(g.order(), Rat(0));
  coeffs[g.identity()] += 1;
  Rat ppow(1);
  for (long i = 0; i < n - 1; ++i) ppow *= p;
  coeffs[g.inverse(field.sigma(p))] -= ppow;
  return QG(g, std::move(coeffs));
}

QG parity_projector(const AbelianFieldSpec& field, long n) {
  const FiniteAbelianGroup& g = field.galois_group();
  std::vector<Rat> coeffs(g.order(), Rat(0));
  coeffs[g.identity()] += 1;
  long sign = (n % 2 == 0) ? 1 : -1;
  coeffs[field.sigma(field.conductor() - 1)] -= sign;
  return QG(g, std::move(coeffs));
}

long w_valuation(const AbelianFieldSpec& field, long n, long p) {
  if (n < 1) throw BadParameterError("w invariant needs n >= 1");
  if (!is_prime(p)) throw BadParameterError("w valuation needs a prime p");
  long f = field.conductor();
  long k = 0;
  for (;;) {
    long next = k + 1;
    long pk = 1;
    for (long i = 0; i < next; ++i) {
      pk *= p;
      if (pk > (1L << 30)) throw InternalCheckError("w search modulus overflow");
    }
    long m = f / std::gcd(f, pk) * pk;  // lcm(f, p^{k+1})
    // Exponent of the image divides n iff a^n = 1 mod p^{k+1} for all a in
    // the preimage subgroup.
    bool ok = true;
    for (long a = 0; a < m && ok; ++a) {
      if (std::gcd(a == 0 && m == 1 ? 1 : a, m) != 1) continue;
      if (!field.in_subgroup(a % f)) continue;
      long x = 1;
      long base = a % pk;
      long e = n;
      while (e) {
        if (e & 1) x = static_cast<long>((static_cast<__int128>(x) * base) % pk);
        e >>= 1;
        base = static_cast<long>((static_cast<__int128>(base) * base) % pk);
      }
      if (x % pk != 1 % pk) ok = false;
    }
    if (!ok) return k;
    ++k;
    if (k > 40) throw InternalCheckError("w valuation search did not terminate");
  }
}

Int w_invariant(const AbelianFieldSpec& field, long n) {
  std::set<long> candidates;
  for (long p = 2; p <= n + 1; ++p)
    if (is_prime(p) && n % (p - 1) == 0) candidates.insert(p);
  for (long p = 2; p <= field.conductor(); ++p)
    if (is_prime(p) && field.conductor() % p == 0) candidates.insert(p);
  Int w = 1;
  for (long p : candidates) {
    long k = w_valuation(field, n, p);
    for (long i = 0; i < k; ++i) w *= p;
  }
  return w;
}

ConcreteModule h0_model(const AbelianFieldSpec& field, long n, long l) {
  if (n < 1) throw BadParameterError("h0 model needs n >= 1");
  const FiniteAbelianGroup& g = field.galois_group();
  long a = w_valuation(field, n + 1, l);
  if (a == 0) return ConcreteModule::trivial(g, l);
  Int mod = pow_l(l, a);
  long f = field.conductor();
  std::vector<IntMatrix> actions;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    long b = field.coset_representative(g.generator(t));
    // Two independent lifts of b coprime to l; the theory says b'^{n+1} is
    // the same mod l^a for any of them, and we make that an executable check.
    std::vector<Int> values;
    long found = 0;
    for (long lift = b; found < 2; lift += (f == 1 ? 1 : f)) {
      if (lift == 0 || std::gcd(lift, l) != 1) continue;
      Int v = 1;
      for (long i = 0; i < n + 1; ++i) v = mod_reduce(v * lift, mod);
      values.push_back(v);
      ++found;
    }
    if (values[0] != values[1])
      throw InternalCheckError("h0 action depends on the chosen lift");
    actions.push_back(IntMatrix(1, 1, values[0]));
  }
  return ConcreteModule(g, l, {a}, std::move(actions));
}

CoatesSinnottReport coates_sinnott_check(const AbelianFieldSpec& field, long n,
                                         long l, long b, long prime_count,
                                         long guard) {
  long f = field.conductor();
  if (b <= 0 || std::gcd(b, f) != 1)
    throw BadParameterError("twist b must be positive and coprime to f");
  if (n < 1) throw BadParameterError("integrality check needs n >= 1");
  const FiniteAbelianGroup& g = field.galois_group();

  ThetaElement theta = theta_element(field, n + 1);
  AbelianFieldSpec rationals(1, {});
  Int wq = w_invariant(rationals, n + 1);

  // w_{n+1}(Q) (b^{n+1} - sigma_b) Theta(n+1)
  std::vector<Rat> tw(g.order(), Rat(0));
  Int bpow = 1;
  for (long i = 0; i < n + 1; ++i) bpow *= b;
  tw[g.identity()] += Rat(bpow);
  tw[field.sigma(b)] -= 1;
  QG smoothing(g, std::move(tw));
  CoatesSinnottReport report{QG::scalar(g, Rat(wq)) * smoothing * theta.element};
  report.smoothed_integral = min_l_valuation(report.smoothed, l) >= 0;

  ConcreteModule h0 = h0_model(field, n, l);
  long a = h0.is_trivial() ? 0 : h0.factors()[0];
  long precision = a + guard;
  IdealHandle ann = annihilator(h0, precision, guard);
  bool contained = ann.contains(ZG::scalar(g, pow_l(l, a)));
  for (long p = 2; static_cast<long>(report.primes.size()) < prime_count; ++p) {
    if (!is_prime(p) || (f * l) % p == 0) continue;
    std::vector<Int> coeffs(g.order(), Int(0));
    coeffs[field.sigma(p)] += 1;
    Int ppow = 1;
    for (long i = 0; i < n + 1; ++i) ppow *= p;
    coeffs[g.identity()] -= ppow;
    ZG gen(g, std::move(coeffs));
    report.primes.push_back(p);
    report.annihilates.push_back(h0.annihilated_by(gen));
    contained = contained && ann.contains(gen);
  }
  report.ideal_contained = contained;
  report.pass = report.smoothed_integral && report.ideal_contained;
  for (bool x : report.annihilates) report.pass = report.pass && x;
  return report;
}

}  // namespace annfit
