// Minimal number of generators of a finite Z_l[G]-module, computed through
// Nakayama's lemma: mu(M) equals the largest multiplicity of a simple
// component in V = M / (l M + I_{G_1} M), viewed over the semisimple algebra
// F_l[G/G_1].  The simple components are cut out by splitting y^m - 1 into
// irreducible factors over successively larger finite fields, one group
// generator at a time, without any polynomial factorization library:
// factor degrees are forced by orders of |F| modulo divisors of m, and the
// finitely many genuinely split cases are found by bounded trial division.
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "annfit/errors.hpp"
#include "annfit/modules.hpp"

namespace annfit {
namespace {

using FlVec = std::vector<long>;
using FlMat = std::vector<FlVec>;  // row-major

long fl_norm(long a, long l) {
  long r = a % l;
  return r < 0 ? r + l : r;
}

long fl_inv(long a, long l) {
  long t = 0, nt = 1, r = l, nr = fl_norm(a, l);
  while (nr != 0) {
    long q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  if (r != 1) throw InternalCheckError("non-invertible residue mod l");
  return fl_norm(t, l);
}

FlMat fl_identity(long n) {
  FlMat m(n, FlVec(n, 0));
  for (long i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

FlMat fl_mul(const FlMat& a, const FlMat& b, long l) {
  long n = static_cast<long>(a.size());
  long p = b.empty() ? 0 : static_cast<long>(b[0].size());
  long mid = static_cast<long>(b.size());
  FlMat c(n, FlVec(p, 0));
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < mid; ++k) {
      if (a[i][k] == 0) continue;
      for (long j = 0; j < p; ++j)
        c[i][j] = fl_norm(c[i][j] + a[i][k] * b[k][j], l);
    }
  return c;
}

FlMat fl_pow(FlMat a, long e, long l) {
  FlMat r = fl_identity(static_cast<long>(a.size()));
  while (e) {
    if (e & 1) r = fl_mul(r, a, l);
    e >>= 1;
    if (e) a = fl_mul(a, a, l);
  }
  return r;
}

FlVec fl_apply(const FlMat& a, const FlVec& v, long l) {
  long n = static_cast<long>(a.size());
  FlVec r(n, 0);
  for (long i = 0; i < n; ++i) {
    long s = 0;
    for (long j = 0; j < n; ++j) s = fl_norm(s + a[i][j] * v[j], l);
    r[i] = s;
  }
  return r;
}

// In-place row echelon; returns pivot column per surviving row.
std::vector<long> fl_rref(FlMat& m, long l) {
  std::vector<long> pivots;
  long rows = static_cast<long>(m.size());
  long cols = rows ? static_cast<long>(m[0].size()) : 0;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long sel = -1;
    for (long i = r; i < rows; ++i)
      if (m[i][c] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    long inv = fl_inv(m[r][c], l);
    for (long j = 0; j < cols; ++j) m[r][j] = fl_norm(m[r][j] * inv, l);
    for (long i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      long f = m[i][c];
      for (long j = 0; j < cols; ++j)
        m[i][j] = fl_norm(m[i][j] - f * m[r][j], l);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(pivots.size());
  return pivots;
}

// Kernel basis (as column vectors) of a matrix acting on F_l^n.
std::vector<FlVec> fl_nullspace(FlMat m, long n, long l) {
  std::vector<long> pivots = fl_rref(m, l);
  std::vector<bool> is_pivot(n, false);
  for (long c : pivots) is_pivot[c] = true;
  std::vector<FlVec> basis;
  for (long c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    FlVec v(n, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = fl_norm(-m[r][c], l);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Coordinates of target in the span of the given columns (must lie in it).
FlVec fl_coords_in_span(const std::vector<FlVec>& cols, const FlVec& target,
                        long l) {
  long n = static_cast<long>(target.size());
  long s = static_cast<long>(cols.size());
  FlMat aug(n, FlVec(s + 1, 0));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < s; ++j) aug[i][j] = cols[j][i];
    aug[i][s] = target[i];
  }
  std::vector<long> pivots = fl_rref(aug, l);
  FlVec x(s, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == s)
      throw InternalCheckError("vector escaped an invariant subspace");
    x[pivots[r]] = aug[r][s];
  }
  return x;
}

FlMat restrict_to(const FlMat& m, const std::vector<FlVec>& basis, long l) {
  long s = static_cast<long>(basis.size());
  FlMat out(s, FlVec(s, 0));
  for (long j = 0; j < s; ++j) {
    FlVec coords = fl_coords_in_span(basis, fl_apply(m, basis[j], l), l);
    for (long i = 0; i < s; ++i) out[i][j] = coords[i];
  }
  return out;
}

// --- polynomials over F_l, ascending coefficients ---

FlVec flp_trim(FlVec p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

FlVec flp_mul(const FlVec& a, const FlVec& b, long l) {
  if (a.empty() || b.empty()) return {};
  FlVec c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = fl_norm(c[i + j] + a[i] * b[j], l);
  return flp_trim(std::move(c));
}

// Remainder mod a monic polynomial.
FlVec flp_mod(FlVec a, const FlVec& p, long l) {
  long d = static_cast<long>(p.size()) - 1;
  while (static_cast<long>(a.size()) > d) {
    long lead = a.back();
    long shift = static_cast<long>(a.size()) - 1 - d;
    if (lead != 0)
      for (long i = 0; i <= d; ++i)
        a[shift + i] = fl_norm(a[shift + i] - lead * p[i], l);
    a.pop_back();
  }
  return a;
}

// Minimal polynomial of a square matrix over F_l, monic ascending, found by
// echelonizing the flattened powers I, A, A^2, ... with expression tracking.
FlVec matrix_minpoly(const FlMat& a, long l) {
  long n = static_cast<long>(a.size());
  if (n == 0) return {0, 1};
  long n2 = n * n;
  std::vector<FlVec> rows, exprs;
  std::vector<long> pivots;
  FlMat power = fl_identity(n);
  for (long step = 0;; ++step) {
    FlVec flat(n2);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) flat[i * n + j] = power[i][j];
    FlVec expr(step + 1, 0);
    expr[step] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      long f = flat[pivots[r]];
      if (f == 0) continue;
      for (long j = 0; j < n2; ++j)
        flat[j] = fl_norm(flat[j] - f * rows[r][j], l);
      if (expr.size() < exprs[r].size()) expr.resize(exprs[r].size(), 0);
      for (std::size_t j = 0; j < exprs[r].size(); ++j)
        expr[j] = fl_norm(expr[j] - f * exprs[r][j], l);
    }
    long pc = -1;
    for (long j = 0; j < n2; ++j)
      if (flat[j] != 0) { pc = j; break; }
    if (pc < 0) {
      expr.resize(step + 1, 0);
      return expr;  // sum expr[i] x^i = 0 with leading coefficient 1
    }
    long inv = fl_inv(flat[pc], l);
    for (long j = 0; j < n2; ++j) flat[j] = fl_norm(flat[j] * inv, l);
    for (auto& e : expr) e = fl_norm(e * inv, l);
    rows.push_back(std::move(flat));
    exprs.push_back(std::move(expr));
    pivots.push_back(pc);
    power = fl_mul(power, a, l);
  }
}

// --- integer cyclotomic polynomials, ascending coefficients ---

std::vector<long> intpoly_divide_exact(std::vector<long> num,
                                       const std::vector<long>& den) {
  std::vector<long> q(num.size() - den.size() + 1, 0);
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    long lead = num[i + den.size() - 1];
    if (lead % den.back() != 0)
      throw InternalCheckError("inexact cyclotomic division");
    long f = lead / den.back();
    q[i] = f;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
  }
  for (long v : num)
    if (v != 0) throw InternalCheckError("inexact cyclotomic division");
  return q;
}

const std::vector<long>& cyclotomic(long d) {
  static std::map<long, std::vector<long>> memo;
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  std::vector<long> p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (long e = 1; e < d; ++e)
    if (d % e == 0) p = intpoly_divide_exact(std::move(p), cyclotomic(e));
  return memo.emplace(d, std::move(p)).first->second;
}

long euler_phi(long d) {
  long out = 0;
  for (long a = 1; a <= d; ++a)
    if (std::gcd(a, d) == 1) ++out;
  return out;
}

long order_mod(long q, long d) {
  if (d == 1) return 1;
  long t = 1, acc = q % d;
  while (acc != 1) {
    acc = (acc * q) % d;
    ++t;
    if (t > d) throw InternalCheckError("unit order search overran modulus");
  }
  return t;
}

// --- arithmetic in F = F_l[x]/(p), elements as FlVec of length deg(p) ---

struct FieldCtx {
  long l;
  FlVec minpoly;  // monic
  long deg() const { return static_cast<long>(minpoly.size()) - 1; }
};

FlVec fe_from_scalar(long c, const FieldCtx& f) {
  FlVec v(f.deg(), 0);
  if (f.deg() > 0) v[0] = fl_norm(c, f.l);
  return v;
}

FlVec fe_mul(const FlVec& a, const FlVec& b, const FieldCtx& f) {
  FlVec m = flp_mod(flp_mul(a, b, f.l), f.minpoly, f.l);
  m.resize(f.deg(), 0);
  return m;
}

FlVec fe_sub(FlVec a, const FlVec& b, long l) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = fl_norm(a[i] - b[i], l);
  return a;
}

bool fe_is_zero(const FlVec& a) {
  return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
}

// Polynomials over F, ascending, coefficients are F-elements.
using FPoly = std::vector<FlVec>;

FPoly fp_trim(FPoly p) {
  while (!p.empty() && fe_is_zero(p.back())) p.pop_back();
  return p;
}

// Division by a monic polynomial; returns {quotient, remainder}.
std::pair<FPoly, FPoly> fp_divmod(FPoly num, const FPoly& den,
                                  const FieldCtx& f) {
  long dd = static_cast<long>(den.size()) - 1;
  if (static_cast<long>(num.size()) - 1 < dd)
    return {{}, fp_trim(std::move(num))};
  FPoly q(num.size() - dd, fe_from_scalar(0, f));
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    FlVec lead = num[i + dd];
    if (fe_is_zero(lead)) continue;
    q[i] = lead;
    for (long j = 0; j <= dd; ++j)
      num[i + j] = fe_sub(num[i + j], fe_mul(lead, den[j], f), f.l);
  }
  return {fp_trim(std::move(q)), fp_trim(std::move(num))};
}

// Irreducible factors of y^m - 1 over F (m coprime to the characteristic).
// Per divisor d of m, Phi_d splits into phi(d)/f_d monic irreducibles of the
// same degree f_d = ord_d(|F|); single-factor cases need no search, the rest
// are found by trial division over monic candidates of the forced degree.
std::vector<FPoly> cyclotomic_factors(long m, const FieldCtx& f) {
  std::vector<FPoly> out;
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    if (std::gcd(d, f.l) != 1)
      throw BadParameterError("cyclotomic splitting needs gcd(m, l) = 1");
    const std::vector<long>& phi_z = cyclotomic(d);
    FPoly phi;
    for (long c : phi_z) phi.push_back(fe_from_scalar(c, f));
    phi = fp_trim(std::move(phi));
    long qd = 1 % d;
    for (long i = 0; i < f.deg(); ++i) qd = (qd * (f.l % d)) % d;
    long fd = order_mod(d == 1 ? 1 : qd, d);
    long count = euler_phi(d) / fd;
    if (count == 1) {
      out.push_back(std::move(phi));
      continue;
    }
    long digits = fd * f.deg();
    double bits = digits * std::log2(static_cast<double>(f.l));
    if (bits > 22.0)
      throw InternalCheckError("cyclotomic factor search space too large");
    FPoly remaining = phi;
    std::vector<long> odo(digits, 0);
    long found = 0;
    while (found < count) {
      long p = 0;
      while (p < digits) {
        odo[p] += 1;
        if (odo[p] < f.l) break;
        odo[p] = 0;
        ++p;
      }
      if (p == digits)
        throw InternalCheckError("cyclotomic factor search exhausted");
      FPoly cand(fd + 1, fe_from_scalar(0, f));
      for (long i = 0; i < fd; ++i)
        for (long j = 0; j < f.deg(); ++j) cand[i][j] = odo[i * f.deg() + j];
      cand[fd] = fe_from_scalar(1, f);
      auto [q, r] = fp_divmod(remaining, cand, f);
      if (!r.empty()) continue;
      out.push_back(cand);
      remaining = std::move(q);
      ++found;
      if (found + 1 == count &&
          static_cast<long>(remaining.size()) - 1 == fd) {
        out.push_back(std::move(remaining));
        ++found;
      }
    }
  }
  return out;
}

// Evaluate an F-coefficient polynomial at the matrix b, mapping the field
// generator x to the matrix prim (which commutes with b).
FlMat fp_evaluate(const FPoly& g, const FlMat& prim, const FlMat& b, long l) {
  long n = static_cast<long>(b.size());
  FlMat acc(n, FlVec(n, 0));
  FlMat bpow = fl_identity(n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) bpow = fl_mul(bpow, b, l);
    FlMat cm(n, FlVec(n, 0));
    FlMat ppow = fl_identity(n);
    for (std::size_t i = 0; i < g[k].size(); ++i) {
      if (i) ppow = fl_mul(ppow, prim, l);
      if (g[k][i] == 0) continue;
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c)
          cm[r][c] = fl_norm(cm[r][c] + g[k][i] * ppow[r][c], l);
    }
    FlMat term = fl_mul(cm, bpow, l);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c)
        acc[r][c] = fl_norm(acc[r][c] + term[r][c], l);
  }
  return acc;
}

// Deterministic primitive element for the field generated by prim (degree
// d_old over F_l) and b (a root of a degree-f irreducible over that field):
// scan combinations until the minimal polynomial reaches the full degree.
// Inside a field, minimal polynomials are automatically irreducible, so the
// degree test suffices.
FlMat find_primitive(const FlMat& prim, const FlMat& b, long d_old, long f,
                     long l, FlVec* minpoly_out) {
  long target = d_old * f;
  long n = static_cast<long>(b.size());
  for (long t = 0; t < l; ++t) {
    FlMat cand(n, FlVec(n, 0));
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c)
        cand[r][c] = fl_norm(prim[r][c] + t * b[r][c], l);
    FlVec mp = matrix_minpoly(cand, l);
    if (static_cast<long>(mp.size()) - 1 == target) {
      *minpoly_out = mp;
      return cand;
    }
  }
  // Fallback: all F_l-combinations of the monomials prim^i b^j.
  std::vector<FlMat> mono;
  FlMat pp = fl_identity(n);
  for (long i = 0; i < d_old; ++i) {
    if (i) pp = fl_mul(pp, prim, l);
    FlMat bp = pp;
    for (long j = 0; j < f; ++j) {
      if (j) bp = fl_mul(bp, b, l);
      mono.push_back(bp);
    }
  }
  long digits = static_cast<long>(mono.size());
  std::vector<long> odo(digits, 0);
  for (;;) {
    long p = 0;
    while (p < digits) {
      odo[p] += 1;
      if (odo[p] < l) break;
      odo[p] = 0;
      ++p;
    }
    if (p == digits)
      throw InternalCheckError("primitive element search exhausted");
    FlMat cand(n, FlVec(n, 0));
    for (long k = 0; k < digits; ++k) {
      if (odo[k] == 0) continue;
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c)
          cand[r][c] = fl_norm(cand[r][c] + odo[k] * mono[k][r][c], l);
    }
    FlVec mp = matrix_minpoly(cand, l);
    if (static_cast<long>(mp.size()) - 1 == target) {
      *minpoly_out = mp;
      return cand;
    }
  }
}

// Maximum, over the simple components of the commutative semisimple algebra
// generated by the remaining gens over the field realized by prim, of the
// component dimension of the current space (as a vector space over the
// component field).
long max_simple_dim(std::vector<std::pair<FlMat, long>> gens, FieldCtx f,
                    FlMat prim, long dim, long l) {
  if (dim == 0) return 0;
  while (!gens.empty() && gens.back().second == 1) gens.pop_back();
  if (gens.empty()) {
    if (dim % f.deg() != 0)
      throw InternalCheckError("space dimension not divisible by field degree");
    return dim / f.deg();
  }
  auto [b, m] = gens.back();
  gens.pop_back();
  long best = 0;
  for (const FPoly& g : cyclotomic_factors(m, f)) {
    FlMat gb = fp_evaluate(g, prim, b, l);
    std::vector<FlVec> kernel = fl_nullspace(gb, dim, l);
    if (kernel.empty()) continue;
    long sub = static_cast<long>(kernel.size());
    std::vector<std::pair<FlMat, long>> rgens;
    for (const auto& [mat, ord] : gens)
      rgens.emplace_back(restrict_to(mat, kernel, l), ord);
    FlMat rb = restrict_to(b, kernel, l);
    FlMat rprim = restrict_to(prim, kernel, l);
    long gdeg = static_cast<long>(g.size()) - 1;
    FieldCtx nf = f;
    FlMat nprim = rprim;
    if (gdeg > 1) {
      FlVec mp;
      nprim = find_primitive(rprim, rb, f.deg(), gdeg, l, &mp);
      nf = FieldCtx{l, mp};
    }
    best = std::max(best, max_simple_dim(std::move(rgens), nf, nprim, sub, l));
  }
  return best;
}

// Mod-l data of the Nakayama quotient V = M/(lM + I_{G_1}M): the echelon
// basis of W = sum_t im(A_t^{m_t} - I) (the image of the Sylow-l augmentation
// ideal, since g_t^{m_t} generates the l-part of the t-th cyclic factor), the
// complementary coordinates spanning V, and the induced generator actions.
struct NakayamaData {
  FlMat wrows;
  std::vector<long> wpivots;
  std::vector<long> qc;            // coordinates of M/lM spanning V
  std::vector<FlMat> vactions;     // generator actions on V
  std::vector<long> horders;       // orders of the generator images in G/G_1
};

NakayamaData nakayama_quotient(const ConcreteModule& m) {
  long k = m.factor_count();
  long l = m.l();
  const FiniteAbelianGroup& g = m.group();
  NakayamaData out;
  std::vector<FlMat> amats;
  for (std::size_t t = 0; t < g.rank(); ++t) {
    long mt = g.invariant_factors()[t];
    while (mt % l == 0) mt /= l;
    out.horders.push_back(mt);
    FlMat a(k, FlVec(k, 0));
    const IntMatrix& act = m.generator_actions()[t];
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j)
        a[i][j] = mod_reduce(act.at(i, j), Int(l)).get_si();
    FlMat c = fl_pow(a, mt, l);  // action of the l-part g_t^{m_t}
    for (long j = 0; j < k; ++j) {
      FlVec col(k);
      bool nz = false;
      for (long i = 0; i < k; ++i) {
        col[i] = fl_norm(c[i][j] - (i == j ? 1 : 0), l);
        if (col[i]) nz = true;
      }
      if (nz) out.wrows.push_back(std::move(col));
    }
    amats.push_back(std::move(a));
  }
  out.wpivots = fl_rref(out.wrows, l);
  std::vector<bool> in_w(k, false);
  for (long c : out.wpivots) in_w[c] = true;
  for (long c = 0; c < k; ++c)
    if (!in_w[c]) out.qc.push_back(c);
  long q = static_cast<long>(out.qc.size());
  auto project = [&](FlVec v) {
    for (std::size_t r = 0; r < out.wrows.size(); ++r) {
      long fac = v[out.wpivots[r]];
      if (fac == 0) continue;
      for (long j = 0; j < k; ++j)
        v[j] = fl_norm(v[j] - fac * out.wrows[r][j], l);
    }
    FlVec pr(q);
    for (long i = 0; i < q; ++i) pr[i] = v[out.qc[i]];
    return pr;
  };
  // The induced action of the image of g_t on V is the plain generator
  // action: the l-part acts trivially on V, so it factors through G/G_1 and
  // satisfies y^{m_t} = 1 there.
  for (const FlMat& a : amats) {
    FlMat b(q, FlVec(q, 0));
    for (long j = 0; j < q; ++j) {
      FlVec col(k, 0);
      for (long i = 0; i < k; ++i) col[i] = a[i][out.qc[j]];
      FlVec pr = project(std::move(col));
      for (long i = 0; i < q; ++i) b[i][j] = pr[i];
    }
    out.vactions.push_back(std::move(b));
  }
  return out;
}

}  // namespace

std::vector<long> nakayama_generator_coords(const ConcreteModule& m) {
  if (m.factor_count() == 0) return {};
  NakayamaData nd = nakayama_quotient(m);
  long q = static_cast<long>(nd.qc.size());
  long l = m.l();
  if (q == 0) return {};

  // Greedy subset whose F_l[H]-orbit spans V; a module generating set needs
  // only one coordinate per H-orbit, not a full F_l-basis.  Coordinate qc[j]
  // projects to the j-th standard vector of V.  Keep span in reduced echelon
  // form so membership is a single elimination pass.
  FlMat span;
  std::vector<long> pivots;
  auto insert = [&](FlVec v) -> bool {
    for (std::size_t r = 0; r < span.size(); ++r) {
      long fac = v[pivots[r]];
      if (fac == 0) continue;
      for (long j = 0; j < q; ++j) v[j] = fl_norm(v[j] - fac * span[r][j], l);
    }
    long p = 0;
    while (p < q && v[p] == 0) ++p;
    if (p == q) return false;
    long inv = fl_inv(v[p], l);
    for (long j = 0; j < q; ++j) v[j] = fl_norm(v[j] * inv, l);
    for (std::size_t r = 0; r < span.size(); ++r) {
      long fac = span[r][p];
      if (fac == 0) continue;
      for (long j = 0; j < q; ++j)
        span[r][j] = fl_norm(span[r][j] - fac * v[j], l);
    }
    span.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  };

  std::vector<long> chosen;
  for (long j = 0; j < q && static_cast<long>(span.size()) < q; ++j) {
    FlVec e(q, 0);
    e[j] = 1;
    std::vector<FlVec> stack{std::move(e)};
    bool fresh = false;
    while (!stack.empty()) {
      FlVec v = std::move(stack.back());
      stack.pop_back();
      if (!insert(v)) continue;
      fresh = true;
      for (const FlMat& a : nd.vactions) stack.push_back(fl_apply(a, v, l));
    }
    if (fresh) chosen.push_back(nd.qc[j]);
  }
  return chosen;
}

long min_generators(const ConcreteModule& m) {
  long k = m.factor_count();
  long l = m.l();
  if (k == 0) return 0;
  NakayamaData nd = nakayama_quotient(m);
  long q = static_cast<long>(nd.qc.size());
  if (q == 0) return 0;
  std::vector<std::pair<FlMat, long>> vgens;
  for (std::size_t t = 0; t < nd.vactions.size(); ++t)
    vgens.emplace_back(nd.vactions[t], nd.horders[t]);
  FieldCtx base{l, FlVec{fl_norm(-1, l), 1}};  // F_l itself: minpoly x - 1
  return max_simple_dim(std::move(vgens), base, fl_identity(q), q, l);
}

}  // namespace annfit
