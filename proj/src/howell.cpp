#include "annfit/howell.hpp"

#include <algorithm>
#include <deque>

#include "annfit/errors.hpp"

namespace annfit {

Int HowellBasis::span_size() const {
  Int s = 1;
  for (long v : pivot_vals) s *= pow_l(l, n - v);
  return s;
}

namespace {

long first_nonzero(const std::vector<Int>& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return static_cast<long>(i);
  return -1;
}

}  // namespace

HowellBasis howell_form(std::vector<std::vector<Int>> generators, long l, long n,
                        long cols) {
  if (l < 2 || n < 1) throw BadParameterError("howell_form needs l >= 2, n >= 1");
  HowellBasis out;
  out.l = l;
  out.n = n;
  out.cols = cols;
  Int m = pow_l(l, n);

  // pivot column -> normalized row (leading entry exactly l^v).
  std::vector<std::vector<Int>> slot(cols);
  std::vector<long> slot_val(cols, -1);

  std::deque<std::vector<Int>> work;
  for (auto& g : generators) {
    if (static_cast<long>(g.size()) != cols)
      throw BadParameterError("generator width mismatch");
    for (Int& x : g) x = mod_reduce(x, m);
    work.push_back(std::move(g));
  }

  while (!work.empty()) {
    std::vector<Int> r = std::move(work.front());
    work.pop_front();
    for (;;) {
      long j = first_nonzero(r);
      if (j < 0) break;
      long v = l_valuation(r[j], l);
      if (slot_val[j] < 0 || v < slot_val[j]) {
        // Normalize: divide out the unit part of the leading entry.
        Int unit = r[j] / pow_l(l, v);
        Int inv = mod_inverse(unit, m);
        for (Int& x : r) x = mod_reduce(x * inv, m);
        if (slot_val[j] >= 0) work.push_back(std::move(slot[j]));
        // Queue the annihilator shadow l^{n-v} * r for Howell closure.
        if (v > 0) {
          std::vector<Int> shadow(cols);
          Int shift = pow_l(l, n - v);
          for (long c = 0; c < cols; ++c) shadow[c] = mod_reduce(r[c] * shift, m);
          if (first_nonzero(shadow) >= 0) work.push_back(std::move(shadow));
        }
        slot[j] = std::move(r);
        slot_val[j] = v;
        break;
      }
      // v >= slot_val[j]: eliminate the leading entry against the slot row.
      Int q = r[j] / pow_l(l, slot_val[j]);  // exact since v >= slot val
      for (long c = j; c < cols; ++c)
        r[c] = mod_reduce(r[c] - q * slot[j][c], m);
    }
  }

  // Reduce entries above each pivot mod the pivot.
  for (long j = 0; j < cols; ++j) {
    if (slot_val[j] < 0) continue;
    Int pivot = pow_l(l, slot_val[j]);
    for (long i = 0; i < cols; ++i) {
      if (i == j || slot_val[i] < 0 || slot[i][j] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), slot[i][j].get_mpz_t(), pivot.get_mpz_t());
      if (q == 0) continue;
      for (long c = j; c < cols; ++c)
        slot[i][c] = mod_reduce(slot[i][c] - q * slot[j][c], m);
    }
  }

  for (long j = 0; j < cols; ++j) {
    if (slot_val[j] < 0) continue;
    out.rows.push_back(std::move(slot[j]));
    out.pivot_cols.push_back(j);
    out.pivot_vals.push_back(slot_val[j]);
  }
  return out;
}

bool residue_membership(const HowellBasis& basis, std::vector<Int> v) {
  if (static_cast<long>(v.size()) != basis.cols)
    throw BadParameterError("membership vector width mismatch");
  Int m = basis.modulus();
  for (Int& x : v) x = mod_reduce(x, m);
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    long j = basis.pivot_cols[i];
    if (v[j] == 0) continue;
    long val = l_valuation(v[j], basis.l);
    if (val < basis.pivot_vals[i]) return false;
    Int q = v[j] / pow_l(basis.l, basis.pivot_vals[i]);
    for (long c = j; c < basis.cols; ++c)
      v[c] = mod_reduce(v[c] - q * basis.rows[i][c], m);
  }
  return first_nonzero(v) < 0;
}

}  // namespace annfit
