#include "annfit/snf.hpp"

#include <cstdlib>

#include "annfit/errors.hpp"

namespace annfit {

std::vector<Int> SmithDecomposition::diagonal() const {
  std::vector<Int> d;
  long n = std::min(s.rows(), s.cols());
  for (long i = 0; i < n; ++i) d.push_back(s.at(i, i));
  return d;
}

namespace {

void swap_rows(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

void add_row(IntMatrix& m, long dst, long src, const Int& q) {
  if (q == 0) return;
  for (long c = 0; c < m.cols(); ++c) m.at(dst, c) += q * m.at(src, c);
}

void add_col(IntMatrix& m, long dst, long src, const Int& q) {
  if (q == 0) return;
  for (long r = 0; r < m.rows(); ++r) m.at(r, dst) += q * m.at(r, src);
}

void negate_row(IntMatrix& m, long r) {
  for (long c = 0; c < m.cols(); ++c) m.at(r, c) = -m.at(r, c);
}

void negate_col(IntMatrix& m, long c) {
  for (long r = 0; r < m.rows(); ++r) m.at(r, c) = -m.at(r, c);
}

// Quotient rounded to nearest keeps intermediate entries small.
Int near_quot(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * r > abs(b)) q += 1;
  return q;
}

struct Transforms {
  SmithDecomposition* d;
  // Row op on U is mirrored by the inverse column op on U^{-1}; same for V.
  void row_swap(long a, long b) {
    swap_rows(d->s, a, b);
    swap_rows(d->u, a, b);
    swap_cols(d->u_inv, a, b);
  }
  void col_swap(long a, long b) {
    swap_cols(d->s, a, b);
    swap_cols(d->v, a, b);
    swap_rows(d->v_inv, a, b);
  }
  void row_add(long dst, long src, const Int& q) {
    add_row(d->s, dst, src, q);
    add_row(d->u, dst, src, q);
    add_col(d->u_inv, src, dst, -q);
  }
  void col_add(long dst, long src, const Int& q) {
    add_col(d->s, dst, src, q);
    add_col(d->v, dst, src, q);
    add_row(d->v_inv, src, dst, -q);
  }
  void row_negate(long r) {
    negate_row(d->s, r);
    negate_row(d->u, r);
    negate_col(d->u_inv, r);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  long m = a.rows(), n = a.cols();
  SmithDecomposition out;
  out.s = a;
  out.u = IntMatrix::identity(m, Int(0), Int(1));
  out.u_inv = out.u;
  out.v = IntMatrix::identity(n, Int(0), Int(1));
  out.v_inv = out.v;
  IntMatrix& s = out.s;
  Transforms t{&out};

  long k = 0;
  while (k < std::min(m, n)) {
    // Smallest nonzero |entry| of the trailing submatrix becomes the pivot.
    long pr = -1, pc = -1;
    for (long i = k; i < m; ++i)
      for (long j = k; j < n; ++j) {
        if (s.at(i, j) == 0) continue;
        if (pr < 0 || abs(s.at(i, j)) < abs(s.at(pr, pc))) pr = i, pc = j;
      }
    if (pr < 0) break;
    t.row_swap(k, pr);
    t.col_swap(k, pc);

    bool stable = false;
    while (!stable) {
      stable = true;
      for (long i = k + 1; i < m; ++i) {
        if (s.at(i, k) == 0) continue;
        Int q = near_quot(s.at(i, k), s.at(k, k));
        t.row_add(i, k, -q);
        if (s.at(i, k) != 0) {
          // Remainder is strictly smaller than the pivot; promote it.
          t.row_swap(k, i);
          stable = false;
        }
      }
      for (long j = k + 1; j < n; ++j) {
        if (s.at(k, j) == 0) continue;
        Int q = near_quot(s.at(k, j), s.at(k, k));
        t.col_add(j, k, -q);
        if (s.at(k, j) != 0) {
          t.col_swap(k, j);
          stable = false;
        }
      }
      if (!stable) continue;
      // The divisibility chain needs the pivot to divide every remaining
      // entry; fold an offending row in and redo the clearing.
      for (long i = k + 1; i < m && stable; ++i)
        for (long j = k + 1; j < n && stable; ++j)
          if (!mpz_divisible_p(s.at(i, j).get_mpz_t(), s.at(k, k).get_mpz_t())) {
            t.row_add(k, i, Int(1));
            stable = false;
          }
    }
    ++k;
  }
  for (long i = 0; i < std::min(m, n); ++i) {
    if (s.at(i, i) < 0) t.row_negate(i);
    if (s.at(i, i) != 0) out.rank = i + 1;
  }
  return out;
}

namespace {

// Fraction-free (Bareiss) elimination: returns the rank; when last_pivot is
// supplied it receives the final pivot, i.e. the determinant of the pivoted
// rank x rank submatrix.  Intermediate entries are minors of the input.
long bareiss_rank(IntMatrix w, Int* last_pivot) {
  long n = w.rows(), cols = w.cols();
  Int prev(1);
  long r = 0;
  for (long c = 0; c < cols && r < n; ++c) {
    long pr = -1;
    for (long i = r; i < n; ++i)
      if (w.at(i, c) != 0 &&
          (pr < 0 || mpz_cmpabs(w.at(i, c).get_mpz_t(),
                                w.at(pr, c).get_mpz_t()) < 0))
        pr = i;
    if (pr < 0) continue;
    swap_rows(w, r, pr);
    for (long i = r + 1; i < n; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        Int t = w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, c) = 0;
    }
    prev = w.at(r, c);
    ++r;
  }
  if (last_pivot) *last_pivot = prev;
  return r;
}

}  // namespace

long integer_rank(const IntMatrix& a) { return bareiss_rank(a, nullptr); }

LatticeQuotient lattice_quotient(const IntMatrix& a, Int known_exponent) {
  long n = a.rows(), cols = a.cols();
  LatticeQuotient out;
  out.u = IntMatrix::identity(n, Int(0), Int(1));
  out.u_inv = out.u;
  if (n == 0) {
    out.full_rank = true;
    return out;
  }

  // At full rank the last Bareiss pivot is the determinant d of a
  // nonsingular n x n column subset; a caller-supplied exponent multiple
  // certifies full rank by itself and is usually much smaller.
  Int d = abs(known_exponent);
  if (d == 0) {
    if (bareiss_rank(a, &d) < n) return out;
    d = abs(d);
  }
  out.full_rank = true;

  // d Z^n lies inside the lattice (adjugate identity on the pivot columns),
  // and row transforms are unimodular, so d Z^n stays inside at every step.
  // That makes balanced reduction mod d of any entry a lattice-preserving
  // column move against the implicit generators d e_i, which therefore never
  // need explicit columns; gcd with d at the end realizes their effect.
  long total = cols;
  IntMatrix s(n, total, Int(0));
  Int half = d / 2;
  auto reduce_entry = [&](Int& x) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (x > half) x -= d;
  };
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < cols; ++j) {
      s.at(i, j) = a.at(i, j);
      reduce_entry(s.at(i, j));
    }

  auto row_swap = [&](long x, long y) {
    swap_rows(s, x, y);
    swap_rows(out.u, x, y);
    swap_cols(out.u_inv, x, y);
  };
  auto row_add_red = [&](long dst, long src, const Int& q) {
    if (q == 0) return;
    for (long c2 = 0; c2 < total; ++c2) {
      s.at(dst, c2) += q * s.at(src, c2);
      reduce_entry(s.at(dst, c2));
    }
    add_row(out.u, dst, src, q);
    add_col(out.u_inv, src, dst, -q);
  };
  auto col_add_red = [&](long dst, long src, const Int& q) {
    if (q == 0) return;
    for (long r2 = 0; r2 < n; ++r2) {
      s.at(r2, dst) += q * s.at(r2, src);
      reduce_entry(s.at(r2, dst));
    }
  };

  long k = 0;
  while (k < n) {
    long pr = -1, pc = -1;
    for (long i = k; i < n; ++i)
      for (long j = k; j < total; ++j) {
        if (s.at(i, j) == 0) continue;
        if (pr < 0 || mpz_cmpabs(s.at(i, j).get_mpz_t(),
                                 s.at(pr, pc).get_mpz_t()) < 0)
          pr = i, pc = j;
      }
    if (pr < 0) break;  // remaining factors are all d
    row_swap(k, pr);
    swap_cols(s, k, pc);

    bool stable = false;
    while (!stable) {
      stable = true;
      for (long i = k + 1; i < n; ++i) {
        if (s.at(i, k) == 0) continue;
        Int q = near_quot(s.at(i, k), s.at(k, k));
        row_add_red(i, k, -q);
        if (s.at(i, k) != 0) {
          row_swap(k, i);
          stable = false;
        }
      }
      for (long j = k + 1; j < total; ++j) {
        if (s.at(k, j) == 0) continue;
        Int q = near_quot(s.at(k, j), s.at(k, k));
        col_add_red(j, k, -q);
        if (s.at(k, j) != 0) {
          swap_cols(s, k, j);
          stable = false;
        }
      }
      if (!stable) continue;
      for (long i = k + 1; i < n && stable; ++i)
        for (long j = k + 1; j < total && stable; ++j)
          if (!mpz_divisible_p(s.at(i, j).get_mpz_t(),
                               s.at(k, k).get_mpz_t())) {
            row_add_red(k, i, Int(1));
            stable = false;
          }
    }
    ++k;
  }

  // The lattice in the transformed basis is sum p_i Z e_i + d Z^n; gcd with
  // d realizes the absorption, after which it is exactly sum diag_i Z e_i.
  out.diag.assign(n, Int(0));
  for (long i = 0; i < n; ++i) {
    if (i < k)
      mpz_gcd(out.diag[i].get_mpz_t(), s.at(i, i).get_mpz_t(), d.get_mpz_t());
    else
      out.diag[i] = d;
  }

  // Restore the divisibility chain with 2x2 unimodular row moves (columns
  // stay untracked): with x a + y b = g this turns diag(a, b) into
  // diag(g, lcm(a, b)) and each move strictly shrinks an earlier entry.
  bool chained = false;
  while (!chained) {
    chained = true;
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) {
        Int a2 = out.diag[i], b2 = out.diag[j];
        if (mpz_divisible_p(b2.get_mpz_t(), a2.get_mpz_t())) continue;
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                   a2.get_mpz_t(), b2.get_mpz_t());
        Int ag = a2 / g, bg = b2 / g;
        for (long c2 = 0; c2 < n; ++c2) {
          Int ui = out.u.at(i, c2), uj = out.u.at(j, c2);
          out.u.at(i, c2) = x * ui + y * uj;
          out.u.at(j, c2) = -bg * ui + ag * uj;
        }
        for (long r2 = 0; r2 < n; ++r2) {
          Int ci = out.u_inv.at(r2, i), cj = out.u_inv.at(r2, j);
          out.u_inv.at(r2, i) = ag * ci + bg * cj;
          out.u_inv.at(r2, j) = -y * ci + x * cj;
        }
        out.diag[i] = g;
        out.diag[j] = ag * b2;
        chained = false;
      }
  }
  return out;
}

namespace {

// Rational RREF of [a | b]; entry sizes are quotients of minors, so this is
// the growth-safe entry point for kernel and solve computations.
struct RrefData {
  RatMatrix w;
  std::vector<long> pivot_col;     // per eliminated row, ascending
  std::vector<long> pivot_of_col;  // -1 for free columns of the a-part
  long rank = 0;
};

RrefData rational_rref(const IntMatrix& a, const IntMatrix& b) {
  long m = a.rows(), n = a.cols(), k = b.cols();
  RrefData d;
  d.w = RatMatrix(m, n + k, Rat(0));
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) d.w.at(i, j) = Rat(a.at(i, j));
    for (long j = 0; j < k; ++j) d.w.at(i, n + j) = Rat(b.at(i, j));
  }
  d.pivot_of_col.assign(n, -1);
  long row = 0;
  for (long col = 0; col < n && row < m; ++col) {
    long pr = -1;
    for (long i = row; i < m; ++i)
      if (d.w.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (long j = col; j < n + k; ++j) std::swap(d.w.at(pr, j), d.w.at(row, j));
    Rat inv = 1 / d.w.at(row, col);
    for (long j = col; j < n + k; ++j) d.w.at(row, j) *= inv;
    for (long i = 0; i < m; ++i) {
      if (i == row || d.w.at(i, col) == 0) continue;
      Rat f = d.w.at(i, col);
      for (long j = col; j < n + k; ++j) d.w.at(i, j) -= f * d.w.at(row, j);
    }
    d.pivot_of_col[col] = row;
    d.pivot_col.push_back(col);
    ++row;
  }
  d.rank = row;
  return d;
}

Int balanced_mod(const Int& x, const Int& den) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), den.get_mpz_t());
  if (2 * r > den) r -= den;
  return r;
}

// Column echelon of an r x m matrix over Z/den with the column transform
// tracked mod den; everything stays balanced-reduced, so nothing swells.
struct ModEchelon {
  IntMatrix w, t;
  Int den;
  struct Pivot {
    long row, col;
    Int value;
  };
  std::vector<Pivot> pivots;
};

ModEchelon mod_echelon(const IntMatrix& nmat, const Int& den) {
  long r = nmat.rows(), m = nmat.cols();
  ModEchelon e;
  e.den = den;
  e.w = IntMatrix(r, m, Int(0));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < m; ++j) e.w.at(i, j) = balanced_mod(nmat.at(i, j), den);
  e.t = IntMatrix::identity(m, Int(0), Int(1));
  long lead = 0;
  for (long i = 0; i < r && lead < m; ++i) {
    bool more = true;
    bool have = false;
    while (more) {
      more = false;
      long jmin = -1;
      for (long j = lead; j < m; ++j)
        if (e.w.at(i, j) != 0 &&
            (jmin < 0 || mpz_cmpabs(e.w.at(i, j).get_mpz_t(),
                                    e.w.at(i, jmin).get_mpz_t()) < 0))
          jmin = j;
      if (jmin < 0) break;
      have = true;
      if (jmin != lead) {
        swap_cols(e.w, lead, jmin);
        swap_cols(e.t, lead, jmin);
      }
      for (long j = lead + 1; j < m; ++j) {
        if (e.w.at(i, j) == 0) continue;
        Int q = near_quot(e.w.at(i, j), e.w.at(i, lead));
        for (long i2 = 0; i2 < r; ++i2)
          e.w.at(i2, j) =
              balanced_mod(e.w.at(i2, j) - q * e.w.at(i2, lead), den);
        for (long i2 = 0; i2 < m; ++i2)
          e.t.at(i2, j) =
              balanced_mod(e.t.at(i2, j) - q * e.t.at(i2, lead), den);
        if (e.w.at(i, j) != 0) more = true;
      }
    }
    if (have) {
      e.pivots.push_back({i, lead, e.w.at(i, lead)});
      ++lead;
    }
  }
  return e;
}

// One solution of W s = c over Z/den in echelon coordinates, if any.
std::optional<std::vector<Int>> mod_solve(const ModEchelon& e,
                                          std::vector<Int> c) {
  long m = e.w.cols();
  const Int& den = e.den;
  for (Int& x : c) x = balanced_mod(x, den);
  std::vector<Int> s(m, Int(0));
  std::size_t next = 0;
  for (long i = 0; i < e.w.rows(); ++i) {
    if (next < e.pivots.size() && e.pivots[next].row == i) {
      const auto& p = e.pivots[next];
      Int g;
      mpz_gcd(g.get_mpz_t(), p.value.get_mpz_t(), den.get_mpz_t());
      if (!mpz_divisible_p(c[i].get_mpz_t(), g.get_mpz_t()))
        return std::nullopt;
      Int red = den / g;
      Int pg = balanced_mod(p.value / g, red);
      Int inv;
      if (red == 1) {
        inv = 0;
      } else if (!mpz_invert(inv.get_mpz_t(), pg.get_mpz_t(),
                             red.get_mpz_t())) {
        throw InternalCheckError("pivot not invertible after gcd split");
      }
      Int alpha = balanced_mod((c[i] / g) * inv, red);
      s[p.col] = alpha;
      for (long i2 = i; i2 < e.w.rows(); ++i2)
        c[i2] = balanced_mod(c[i2] - alpha * e.w.at(i2, p.col), den);
      ++next;
    }
    if (c[i] != 0) return std::nullopt;
  }
  return s;
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& a) {
  long n = a.cols();
  RrefData rr = rational_rref(a, IntMatrix(a.rows(), 0, Int(0)));
  long r = rr.rank, m = n - r;
  IntMatrix out(n, m, Int(0));
  if (m == 0) return out;
  std::vector<long> free_cols;
  for (long j = 0; j < n; ++j)
    if (rr.pivot_of_col[j] < 0) free_cols.push_back(j);

  // Pivot coordinates of a kernel vector are determined by the free ones:
  // x_P = -(N/den) t with t = x_F, so the kernel is isomorphic to
  // {t : N t = 0 mod den} = den * dual of the lattice [N^T | den I].
  Int den(1);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < m; ++j) {
      const Rat& v = rr.w.at(i, free_cols[j]);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    }
  IntMatrix nmat(r, m, Int(0));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < m; ++j) {
      const Rat& v = rr.w.at(i, free_cols[j]);
      nmat.at(i, j) = Int(den / Int(v.get_den())) * Int(v.get_num());
    }
  IntMatrix gmat(m, r, Int(0));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < r; ++j) gmat.at(i, j) = nmat.at(j, i);
  // Quotient by lattice(N^T) + den Z^m, i.e. the congruence lattice of
  // N t = 0 (mod den) expressed through its dual.
  LatticeQuotient lq = lattice_quotient(gmat, den);
  if (!lq.full_rank)
    throw InternalCheckError("kernel parameter lattice lost full rank");
  for (long j = 0; j < m; ++j) {
    if (!mpz_divisible_p(den.get_mpz_t(), lq.diag[j].get_mpz_t()))
      throw InternalCheckError("kernel invariant factor does not divide den");
    Int scale = den / lq.diag[j];
    std::vector<Int> t(m);
    for (long i2 = 0; i2 < m; ++i2) t[i2] = lq.u.at(j, i2) * scale;
    for (long i = 0; i < r; ++i) {
      Int acc(0);
      for (long i2 = 0; i2 < m; ++i2) acc += nmat.at(i, i2) * t[i2];
      if (!mpz_divisible_p(acc.get_mpz_t(), den.get_mpz_t()))
        throw InternalCheckError("kernel lift is not integral");
      out.at(rr.pivot_col[i], j) = -(acc / den);
    }
    for (long i2 = 0; i2 < m; ++i2) out.at(free_cols[i2], j) = t[i2];
  }
  return out;
}

std::optional<IntMatrix> integer_solve(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw BadParameterError("integer_solve shape mismatch");
  long n = a.cols(), k = b.cols();
  RrefData rr = rational_rref(a, b);
  long r = rr.rank, m = n - r;
  for (long i = r; i < a.rows(); ++i)
    for (long j = 0; j < k; ++j)
      if (rr.w.at(i, n + j) != 0) return std::nullopt;
  std::vector<long> free_cols;
  for (long j = 0; j < n; ++j)
    if (rr.pivot_of_col[j] < 0) free_cols.push_back(j);

  // x_P = (c - N t)/den per rhs column, so x is integral exactly when the
  // congruence N t = c (mod den) has a solution t for the free part.
  Int den(1);
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < m; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
              rr.w.at(i, free_cols[j]).get_den_mpz_t());
    for (long j = 0; j < k; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
              rr.w.at(i, n + j).get_den_mpz_t());
  }
  // Explicit return type: the product would otherwise be deduced as a gmp
  // expression template referencing the dead temporaries.
  auto scaled = [&](const Rat& v) -> Int {
    return Int(den / Int(v.get_den())) * Int(v.get_num());
  };
  IntMatrix nmat(r, m, Int(0));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < m; ++j)
      nmat.at(i, j) = scaled(rr.w.at(i, free_cols[j]));
  ModEchelon ech = mod_echelon(nmat, den);

  IntMatrix x(n, k, Int(0));
  for (long j = 0; j < k; ++j) {
    std::vector<Int> c(r);
    for (long i = 0; i < r; ++i) c[i] = scaled(rr.w.at(i, n + j));
    auto s = mod_solve(ech, c);
    if (!s) return std::nullopt;
    std::vector<Int> t(m, Int(0));
    for (long j2 = 0; j2 < m; ++j2) {
      Int acc(0);
      for (long j3 = 0; j3 < m; ++j3) acc += ech.t.at(j2, j3) * (*s)[j3];
      t[j2] = balanced_mod(acc, den);
    }
    for (long i = 0; i < r; ++i) {
      Int acc = c[i];
      for (long j2 = 0; j2 < m; ++j2) acc -= nmat.at(i, j2) * t[j2];
      if (!mpz_divisible_p(acc.get_mpz_t(), den.get_mpz_t()))
        throw InternalCheckError("congruence solution is not integral");
      x.at(rr.pivot_col[i], j) = acc / den;
    }
    for (long j2 = 0; j2 < m; ++j2) x.at(free_cols[j2], j) = t[j2];
  }
  return x;
}

bool lattice_contains(const IntMatrix& l, const std::vector<Int>& v) {
  if (l.rows() != static_cast<long>(v.size()))
    throw BadParameterError("lattice_contains dimension mismatch");
  IntMatrix b(l.rows(), 1, Int(0));
  for (long i = 0; i < l.rows(); ++i) b.at(i, 0) = v[i];
  return integer_solve(l, b).has_value();
}

bool lattices_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return integer_solve(a, b).has_value() && integer_solve(b, a).has_value();
}

}  // namespace annfit
