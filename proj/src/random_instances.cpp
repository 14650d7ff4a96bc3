#include "annfit/random_instances.hpp"

#include "annfit/determinant.hpp"

namespace annfit {
namespace {

// rng() % n is deterministic across standard libraries, unlike the std
// distributions; the modulo bias is irrelevant here.
long draw(std::mt19937_64& rng, long n) {
  return static_cast<long>(rng() % static_cast<std::uint64_t>(n));
}

bool coin(std::mt19937_64& rng) { return (rng() & 1) != 0; }

bool is_l_power(Int v, long l) {
  if (v < 0) v = -v;
  if (v == 0) return false;
  while (v % l == 0) v /= l;
  return v == 1;
}

// 1 -+ l^k h: the twist whose 1 - u is a unit multiple of l^k.
ZG banded_twist(const FiniteAbelianGroup& g, long l, std::mt19937_64& rng) {
  long k = 1 + draw(rng, 2);
  ZG u = ZG::scalar(g, Int(1));
  Int step = pow_l(l, k);
  if (coin(rng)) step = -step;
  u.coeff(draw(rng, g.order())) += step;
  return u;
}

// General twist with l-power expanded determinant of 1 - u; falls back to
// the banded family when rejection sampling runs dry.
ZG filtered_twist(const FiniteAbelianGroup& g, long l, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    ZG x(g);
    for (long i = 0; i < g.order(); ++i) x.coeff(i) = draw(rng, 7) - 3;
    if (x.is_zero()) continue;
    Int det = det_division_free(regular_representation(x), Int(0), Int(1));
    if (!is_l_power(det, l)) continue;
    return ZG::scalar(g, Int(1)) - x;
  }
  return banded_twist(g, l, rng);
}

ZG sparse_element(const FiniteAbelianGroup& g, std::mt19937_64& rng) {
  ZG x(g);
  long nonzero = draw(rng, 3);  // 0, 1 or 2 supported group elements
  for (long i = 0; i < nonzero; ++i) {
    Int c = Int(1 + draw(rng, 2));
    if (coin(rng)) c = -c;
    x.coeff(draw(rng, g.order())) = c;
  }
  return x;
}

}  // namespace

ConeSpec random_cone_spec(const FiniteAbelianGroup& g, long l,
                          std::mt19937_64& rng) {
  static const long kRankPairs[][2] = {{1, 1}, {1, 2}, {2, 1}};
  const long* ranks = kRankPairs[draw(rng, 3)];
  long b0 = ranks[0], b1 = ranks[1];

  long family = draw(rng, 4);
  // Rejection sampling over |G| x |G| determinants is only worthwhile for
  // small groups; larger ones stay in the banded families.
  if (g.order() > 6 && family >= 2) family -= 2;
  ConeSpec spec{g, l, b1, b0, zero_gr_matrix<Int>(g, b0, b1), ZG(g), ZG(g)};
  switch (family) {
    case 0: {  // shared banded twist, arbitrary base differential
      spec.u1 = spec.u0 = banded_twist(g, l, rng);
      for (long i = 0; i < b0; ++i)
        for (long j = 0; j < b1; ++j) spec.d.at(i, j) = sparse_element(g, rng);
      break;
    }
    case 1: {  // independent banded twists, zero differential
      spec.u1 = banded_twist(g, l, rng);
      spec.u0 = banded_twist(g, l, rng);
      break;
    }
    case 2: {  // shared filtered twist, arbitrary base differential
      spec.u1 = spec.u0 = filtered_twist(g, l, rng);
      for (long i = 0; i < b0; ++i)
        for (long j = 0; j < b1; ++j) spec.d.at(i, j) = sparse_element(g, rng);
      break;
    }
    default: {  // independent filtered twists, zero differential
      spec.u1 = filtered_twist(g, l, rng);
      spec.u0 = filtered_twist(g, l, rng);
      break;
    }
  }
  return spec;
}

PresentedModule random_presented_module(const FiniteAbelianGroup& g, long l,
                                        long max_exp, std::mt19937_64& rng) {
  if (max_exp < 1) throw BadParameterError("module order budget too small");
  long blocks = 1 + draw(rng, 3);
  std::vector<long> exps;
  long budget = max_exp;
  for (long j = 0; j < blocks && budget > 0; ++j) {
    long a = 1 + draw(rng, std::min<long>(2, budget));
    exps.push_back(a);
    budget -= a;
  }
  blocks = static_cast<long>(exps.size());

  long rows_per_block = 1 + static_cast<long>(g.rank());
  ZGMatrix rel =
      zero_gr_matrix<Int>(g, blocks * rows_per_block, blocks);
  for (long j = 0; j < blocks; ++j) {
    Int order = pow_l(l, exps[j]);
    rel.at(j * rows_per_block, j) = ZG::scalar(g, order);
    for (std::size_t t = 0; t < g.rank(); ++t) {
      // g_t - c with c a unit residue mod l^{a_j}.
      Int c;
      do {
        c = Int(draw(rng, pow_l(l, exps[j]).get_si()));
      } while (c % l == 0);
      ZG r = ZG::basis(g, g.generator(t)) - ZG::scalar(g, c);
      rel.at(j * rows_per_block + 1 + static_cast<long>(t), j) = r;
    }
  }

  PresentedModule pm{g, l, std::move(rel)};
  return reshuffled_presentation(pm, rng);
}

PresentedModule reshuffled_presentation(const PresentedModule& pm,
                                        std::mt19937_64& rng) {
  PresentedModule out = pm;
  const FiniteAbelianGroup& g = pm.group;
  long rows = out.relations.rows(), cols = out.relations.cols();
  if (rows == 0 || cols == 0) return out;
  long mixes = 1 + draw(rng, 4);
  for (long m = 0; m < mixes; ++m) {
    long dst = draw(rng, rows), src = draw(rng, rows);
    if (dst == src) continue;
    ZG z = ZG::basis(g, draw(rng, g.order()));
    if (coin(rng)) z = -z;
    for (long c = 0; c < cols; ++c)
      out.relations.at(dst, c) += z * out.relations.at(src, c);
  }
  if (coin(rng)) {  // append one redundant row
    long src = draw(rng, rows);
    ZG z = sparse_element(g, rng);
    ZGMatrix grown = zero_gr_matrix<Int>(g, rows + 1, cols);
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) grown.at(r, c) = out.relations.at(r, c);
    for (long c = 0; c < cols; ++c)
      grown.at(rows, c) = z * out.relations.at(src, c);
    out.relations = std::move(grown);
  }
  return out;
}

PresentedModule quotient_presentation(const PresentedModule& pm,
                                      std::mt19937_64& rng) {
  PresentedModule out = pm;
  const FiniteAbelianGroup& g = pm.group;
  long rows = out.relations.rows(), cols = out.relations.cols();
  ZGMatrix grown = zero_gr_matrix<Int>(g, rows + 1, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) grown.at(r, c) = out.relations.at(r, c);
  long target = cols > 0 ? draw(rng, cols) : 0;
  ZG extra = sparse_element(g, rng);
  if (extra.is_zero()) extra = ZG::scalar(g, Int(1));
  if (cols > 0) grown.at(rows, target) = extra;
  out.relations = std::move(grown);
  return out;
}

}  // namespace annfit
