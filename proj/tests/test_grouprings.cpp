#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "annfit/characters.hpp"
#include "annfit/errors.hpp"
#include "annfit/group.hpp"
#include "annfit/group_ring.hpp"
#include "annfit/scalars.hpp"

using namespace annfit;

namespace {

ZG random_zg(const FiniteAbelianGroup& g, std::mt19937_64& rng) {
  ZG x(g);
  for (long i = 0; i < g.order(); ++i)
    x.coeff(i) = Int(static_cast<long>(rng() % 9) - 4);
  return x;
}

}  // namespace

TEST_CASE("group constructor enforces the invariant-factor chain") {
  CHECK(FiniteAbelianGroup().order() == 1);
  CHECK(FiniteAbelianGroup(std::vector<long>{}).order() == 1);
  CHECK(FiniteAbelianGroup(std::vector<long>{}).exponent() == 1);

  FiniteAbelianGroup g({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.rank() == 2);
  CHECK(g.exponent() == 4);

  CHECK_THROWS_AS(FiniteAbelianGroup({1}), BadParameterError);
  CHECK_THROWS_AS(FiniteAbelianGroup({0, 2}), BadParameterError);
  CHECK_THROWS_AS(FiniteAbelianGroup({2, 3}), BadParameterError);
  CHECK_THROWS_AS(FiniteAbelianGroup({4, 2}), BadParameterError);
  CHECK_THROWS_AS(FiniteAbelianGroup({3, 5}), BadParameterError);
}

TEST_CASE("from_cyclic_orders redistributes prime powers") {
  CHECK(FiniteAbelianGroup::from_cyclic_orders({6}).invariant_factors() ==
        std::vector<long>{6});
  CHECK(FiniteAbelianGroup::from_cyclic_orders({2, 3}).invariant_factors() ==
        std::vector<long>{6});
  CHECK(FiniteAbelianGroup::from_cyclic_orders({2, 2}).invariant_factors() ==
        std::vector<long>({2, 2}));
  // C4 x C6 = C2 x C12: the larger power of each prime moves to the last slot.
  CHECK(FiniteAbelianGroup::from_cyclic_orders({4, 6}).invariant_factors() ==
        std::vector<long>({2, 12}));
  CHECK(FiniteAbelianGroup::from_cyclic_orders({6, 4}).invariant_factors() ==
        std::vector<long>({2, 12}));
  CHECK(FiniteAbelianGroup::from_cyclic_orders({12, 18}).invariant_factors() ==
        std::vector<long>({6, 36}));
  CHECK(FiniteAbelianGroup::from_cyclic_orders({}).order() == 1);
  CHECK_THROWS_AS(FiniteAbelianGroup::from_cyclic_orders({0}),
                  BadParameterError);
}

TEST_CASE("index_of and exps_of are mutually inverse, first factor fastest") {
  FiniteAbelianGroup g({2, 4, 8});
  for (long i = 0; i < g.order(); ++i) {
    std::vector<long> e = g.exps_of(i);
    REQUIRE(e.size() == 3);
    CHECK(g.index_of(e) == i);
    CHECK(i == e[0] + 2 * e[1] + 8 * e[2]);
  }
  // Out-of-range exponents wrap rather than throw.
  CHECK(g.index_of({3, -1, 9}) == g.index_of({1, 3, 1}));
}

TEST_CASE("group law matches componentwise addition") {
  FiniteAbelianGroup g({3, 9});
  for (long a = 0; a < g.order(); ++a) {
    CHECK(g.mul(a, g.identity()) == a);
    CHECK(g.mul(a, g.inverse(a)) == g.identity());
    for (long b = 0; b < g.order(); ++b) {
      std::vector<long> ea = g.exps_of(a), eb = g.exps_of(b);
      std::vector<long> sum{(ea[0] + eb[0]) % 3, (ea[1] + eb[1]) % 9};
      CHECK(g.mul(a, b) == g.index_of(sum));
      CHECK(g.mul(a, b) == g.mul(b, a));
    }
  }
}

TEST_CASE("power handles negative exponents and element_order is exact") {
  FiniteAbelianGroup g({2, 12});
  for (long a = 0; a < g.order(); ++a) {
    CHECK(g.power(a, 0) == g.identity());
    CHECK(g.power(a, 1) == a);
    CHECK(g.power(a, -1) == g.inverse(a));
    CHECK(g.power(a, 5) == g.mul(g.power(a, 2), g.power(a, 3)));
    CHECK(g.power(a, -7) == g.inverse(g.power(a, 7)));

    long ord = g.element_order(a);
    CHECK(g.power(a, ord) == g.identity());
    for (long d = 1; d < ord; ++d)
      if (ord % d == 0) CHECK(g.power(a, d) != g.identity());
  }
  // Identity is the unique order-1 element.
  long count1 = 0;
  for (long a = 0; a < g.order(); ++a)
    if (g.element_order(a) == 1) ++count1;
  CHECK(count1 == 1);
}

TEST_CASE("generator(i) has order d_i and generates its factor") {
  FiniteAbelianGroup g({2, 4});
  CHECK(g.generator(0) == g.index_of({1, 0}));
  CHECK(g.generator(1) == g.index_of({0, 1}));
  CHECK(g.element_order(g.generator(0)) == 2);
  CHECK(g.element_order(g.generator(1)) == 4);

  // Products of generator powers enumerate the whole group.
  std::set<long> seen;
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 4; ++j)
      seen.insert(g.mul(g.power(g.generator(0), i), g.power(g.generator(1), j)));
  CHECK(seen.size() == 8);
}

TEST_CASE("sylow data at a prime") {
  FiniteAbelianGroup c12({12});
  CHECK(c12.sylow_exponents(2) == std::vector<long>{2});
  CHECK(c12.sylow_cyclic(2));
  CHECK(c12.sylow_cyclic(3));
  CHECK(c12.prime_to_l_orders(2) == std::vector<long>{3});
  CHECK(c12.prime_to_l_orders(3) == std::vector<long>{4});
  CHECK(c12.prime_to_l_orders(5) == std::vector<long>{12});

  FiniteAbelianGroup g({2, 4});
  CHECK(g.sylow_exponents(2) == std::vector<long>({1, 2}));
  CHECK_FALSE(g.sylow_cyclic(2));
  CHECK(g.sylow_cyclic(3));  // trivial Sylow subgroup counts as cyclic

  FiniteAbelianGroup h({2, 6});
  CHECK_FALSE(h.sylow_cyclic(2));
  CHECK(h.sylow_cyclic(3));
  CHECK(h.prime_to_l_orders(2) == std::vector<long>({1, 3}));
}

TEST_CASE("group ring arithmetic satisfies the ring laws") {
  FiniteAbelianGroup g({2, 4});
  std::mt19937_64 rng(314159);
  ZG one = ZG::scalar(g, Int(1));
  for (int t = 0; t < 20; ++t) {
    ZG a = random_zg(g, rng), b = random_zg(g, rng), c = random_zg(g, rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);  // G abelian
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * one == a);
    CHECK(a - a == ZG(g));
    CHECK(-a + a == ZG(g));
    CHECK(a * Int(3) == a + a + a);
  }
}

TEST_CASE("basis elements multiply through the group law") {
  FiniteAbelianGroup g({3, 3});
  for (long i = 0; i < g.order(); ++i)
    for (long j = 0; j < g.order(); ++j)
      CHECK(ZG::basis(g, i) * ZG::basis(g, j) == ZG::basis(g, g.mul(i, j)));
  CHECK(ZG::basis(g, g.identity()) == ZG::scalar(g, Int(1)));
}

TEST_CASE("mixed-group arithmetic throws") {
  FiniteAbelianGroup g({2}), h({3});
  CHECK_THROWS_AS(ZG::scalar(g, Int(1)) + ZG::scalar(h, Int(1)),
                  BadParameterError);
  CHECK_THROWS_AS(ZG::scalar(g, Int(1)) * ZG::scalar(h, Int(1)),
                  BadParameterError);
  CHECK_THROWS_AS(ZG(g, {Int(1), Int(2), Int(3)}), BadParameterError);
}

TEST_CASE("tau is a ring involution fixing the augmentation") {
  FiniteAbelianGroup g({2, 6});
  std::mt19937_64 rng(99);
  for (long i = 0; i < g.order(); ++i)
    CHECK(ZG::basis(g, i).tau() == ZG::basis(g, g.inverse(i)));
  for (int t = 0; t < 20; ++t) {
    ZG a = random_zg(g, rng), b = random_zg(g, rng);
    CHECK(a.tau().tau() == a);
    CHECK((a + b).tau() == a.tau() + b.tau());
    CHECK((a * b).tau() == a.tau() * b.tau());
    CHECK(a.tau().augmentation() == a.augmentation());
  }
}

TEST_CASE("augmentation is a ring homomorphism") {
  FiniteAbelianGroup g({4});
  std::mt19937_64 rng(7);
  CHECK(ZG::basis(g, 3).augmentation() == 1);
  for (int t = 0; t < 20; ++t) {
    ZG a = random_zg(g, rng), b = random_zg(g, rng);
    CHECK((a + b).augmentation() == a.augmentation() + b.augmentation());
    CHECK((a * b).augmentation() == a.augmentation() * b.augmentation());
  }
}

TEST_CASE("norm element absorbs multiplication") {
  FiniteAbelianGroup g({2, 4});
  ZG norm(g);
  for (long i = 0; i < g.order(); ++i) norm += ZG::basis(g, i);
  CHECK(norm * norm == norm * Int(g.order()));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 10; ++t) {
    ZG a = random_zg(g, rng);
    CHECK(a * norm == norm * a.augmentation());
  }
}

TEST_CASE("pow matches repeated multiplication") {
  FiniteAbelianGroup g({6});
  ZG x = ZG::basis(g, 1) + ZG::scalar(g, Int(2));
  ZG acc = ZG::scalar(g, Int(1));
  for (long e = 0; e <= 6; ++e) {
    CHECK(x.pow(e) == acc);
    acc *= x;
  }
  CHECK_THROWS_AS(x.pow(-1), BadParameterError);
}

TEST_CASE("rational coefficients and to_rational") {
  FiniteAbelianGroup g({3});
  ZG x(g, {Int(1), Int(-2), Int(5)});
  QG q = to_rational(x);
  CHECK(q.coeff(0) == Rat(1));
  CHECK(q.coeff(1) == Rat(-2));
  CHECK(q.coeff(2) == Rat(5));
  QG half = QG::scalar(g, Rat(1, 2));
  CHECK((half + half) == QG::scalar(g, Rat(1)));
  CHECK(half * QG::scalar(g, Rat(2)) == QG::scalar(g, Rat(1)));
}

TEST_CASE("min_l_valuation scans coefficients") {
  FiniteAbelianGroup g({3});
  CHECK(min_l_valuation(ZG(g), 2) == kValuationInfinity);
  CHECK(min_l_valuation(ZG(g, {Int(4), Int(8), Int(0)}), 2) == 2);
  CHECK(min_l_valuation(ZG(g, {Int(4), Int(6), Int(0)}), 2) == 1);
  CHECK(min_l_valuation(ZG(g, {Int(4), Int(3), Int(0)}), 2) == 0);
  QG q(g, {Rat(1, 4), Rat(2), Rat(0)});
  CHECK(min_l_valuation(q, 2) == -2);
}

TEST_CASE("fractional elements normalize to reduced denominator exponent") {
  FiniteAbelianGroup g({2});
  // 4/8 + 8/8 s reduces to (1 + 2 s) / 2.
  FractionalGroupRingElement f(2, 3, ZG(g, {Int(4), Int(8)}));
  CHECK(f.denom_exp == 1);
  CHECK(f.numerator == ZG(g, {Int(1), Int(2)}));
  CHECK_FALSE(f.is_integral());

  FractionalGroupRingElement whole(2, 2, ZG(g, {Int(4), Int(8)}));
  CHECK(whole.denom_exp == 0);
  CHECK(whole.is_integral());
  CHECK(whole.numerator == ZG(g, {Int(1), Int(2)}));

  FractionalGroupRingElement zero(3, 5, ZG(g));
  CHECK(zero.denom_exp == 0);
  CHECK(zero.is_integral());

  // Negative exponent means an l-power numerator scale.
  FractionalGroupRingElement neg(3, -2, ZG(g, {Int(1), Int(0)}));
  CHECK(neg.denom_exp == 0);
  CHECK(neg.numerator == ZG(g, {Int(9), Int(0)}));

  CHECK_THROWS_AS(FractionalGroupRingElement(1, 0, ZG(g)), BadParameterError);
}

TEST_CASE("to_fractional splits l-power denominators and rejects others") {
  FiniteAbelianGroup g({2});
  QG x(g, {Rat(1, 4), Rat(1, 2)});
  FractionalGroupRingElement f = to_fractional(x, 2);
  CHECK(f.denom_exp == 2);
  CHECK(f.numerator == ZG(g, {Int(1), Int(2)}));
  CHECK(f.to_rational() == x);

  CHECK(to_fractional(QG::scalar(g, Rat(6)), 2).is_integral());
  CHECK_THROWS_AS(to_fractional(QG(g, {Rat(1, 3), Rat(0)}), 2),
                  NotIntegralError);
  CHECK_THROWS_AS(to_fractional(QG(g, {Rat(1, 6), Rat(0)}), 2),
                  NotIntegralError);
}

TEST_CASE("character count and validity") {
  FiniteAbelianGroup g({2, 4});
  std::vector<CharacterSpec> chars = all_characters(g);
  CHECK(chars.size() == 8);
  std::set<std::vector<long>> distinct;
  for (const CharacterSpec& chi : chars) {
    validate_character(g, chi);
    distinct.insert(chi.exps);
  }
  CHECK(distinct.size() == 8);

  // chi(g_0) must have order dividing 2: with e = 4 the exponent has to be
  // a multiple of 2.
  CharacterSpec bad{{1, 0}};
  CHECK_THROWS_AS(validate_character(g, bad), BadParameterError);
  CHECK_THROWS_AS(validate_character(g, CharacterSpec{{0}}), BadParameterError);
}

TEST_CASE("character exponent is additive on the group") {
  FiniteAbelianGroup g({2, 4});
  long e = g.exponent();
  for (const CharacterSpec& chi : all_characters(g)) {
    CHECK(character_exponent(g, chi, g.identity()) == 0);
    for (long a = 0; a < g.order(); ++a)
      for (long b = 0; b < g.order(); ++b) {
        long ka = character_exponent(g, chi, a);
        long kb = character_exponent(g, chi, b);
        CHECK(character_exponent(g, chi, g.mul(a, b)) == (ka + kb) % e);
      }
  }
}

TEST_CASE("evaluate_character is linear and multiplicative") {
  FiniteAbelianGroup g({4});
  CharacterSpec chi{{1}};
  QG x(g, {Rat(1), Rat(2), Rat(0), Rat(0)});
  QG y(g, {Rat(0), Rat(1), Rat(-1), Rat(0)});
  CyclotomicValue vx = evaluate_character(x, chi);
  CHECK(vx.coeff(0) == Rat(1));
  CHECK(vx.coeff(1) == Rat(2));
  CHECK(evaluate_character(x + y, chi) ==
        evaluate_character(x, chi) + evaluate_character(y, chi));
  CHECK(evaluate_character(x * y, chi) ==
        evaluate_character(x, chi) * evaluate_character(y, chi));
}

TEST_CASE("cyclotomic arithmetic wraps x^e to 1") {
  CyclotomicValue a(4, {Rat(0), Rat(1), Rat(0), Rat(0)});  // x
  CyclotomicValue b = a * a;                               // x^2
  CHECK(b.coeff(2) == Rat(1));
  CyclotomicValue c = b * b;  // x^4 = 1
  CHECK(c.coeff(0) == Rat(1));
  CHECK(c.coeff(1) == Rat(0));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(CyclotomicValue(0), BadParameterError);
}

TEST_CASE("character_sign_at reads the value at an involution") {
  FiniteAbelianGroup g({4});
  // Element 2 squares to the identity; chi_k(2) = i^{2k} = (-1)^k.
  CHECK(character_sign_at(g, CharacterSpec{{0}}, 2) == 1);
  CHECK(character_sign_at(g, CharacterSpec{{1}}, 2) == -1);
  CHECK(character_sign_at(g, CharacterSpec{{2}}, 2) == 1);
  CHECK_THROWS_AS(character_sign_at(g, CharacterSpec{{1}}, 1),
                  BadParameterError);
}

TEST_CASE("characters jointly separate group elements") {
  FiniteAbelianGroup g({2, 4});
  std::vector<CharacterSpec> chars = all_characters(g);
  for (long a = 0; a < g.order(); ++a)
    for (long b = a + 1; b < g.order(); ++b) {
      bool separated = false;
      for (const CharacterSpec& chi : chars)
        if (character_exponent(g, chi, a) != character_exponent(g, chi, b))
          separated = true;
      CHECK(separated);
    }
}
