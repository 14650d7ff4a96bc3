#include "annfit/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "annfit/errors.hpp"

namespace annfit {

FiniteAbelianGroup::FiniteAbelianGroup() = default;

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw BadParameterError("invariant factor must be >= 2");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw BadParameterError("invariant factors must form a divisibility chain");
    if (order_ > (1L << 40) / factors_[i])
      throw BadParameterError("group order out of supported range");
    order_ *= factors_[i];
  }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(
    const std::vector<long>& orders) {
  // Collect prime-power multiplicities, then rebuild the divisibility chain
  // by handing the largest remaining power of each prime to the largest
  // invariant factor.
  std::map<long, std::vector<long>> powers;  // prime -> sorted descending exps
  for (long n : orders) {
    if (n < 1) throw BadParameterError("cyclic order must be >= 1");
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      long e = 0;
      while (m % p == 0) m /= p, ++e;
      powers[p].push_back(e);
    }
    if (m > 1) powers[m].push_back(1);
  }
  std::size_t chain_len = 0;
  for (auto& [p, es] : powers) {
    std::sort(es.rbegin(), es.rend());
    chain_len = std::max(chain_len, es.size());
  }
  std::vector<long> factors(chain_len, 1);
  for (auto& [p, es] : powers) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      long pe = 1;
      for (long j = 0; j < es[i]; ++j) pe *= p;
      factors[i] *= pe;  // factors[0] ends up largest
    }
  }
  std::reverse(factors.begin(), factors.end());
  return FiniteAbelianGroup(factors);
}

long FiniteAbelianGroup::exponent() const {
  return factors_.empty() ? 1 : factors_.back();
}

long FiniteAbelianGroup::index_of(const std::vector<long>& exps) const {
  if (exps.size() != factors_.size())
    throw BadParameterError("exponent tuple has wrong length");
  long idx = 0, radix = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    long e = exps[i] % factors_[i];
    if (e < 0) e += factors_[i];
    idx += e * radix;
    radix *= factors_[i];
  }
  return idx;
}

std::vector<long> FiniteAbelianGroup::exps_of(long index) const {
  std::vector<long> exps(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    exps[i] = index % factors_[i];
    index /= factors_[i];
  }
  return exps;
}

long FiniteAbelianGroup::mul(long a, long b) const {
  long idx = 0, radix = 1;
  for (long d : factors_) {
    long ea = a % d, eb = b % d;
    a /= d, b /= d;
    idx += ((ea + eb) % d) * radix;
    radix *= d;
  }
  return idx;
}

long FiniteAbelianGroup::inverse(long a) const {
  long idx = 0, radix = 1;
  for (long d : factors_) {
    long e = a % d;
    a /= d;
    idx += ((d - e) % d) * radix;
    radix *= d;
  }
  return idx;
}

long FiniteAbelianGroup::power(long a, long e) const {
  long idx = 0, radix = 1;
  for (long d : factors_) {
    long ea = a % d;
    a /= d;
    long r = (ea % d) * (e % d) % d;  // |ea*e| can overflow for huge e; reduce first
    r %= d;
    if (r < 0) r += d;
    idx += r * radix;
    radix *= d;
  }
  return idx;
}

long FiniteAbelianGroup::element_order(long a) const {
  long ord = 1;
  for (long d : factors_) {
    long e = a % d;
    a /= d;
    long o = e == 0 ? 1 : d / std::gcd(d, e);
    ord = std::lcm(ord, o);
  }
  return ord;
}

long FiniteAbelianGroup::generator(std::size_t i) const {
  if (i >= factors_.size()) throw BadParameterError("generator index out of range");
  long radix = 1;
  for (std::size_t j = 0; j < i; ++j) radix *= factors_[j];
  return radix;
}

std::vector<long> FiniteAbelianGroup::sylow_exponents(long l) const {
  std::vector<long> exps;
  for (long d : factors_) {
    long e = 0;
    while (d % l == 0) d /= l, ++e;
    exps.push_back(e);
  }
  return exps;
}

bool FiniteAbelianGroup::sylow_cyclic(long l) const {
  auto exps = sylow_exponents(l);
  int nontrivial = 0;
  for (long e : exps)
    if (e > 0) ++nontrivial;
  return nontrivial <= 1;
}

std::vector<long> FiniteAbelianGroup::prime_to_l_orders(long l) const {
  std::vector<long> orders;
  for (long d : factors_) {
    while (d % l == 0) d /= l;
    orders.push_back(d);
  }
  return orders;
}

}  // namespace annfit
