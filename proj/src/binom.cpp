#include "binom.hpp"

#include <algorithm>
#include <vector>

namespace binomod::binom {

using arith::add_mod;
using arith::is_prime;
using arith::mod_inverse;
using arith::mul_mod;
using arith::pow_mod;

u128 binom_exact(uint64_t n, uint64_t k) {
  if (n > 120)
    fail_overflow("binom_exact: n=" + std::to_string(n) + " exceeds the 128-bit cap (n <= 120)");
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: the partial product is C(n-k+i, i)
  }
  return result;
}

Residue binom_mod_pascal(uint64_t n, uint64_t k, uint64_t m) {
  if (m < 2) fail_domain("binom_mod_pascal: m must be >= 2");
  if (k > n) return {0, m};
  uint64_t cols = std::min(k, n - k);  // Pascal rows are symmetric
  std::vector<uint64_t> row(cols + 1, 0);
  row[0] = 1 % m;
  for (uint64_t i = 1; i <= n; ++i) {
    for (uint64_t j = std::min(i, cols); j >= 1; --j)
      row[j] = add_mod(row[j], row[j - 1], m);
  }
  return {row[cols], m};
}

uint64_t binom_valuation(uint64_t n, uint64_t k, uint64_t p) {
  if (!is_prime(p)) fail_domain("binom_valuation: p=" + std::to_string(p) + " is not prime");
  if (k > n) fail_domain("binom_valuation: k > n");
  uint64_t r = n - k;
  uint64_t carries = 0, carry = 0;
  while (k || r || carry) {
    carry = (k % p + r % p + carry) >= p ? 1 : 0;
    carries += carry;
    k /= p;
    r /= p;
  }
  return carries;
}

namespace {

// C(a, c) mod p for a, c < p, without tables.
uint64_t digit_binom_direct(uint64_t a, uint64_t c, uint64_t p) {
  if (c > a) return 0;
  c = std::min(c, a - c);
  uint64_t num = 1, den = 1;
  for (uint64_t i = 1; i <= c; ++i) {
    num = mul_mod(num, a - c + i, p);
    den = mul_mod(den, i, p);
  }
  return mul_mod(num, mod_inverse(den, p), p);
}

}  // namespace

Residue binom_mod_prime(uint64_t n, uint64_t k, uint64_t p) {
  if (!is_prime(p)) fail_domain("binom_mod_prime: p=" + std::to_string(p) + " is not prime");
  if (k > n) return {0, p};

  std::vector<uint64_t> fact;
  if (p <= kTableLimit) {
    fact.resize(p);
    fact[0] = 1 % p;
    for (uint64_t i = 1; i < p; ++i) fact[i] = mul_mod(fact[i - 1], i, p);
  }
  auto digit_binom = [&](uint64_t a, uint64_t c) -> uint64_t {
    if (c > a) return 0;
    if (fact.empty()) return digit_binom_direct(a, c, p);
    return mul_mod(fact[a], mod_inverse(mul_mod(fact[c], fact[a - c], p), p), p);
  };

  uint64_t result = 1 % p;
  while (n || k) {
    uint64_t d = digit_binom(n % p, k % p);
    if (d == 0) return {0, p};
    result = mul_mod(result, d, p);
    n /= p;
    k /= p;
  }
  return {result, p};
}

Residue binom_mod_prime_power(uint64_t n, uint64_t k, uint64_t p, uint32_t b) {
  if (!is_prime(p)) fail_domain("binom_mod_prime_power: p=" + std::to_string(p) + " is not prime");
  if (b < 1) fail_domain("binom_mod_prime_power: b must be >= 1");
  u128 pb_wide = 1;
  for (uint32_t i = 0; i < b; ++i) {
    pb_wide *= p;
    if (pb_wide > UINT64_MAX)
      fail_overflow("binom_mod_prime_power: p^b exceeds 64 bits");
  }
  uint64_t pb = static_cast<uint64_t>(pb_wide);
  if (k > n) return {0, pb};

  uint64_t e = binom_valuation(n, k, p);
  if (e >= b) return {0, pb};

  // g[t] = product of 1..t with multiples of p removed, mod p^b.
  // n! = p^(legendre) * prod_j g-chain over floor(n/p^j), an exact identity,
  // so the unit part of C(n, k) is a quotient of such chains.
  uint64_t table_len;
  if (pb <= kTableLimit) {
    table_len = pb;
  } else if (n < kTableLimit) {
    table_len = n + 1;  // every chain argument is <= n < p^b
  } else {
    fail_budget("binom_mod_prime_power: block table for p^b=" + std::to_string(pb) +
                " with n=" + std::to_string(n) + " exceeds the table budget");
  }
  std::vector<uint64_t> g(table_len);
  g[0] = 1 % pb;
  for (uint64_t t = 1; t < table_len; ++t)
    g[t] = (t % p == 0) ? g[t - 1] : mul_mod(g[t - 1], t, pb);

  uint64_t full_block = table_len == pb ? g[pb - 1] : 0;
  auto unit_factorial = [&](uint64_t x) -> uint64_t {
    if (table_len == pb)
      return mul_mod(pow_mod(full_block, x / pb, pb), g[x % pb], pb);
    return g[x];
  };

  uint64_t num = 1 % pb, den = 1 % pb;
  for (uint64_t x = n; x; x /= p) num = mul_mod(num, unit_factorial(x), pb);
  for (uint64_t x = k; x; x /= p) den = mul_mod(den, unit_factorial(x), pb);
  for (uint64_t x = n - k; x; x /= p) den = mul_mod(den, unit_factorial(x), pb);
  uint64_t unit = mul_mod(num, mod_inverse(den, pb), pb);

  uint64_t pe = 1;
  for (uint64_t i = 0; i < e; ++i) pe *= p;  // e < b, so pe < pb
  return {mul_mod(pe, unit, pb), pb};
}

Residue binom_mod(uint64_t n, uint64_t k, uint64_t m) {
  if (m < 2) fail_domain("binom_mod: m must be >= 2");
  Factorization f = arith::factorize(m);
  std::vector<Residue> parts;
  parts.reserve(f.factors.size());
  for (const PrimePower& pp : f.factors)
    parts.push_back(binom_mod_prime_power(n, k, pp.prime, pp.exponent));
  return arith::crt_combine(parts);
}

Residue binom_mod_integer(int64_t n, uint64_t k, uint64_t m) {
  if (n >= 0) return binom_mod(static_cast<uint64_t>(n), k, m);
  // magnitude of n, safe for INT64_MIN
  uint64_t neg = ~static_cast<uint64_t>(n) + 1;
  u128 top = static_cast<u128>(k) + neg - 1;
  if (top > UINT64_MAX)
    fail_overflow("binom_mod_integer: k-1-n exceeds 64 bits");
  Residue r = binom_mod(static_cast<uint64_t>(top), k, m);
  if (k & 1) r.value = (m - r.value) % m;
  return r;
}

}  // namespace binomod::binom
