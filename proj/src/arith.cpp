#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace binomod {

void fail_domain(const std::string& what) { throw Error(ErrorKind::Domain, what); }
void fail_overflow(const std::string& what) { throw Error(ErrorKind::Overflow, what); }
void fail_budget(const std::string& what) { throw Error(ErrorKind::Budget, what); }
void fail_invariant(const std::string& what) { throw Error(ErrorKind::Invariant, what); }

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace arith {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

// Extended gcd on the pair (a, m): returns g and x with a*x == g (mod m).
// 128-bit accumulators keep the Bezout coefficients exact for any 64-bit m.
uint64_t egcd_inverse(uint64_t a, uint64_t m, uint64_t* out_gcd) {
  __int128 old_r = a % m, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  *out_gcd = static_cast<uint64_t>(old_r);
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<uint64_t>(x);
}

}  // namespace

uint64_t mod_inverse(uint64_t a, uint64_t m) {
  if (m < 2) fail_domain("mod_inverse: modulus must be >= 2");
  uint64_t g = 0;
  uint64_t x = egcd_inverse(a, m, &g);
  if (g != 1)
    fail_domain("mod_inverse: " + std::to_string(a) + " is not invertible modulo " +
                std::to_string(m));
  return x;
}

uint64_t isqrt(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

std::vector<uint64_t> sieve(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  if (limit > (uint64_t{1} << 31))
    fail_budget("sieve: limit " + std::to_string(limit) + " exceeds the sieve budget (2^31)");
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

bool miller_rabin_witness(uint64_t n, uint64_t a, uint64_t d, int s) {
  uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // First twelve primes: a deterministic base set for all 64-bit inputs.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

const std::vector<uint64_t>& trial_primes() {
  static const std::vector<uint64_t> primes = sieve(1 << 16);
  return primes;
}

// Floyd cycle detection with a fixed polynomial family; deterministic.
uint64_t pollard_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto step = [&](uint64_t v) { return add_mod(mul_mod(v, v, n), c, n); };
    uint64_t x = 2, y = 2, d = 1;
    do {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    } while (d == 1);
    if (d != n) return d;
  }
}

void factor_large(uint64_t n, std::vector<uint64_t>* out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out->push_back(n);
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

}  // namespace

Factorization factorize(uint64_t m) {
  if (m < 2) fail_domain("factorize: m must be >= 2, got " + std::to_string(m));
  Factorization result;
  result.m = m;
  uint64_t rest = m;
  for (uint64_t p : trial_primes()) {
    if (p > rest / p) break;
    if (rest % p != 0) continue;
    uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest > 1) {
    std::vector<uint64_t> large;
    factor_large(rest, &large);
    std::sort(large.begin(), large.end());
    for (size_t i = 0; i < large.size();) {
      size_t j = i;
      while (j < large.size() && large[j] == large[i]) ++j;
      result.factors.push_back({large[i], static_cast<uint32_t>(j - i)});
      i = j;
    }
  }
  return result;
}

uint64_t smallest_prime_factor(uint64_t m) {
  if (m < 2) fail_domain("smallest_prime_factor: m must be >= 2");
  return factorize(m).factors.front().prime;
}

uint64_t legendre_valuation(uint64_t m, uint64_t p) {
  if (!is_prime(p)) fail_domain("legendre_valuation: p=" + std::to_string(p) + " is not prime");
  uint64_t total = 0;
  while (m) {
    m /= p;
    total += m;
  }
  return total;
}

uint32_t p_adic_valuation(int64_t n, uint64_t p) {
  if (n == 0) fail_domain("p_adic_valuation: n=0 has infinite valuation");
  if (!is_prime(p)) fail_domain("p_adic_valuation: p=" + std::to_string(p) + " is not prime");
  uint64_t mag = n < 0 ? ~static_cast<uint64_t>(n) + 1 : static_cast<uint64_t>(n);
  uint32_t e = 0;
  while (mag % p == 0) {
    mag /= p;
    ++e;
  }
  return e;
}

uint32_t ilog(uint64_t base, uint64_t m) {
  if (base < 2) fail_domain("ilog: base must be >= 2");
  if (m < 1) fail_domain("ilog: m must be >= 1");
  uint32_t c = 0;
  uint64_t acc = 1;
  // acc <= m/base is overflow-free and equivalent to acc*base <= m.
  while (acc <= m / base) {
    acc *= base;
    ++c;
  }
  return c;
}

Residue crt_combine(const std::vector<Residue>& parts) {
  if (parts.empty()) fail_domain("crt_combine: empty residue list");
  for (const Residue& r : parts) {
    if (r.modulus < 2) fail_domain("crt_combine: modulus must be >= 2");
    if (r.value >= r.modulus) fail_domain("crt_combine: residue value not reduced");
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if (std::gcd(parts[i].modulus, parts[j].modulus) != 1)
        fail_domain("crt_combine: moduli " + std::to_string(parts[i].modulus) + " and " +
                    std::to_string(parts[j].modulus) + " are not coprime");
    }
  }
  uint64_t value = parts[0].value;
  uint64_t modulus = parts[0].modulus;
  for (size_t i = 1; i < parts.size(); ++i) {
    uint64_t m2 = parts[i].modulus;
    if (static_cast<u128>(modulus) * m2 > UINT64_MAX)
      fail_overflow("crt_combine: combined modulus exceeds 64 bits");
    // value + modulus*t == parts[i].value (mod m2)
    uint64_t delta = add_mod(parts[i].value % m2, m2 - value % m2, m2);
    uint64_t t = mul_mod(delta, mod_inverse(modulus % m2, m2), m2);
    value += modulus * t;
    modulus *= m2;
  }
  return {value, modulus};
}

}  // namespace arith
}  // namespace binomod
