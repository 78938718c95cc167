#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace binomod {

using u128 = unsigned __int128;

// Failure class decides the C-API status code and the CLI exit class.
enum class ErrorKind {
  Domain,     // precondition violated by the caller
  Overflow,   // result exceeds the 64/128-bit artifact limits
  Budget,     // bounded search or table budget exhausted
  Invariant,  // a numerically verified identity failed; should never happen
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail_domain(const std::string& what);
[[noreturn]] void fail_overflow(const std::string& what);
[[noreturn]] void fail_budget(const std::string& what);
[[noreturn]] void fail_invariant(const std::string& what);

// A congruence class: value in [0, modulus), modulus >= 2.
struct Residue {
  uint64_t value = 0;
  uint64_t modulus = 2;
  friend bool operator==(const Residue&, const Residue&) = default;
};

struct PrimePower {
  uint64_t prime = 0;
  uint32_t exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, every exponent >= 1,
// product of prime^exponent equal to m exactly.
struct Factorization {
  uint64_t m = 0;
  std::vector<PrimePower> factors;
};

std::string u128_to_string(u128 v);

namespace arith {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);
uint64_t mod_inverse(uint64_t a, uint64_t m);  // requires gcd(a, m) = 1
uint64_t isqrt(uint64_t n);

/// Primes <= limit, ascending. Empty for limit < 2.
std::vector<uint64_t> sieve(uint64_t limit);

/// Deterministic for the full 64-bit range (fixed Miller-Rabin base set).
bool is_prime(uint64_t n);

Factorization factorize(uint64_t m);
uint64_t smallest_prime_factor(uint64_t m);

/// Exponent of prime p in m!, by the floor-sum over powers of p.
uint64_t legendre_valuation(uint64_t m, uint64_t p);

/// Largest e with p^e | n; n must be nonzero. Sign-invariant.
uint32_t p_adic_valuation(int64_t n, uint64_t p);

/// Largest c with base^c <= m, integer arithmetic only.
uint32_t ilog(uint64_t base, uint64_t m);

/// Unique residue modulo the product of pairwise coprime moduli.
Residue crt_combine(const std::vector<Residue>& parts);

}  // namespace arith
}  // namespace binomod
