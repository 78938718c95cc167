#pragma once

#include "arith.hpp"

namespace binomod::binom {

// Table budget shared by the prime-power block table and the Lucas factorial
// table; requests beyond it are refused rather than silently degraded.
inline constexpr uint64_t kTableLimit = uint64_t{1} << 22;

/// Exact C(n, k) in 128 bits; n is capped at 120 so no step can wrap.
u128 binom_exact(uint64_t n, uint64_t k);

/// Pascal recurrence reduced mod m at every step. Exact for all n, O(min(k, n-k)) space.
Residue binom_mod_pascal(uint64_t n, uint64_t k, uint64_t m);

/// Carries when adding k and n-k in base p; the p-adic valuation of C(n, k).
uint64_t binom_valuation(uint64_t n, uint64_t k, uint64_t p);

/// Lucas digit decomposition, prime modulus fast path.
Residue binom_mod_prime(uint64_t n, uint64_t k, uint64_t p);

/// C(n, k) mod p^b via partial factorials with multiples of p removed:
/// the carry count supplies the exact power of p, the block products supply the unit.
Residue binom_mod_prime_power(uint64_t n, uint64_t k, uint64_t p, uint32_t b);

/// Production engine: factorize m, solve per prime power, recombine by CRT.
Residue binom_mod(uint64_t n, uint64_t k, uint64_t m);

/// Extension to negative n through C(n, k) = (-1)^k C(k-1-n, k).
Residue binom_mod_integer(int64_t n, uint64_t k, uint64_t m);

}  // namespace binomod::binom
