#pragma once

#include <cstdint>
#include <optional>

#include "arith.hpp"

namespace binomod::primality {

inline constexpr uint64_t kDefaultSearchCap = 10000;

enum class WitnessKind {
  CompositeCounterexample,  // n = p + q for a prime factor q of p
  PrimeWitness,             // n itself is a prime q with C(q,p) != floor(q/p) mod p
};

enum class SearchBranch { None, Even, Odd, Fallback };

// A verified incongruence C(n, p) != floor(n/p) (mod p); only constructed
// after both residues have been recomputed and compared.
struct WitnessReport {
  uint64_t p = 0;
  WitnessKind kind = WitnessKind::CompositeCounterexample;
  uint64_t n = 0;
  Residue binom_residue;
  Residue floor_residue;
  std::optional<uint64_t> progression_index;
  SearchBranch branch = SearchBranch::None;
};

struct PrimalityVerdict {
  uint64_t p = 0;
  bool is_prime = false;
  std::optional<WitnessReport> witness;  // present exactly when composite
};

struct ApPrime {
  uint64_t k = 0;
  uint64_t q = 0;
};

/// Floor division toward negative infinity, so floor_div(-1, 4) == -1.
int64_t floor_div(int64_t n, int64_t p);

/// (C(n,p) - floor(n/p)) mod p, reduced into [0, p); zero iff the congruence holds.
Residue indicator(uint64_t n, uint64_t p);

/// Witness n = p + q with q the smallest prime factor of composite p; also
/// verifies the predicted residue of C(p+q, p) modulo q^x.
WitnessReport composite_counterexample(uint64_t p);

/// Decision procedure: p is prime iff indicator(p+q, p) == 0 for every prime
/// q <= sqrt(p), since a composite p is betrayed by its smallest prime factor.
PrimalityVerdict is_prime_characterization(uint64_t p);

/// Smallest k <= k_max with a + k*d prime; requires gcd(a, d) = 1.
ApPrime dirichlet_prime_in_ap(uint64_t a, uint64_t d, uint64_t k_max);

/// A prime q with C(q,p) != floor(q/p) (mod p), searched along k*l(p)-1 for
/// even p and k*l(p)+(p+r+1) for odd p (r the smallest prime factor), with a
/// direct prime scan as fallback if the odd-branch start is not coprime to l(p).
WitnessReport prime_witness(uint64_t p, uint64_t k_max = kDefaultSearchCap);

}  // namespace binomod::primality
