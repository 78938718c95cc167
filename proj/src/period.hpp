#pragma once

#include <cstdint>
#include <vector>

#include "arith.hpp"

namespace binomod::period {

inline constexpr uint64_t kDefaultWindowBudget = 1000000;

struct PeriodPrime {
  uint64_t p = 0;
  uint32_t b = 0;         // exponent of p in m
  uint32_t c = 0;         // floor(log_p m)
  uint32_t exponent = 0;  // c + b, the exponent of p in the period length
};

// Closed-form minimal period of n -> C(n, m) mod m and where it comes from.
struct PeriodProfile {
  uint64_t m = 0;
  Factorization factorization;
  std::vector<PeriodPrime> per_prime;
  uint64_t length = 0;
};

struct SequenceWindow {
  uint64_t m = 0;
  int64_t start = 0;
  std::vector<uint64_t> values;  // values[i] = C(start+i, m) mod m
};

struct CorollaryCheck {
  bool m_sq_divides = false;   // m^2 | length
  bool prime_power_iff = false;  // length == m^2 exactly when m has one prime factor
};

PeriodProfile period_length(uint64_t m);

SequenceWindow sequence_window(uint64_t m, int64_t start, uint64_t count);

/// Measures the minimal period on a window of length 2*l(m) starting at 0.
/// Divisor scan by default; linear_scan checks every candidate length instead.
uint64_t minimal_period_bruteforce(uint64_t m, uint64_t budget = kDefaultWindowBudget,
                                   bool linear_scan = false);

CorollaryCheck verify_corollaries(uint64_t m);

/// C(n, m) == C(n-1, m) mod m for n coprime to m; false would be an invariant break.
bool check_shift_coprime(uint64_t n, uint64_t m);

/// C(m+k, m) == C(l(m)-1-k, m) mod m for even m and any integer k.
bool check_reflection_even(uint64_t m, int64_t k);

}  // namespace binomod::period
