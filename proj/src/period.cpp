#include "period.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "binom.hpp"

namespace binomod::period {

using arith::add_mod;
using arith::ilog;

PeriodProfile period_length(uint64_t m) {
  if (m < 2) fail_domain("period_length: m must be >= 2");
  PeriodProfile profile;
  profile.m = m;
  profile.factorization = arith::factorize(m);
  u128 length = 1;
  for (const PrimePower& pp : profile.factorization.factors) {
    uint32_t c = ilog(pp.prime, m);
    PeriodPrime entry{pp.prime, pp.exponent, c, c + pp.exponent};
    if (c < pp.exponent)
      fail_invariant("period_length: floor(log_p m) < b for p=" + std::to_string(pp.prime));
    for (uint32_t i = 0; i < entry.exponent; ++i) {
      length *= pp.prime;
      if (length > UINT64_MAX)
        fail_overflow("period_length: l(" + std::to_string(m) + ") exceeds 64 bits");
    }
    profile.per_prime.push_back(entry);
  }
  profile.length = static_cast<uint64_t>(length);
  return profile;
}

SequenceWindow sequence_window(uint64_t m, int64_t start, uint64_t count) {
  if (m < 2) fail_domain("sequence_window: m must be >= 2");
  if (count < 1) fail_domain("sequence_window: count must be >= 1");
  if (static_cast<__int128>(start) + static_cast<__int128>(count - 1) > INT64_MAX)
    fail_overflow("sequence_window: window end exceeds 64-bit indices");
  SequenceWindow window;
  window.m = m;
  window.start = start;
  window.values.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    int64_t n = static_cast<int64_t>(static_cast<__int128>(start) + i);
    window.values.push_back(binom::binom_mod_integer(n, m, m).value);
  }
  return window;
}

namespace {

// Terms a_0 .. a_{count-1} of n -> C(n, m) mod m by advancing a Pascal row,
// O(m) per term instead of a full engine query.
std::vector<uint32_t> incremental_window(uint64_t m, uint64_t count) {
  std::vector<uint64_t> row(m + 1, 0);  // row[j] = C(n, j) mod m
  row[0] = 1 % m;
  std::vector<uint32_t> values(count);
  for (uint64_t n = 0; n < count; ++n) {
    values[n] = static_cast<uint32_t>(row[m]);
    for (uint64_t j = m; j >= 1; --j) row[j] = add_mod(row[j], row[j - 1], m);
  }
  return values;
}

std::vector<uint64_t> sorted_divisors(const PeriodProfile& profile) {
  std::vector<uint64_t> divisors{1};
  for (const PeriodPrime& entry : profile.per_prime) {
    size_t base_count = divisors.size();
    uint64_t power = 1;
    for (uint32_t e = 1; e <= entry.exponent; ++e) {
      power *= entry.p;
      for (size_t i = 0; i < base_count; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

bool window_has_period(const std::vector<uint32_t>& window, uint64_t l, uint64_t d) {
  for (uint64_t n = 0; n < l; ++n)
    if (window[n] != window[n + d]) return false;
  return true;
}

}  // namespace

uint64_t minimal_period_bruteforce(uint64_t m, uint64_t budget, bool linear_scan) {
  PeriodProfile profile = period_length(m);
  uint64_t l = profile.length;
  if (l > budget)
    fail_budget("minimal_period_bruteforce: l(" + std::to_string(m) + ")=" + std::to_string(l) +
                " exceeds budget " + std::to_string(budget));

  std::vector<uint32_t> window = incremental_window(m, 2 * l);

  // Spot-check the incremental row against the engine before trusting it.
  std::mt19937_64 rng(0x62696e6f6d6f64ull ^ m);
  for (int i = 0; i < 16; ++i) {
    uint64_t idx = rng() % (2 * l);
    if (window[idx] != binom::binom_mod(idx, m, m).value)
      fail_invariant("minimal_period_bruteforce: incremental window disagrees with engine at n=" +
                     std::to_string(idx));
  }

  if (!window_has_period(window, l, l))
    fail_invariant("minimal_period_bruteforce: l(" + std::to_string(m) +
                   ") is not a period of the sequence");

  if (linear_scan) {
    for (uint64_t d = 1; d < l; ++d)
      if (window_has_period(window, l, d)) return d;
    return l;
  }
  // The sequence is purely periodic, so its minimal period divides every
  // period; scanning divisors of l is exhaustive.
  for (uint64_t d : sorted_divisors(profile)) {
    if (window_has_period(window, l, d)) return d;
  }
  return l;
}

CorollaryCheck verify_corollaries(uint64_t m) {
  PeriodProfile profile = period_length(m);
  u128 m_sq = static_cast<u128>(m) * m;
  CorollaryCheck check;
  check.m_sq_divides = profile.length % m_sq == 0;
  bool is_prime_power = profile.factorization.factors.size() == 1;
  check.prime_power_iff = (static_cast<u128>(profile.length) == m_sq) == is_prime_power;
  return check;
}

bool check_shift_coprime(uint64_t n, uint64_t m) {
  if (m < 2) fail_domain("check_shift_coprime: m must be >= 2");
  if (n < 1) fail_domain("check_shift_coprime: n must be >= 1");
  if (std::gcd(n, m) != 1)
    fail_domain("check_shift_coprime: gcd(" + std::to_string(n) + ", " + std::to_string(m) +
                ") != 1");
  return binom::binom_mod(n, m, m) == binom::binom_mod(n - 1, m, m);
}

bool check_reflection_even(uint64_t m, int64_t k) {
  if (m < 2 || m % 2 != 0)
    fail_domain("check_reflection_even: m=" + std::to_string(m) + " is not even (>= 2)");
  uint64_t l = period_length(m).length;
  __int128 left = static_cast<__int128>(m) + k;  // m <= 2^32 whenever l(m) fits 64 bits
  __int128 right = static_cast<__int128>(l) - 1 - k;
  if (left < INT64_MIN || left > INT64_MAX || right < INT64_MIN || right > INT64_MAX)
    fail_overflow("check_reflection_even: index exceeds signed 64-bit range");
  return binom::binom_mod_integer(static_cast<int64_t>(left), m, m) ==
         binom::binom_mod_integer(static_cast<int64_t>(right), m, m);
}

}  // namespace binomod::period
