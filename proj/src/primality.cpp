#include "primality.hpp"

#include <numeric>

#include "binom.hpp"
#include "period.hpp"

namespace binomod::primality {

using arith::is_prime;

int64_t floor_div(int64_t n, int64_t p) {
  if (p < 2) fail_domain("floor_div: p must be >= 2");
  int64_t q = n / p;
  if (n % p != 0 && n < 0) --q;
  return q;
}

Residue indicator(uint64_t n, uint64_t p) {
  if (p < 2) fail_domain("indicator: p must be >= 2");
  uint64_t binom_value = binom::binom_mod(n, p, p).value;
  uint64_t floor_value = (n / p) % p;
  return {arith::add_mod(binom_value, p - floor_value, p), p};
}

namespace {

WitnessReport make_verified_report(uint64_t p, WitnessKind kind, uint64_t n,
                                   std::optional<uint64_t> progression_index,
                                   SearchBranch branch) {
  Residue binom_residue = binom::binom_mod(n, p, p);
  Residue floor_residue{(n / p) % p, p};
  if (binom_residue.value == floor_residue.value)
    fail_invariant("witness verification failed: C(" + std::to_string(n) + "," +
                   std::to_string(p) + ") == floor(n/p) (mod " + std::to_string(p) + ")");
  WitnessReport report;
  report.p = p;
  report.kind = kind;
  report.n = n;
  report.binom_residue = binom_residue;
  report.floor_residue = floor_residue;
  report.progression_index = progression_index;
  report.branch = branch;
  return report;
}

}  // namespace

WitnessReport composite_counterexample(uint64_t p) {
  if (p < 4) fail_domain("composite_counterexample: p must be a composite >= 4");
  if (is_prime(p)) fail_domain("composite_counterexample: p=" + std::to_string(p) + " is prime");

  Factorization f = arith::factorize(p);
  uint64_t q = f.factors.front().prime;  // smallest prime factor
  uint32_t x = f.factors.front().exponent;
  uint64_t qx = 1;
  for (uint32_t i = 0; i < x; ++i) qx *= q;
  uint64_t cofactor = p / qx;  // coprime to q

  if (p > UINT64_MAX - q) fail_overflow("composite_counterexample: p + q exceeds 64 bits");
  uint64_t n = p + q;

  // Predicted residue of C(p+q, p) modulo q^x: q^(x-1)*cofactor + 1.
  uint64_t predicted = arith::add_mod(arith::mul_mod(qx / q, cofactor % qx, qx), 1, qx);
  uint64_t actual = binom::binom_mod_prime_power(n, p, q, x).value;
  if (actual != predicted)
    fail_invariant("composite_counterexample: C(p+q,p) mod q^x is " + std::to_string(actual) +
                   ", predicted " + std::to_string(predicted) + " for p=" + std::to_string(p));

  return make_verified_report(p, WitnessKind::CompositeCounterexample, n, std::nullopt,
                              SearchBranch::None);
}

PrimalityVerdict is_prime_characterization(uint64_t p) {
  if (p < 2) fail_domain("is_prime_characterization: p must be >= 2");
  PrimalityVerdict verdict;
  verdict.p = p;
  uint64_t root = arith::isqrt(p);
  for (uint64_t q = 2; q <= root; ++q) {
    if (!is_prime(q)) continue;
    uint64_t n = p + q;
    if (indicator(n, p).value != 0) {
      verdict.is_prime = false;
      verdict.witness = make_verified_report(p, WitnessKind::CompositeCounterexample, n,
                                             std::nullopt, SearchBranch::None);
      return verdict;
    }
  }
  verdict.is_prime = true;
  return verdict;
}

ApPrime dirichlet_prime_in_ap(uint64_t a, uint64_t d, uint64_t k_max) {
  if (d < 1) fail_domain("dirichlet_prime_in_ap: d must be >= 1");
  if (std::gcd(a, d) != 1)
    fail_domain("dirichlet_prime_in_ap: gcd(" + std::to_string(a) + ", " + std::to_string(d) +
                ") != 1, progression contains at most one prime");
  for (uint64_t k = 0; k <= k_max; ++k) {
    u128 candidate = static_cast<u128>(a) + static_cast<u128>(k) * d;
    if (candidate > UINT64_MAX)
      fail_overflow("dirichlet_prime_in_ap: a + k*d exceeds 64 bits at k=" + std::to_string(k));
    uint64_t value = static_cast<uint64_t>(candidate);
    if (value >= 2 && is_prime(value)) return {k, value};
  }
  fail_budget("dirichlet_prime_in_ap: no prime in a + k*d for a=" + std::to_string(a) +
              ", d=" + std::to_string(d) + ", k <= " + std::to_string(k_max));
}

WitnessReport prime_witness(uint64_t p, uint64_t k_max) {
  if (p < 4) fail_domain("prime_witness: p must be a composite >= 4");
  if (is_prime(p)) fail_domain("prime_witness: p=" + std::to_string(p) + " is prime");
  uint64_t l = period::period_length(p).length;

  if (p % 2 == 0) {
    // Witnesses k*l(p) - 1, k >= 1: gcd(l-1, l) = 1, so a prime exists.
    ApPrime found = dirichlet_prime_in_ap(l - 1, l, k_max);
    WitnessReport report = make_verified_report(p, WitnessKind::PrimeWitness, found.q,
                                                found.k + 1, SearchBranch::Even);
    // On this branch the incongruence has a fixed shape: binomial residue 1,
    // floor residue -1.
    if (report.binom_residue.value != 1 % p || report.floor_residue.value != p - 1)
      fail_invariant("prime_witness: even-branch residues (" +
                     std::to_string(report.binom_residue.value) + ", " +
                     std::to_string(report.floor_residue.value) + ") differ from (1, p-1) for p=" +
                     std::to_string(p));
    return report;
  }

  uint64_t r = arith::smallest_prime_factor(p);
  if (p > UINT64_MAX - r - 1) fail_overflow("prime_witness: p + r + 1 exceeds 64 bits");
  uint64_t start = p + r + 1;
  if (std::gcd(start, l) == 1) {
    ApPrime found = dirichlet_prime_in_ap(start, l, k_max);
    return make_verified_report(p, WitnessKind::PrimeWitness, found.q, found.k,
                                SearchBranch::Odd);
  }

  // Start not coprime to l(p): the progression argument does not apply, so
  // scan primes directly for a verified witness.
  uint64_t examined = 0;
  for (uint64_t n = 2; examined < k_max; ++n) {
    if (!is_prime(n)) continue;
    ++examined;
    if (indicator(n, p).value != 0)
      return make_verified_report(p, WitnessKind::PrimeWitness, n, std::nullopt,
                                  SearchBranch::Fallback);
  }
  fail_budget("prime_witness: fallback scan examined " + std::to_string(k_max) +
              " primes without a witness for p=" + std::to_string(p));
}

}  // namespace binomod::primality
