#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <numeric>

#include "binom.hpp"
#include "doctest.h"
#include "period.hpp"
#include "primality.hpp"

using namespace binomod;
using namespace binomod::primality;

namespace {

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("floor_div rounds toward negative infinity") {
  CHECK(floor_div(12, 5) == 2);
  CHECK(floor_div(-1, 4) == -1);
  CHECK(floor_div(31, 4) == 7);
  CHECK(floor_div(-8, 4) == -2);
  CHECK(floor_div(-9, 4) == -3);
  CHECK(floor_div(0, 7) == 0);
  CHECK(error_kind([] { floor_div(5, 1); }) == ErrorKind::Domain);
  CHECK(error_kind([] { floor_div(5, -3); }) == ErrorKind::Domain);
}

TEST_CASE("indicator vanishes exactly where the congruence holds") {
  CHECK(indicator(12, 5).value == 0);
  CHECK(indicator(6, 4).value == 2);
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 97ull})
    for (uint64_t n = 0; n < p; ++n) CHECK(indicator(n, p).value == 0);
  CHECK(error_kind([] { indicator(5, 1); }) == ErrorKind::Domain);
}

TEST_CASE("composite_counterexample anchors") {
  WitnessReport r4 = composite_counterexample(4);
  CHECK(r4.n == 6);
  CHECK(r4.binom_residue == Residue{3, 4});
  CHECK(r4.floor_residue == Residue{1, 4});
  CHECK(r4.kind == WitnessKind::CompositeCounterexample);
  CHECK_FALSE(r4.progression_index.has_value());

  WitnessReport r9 = composite_counterexample(9);
  CHECK(r9.n == 12);
  CHECK(r9.binom_residue == Residue{4, 9});
  CHECK(r9.floor_residue == Residue{1, 9});

  WitnessReport r6 = composite_counterexample(6);
  CHECK(r6.n == 8);
  CHECK(r6.binom_residue == Residue{4, 6});
  CHECK(r6.floor_residue == Residue{1, 6});
}

TEST_CASE("composite_counterexample verifies for every composite up to 200") {
  for (uint64_t p = 4; p <= 200; ++p) {
    if (arith::is_prime(p)) continue;
    WitnessReport report = composite_counterexample(p);
    CHECK(report.p == p);
    CHECK(report.n == p + arith::smallest_prime_factor(p));
    CHECK(report.binom_residue.value != report.floor_residue.value);
    CHECK(report.binom_residue.value == binom::binom_mod(report.n, p, p).value);
    CHECK(report.floor_residue.value == (report.n / p) % p);
  }
  CHECK(error_kind([] { composite_counterexample(7); }) == ErrorKind::Domain);
  CHECK(error_kind([] { composite_counterexample(3); }) == ErrorKind::Domain);
  CHECK(error_kind([] { composite_counterexample(0); }) == ErrorKind::Domain);
}

TEST_CASE("characterization verdicts match the deterministic primality test") {
  for (uint64_t p = 2; p <= 500; ++p) {
    PrimalityVerdict verdict = is_prime_characterization(p);
    CHECK(verdict.is_prime == arith::is_prime(p));
    CHECK(verdict.is_prime == !verdict.witness.has_value());
    if (verdict.witness) CHECK(verdict.witness->binom_residue.value !=
                               verdict.witness->floor_residue.value);
  }
}

TEST_CASE("characterization anchors") {
  CHECK(is_prime_characterization(7).is_prime);
  CHECK(is_prime_characterization(2).is_prime);
  PrimalityVerdict v15 = is_prime_characterization(15);
  CHECK_FALSE(v15.is_prime);
  REQUIRE(v15.witness.has_value());
  CHECK(v15.witness->n == 18);
  CHECK(v15.witness->binom_residue == Residue{6, 15});
  CHECK(v15.witness->floor_residue == Residue{1, 15});
}

TEST_CASE("dirichlet_prime_in_ap finds the smallest admissible prime") {
  ApPrime a = dirichlet_prime_in_ap(1, 4, 100);
  CHECK(a.k == 1);
  CHECK(a.q == 5);
  ApPrime b = dirichlet_prime_in_ap(15, 16, 100);
  CHECK(b.k == 1);
  CHECK(b.q == 31);
  ApPrime c = dirichlet_prime_in_ap(13, 81, 10);
  CHECK(c.k == 0);
  CHECK(c.q == 13);
  CHECK(error_kind([] { dirichlet_prime_in_ap(6, 9, 10); }) == ErrorKind::Domain);
  CHECK(error_kind([] { dirichlet_prime_in_ap(15, 16, 0); }) == ErrorKind::Budget);
  CHECK(error_kind([] {
          dirichlet_prime_in_ap(UINT64_MAX - 4, UINT64_MAX - 3, 10);
        }) == ErrorKind::Overflow);
}

TEST_CASE("prime_witness anchors") {
  WitnessReport w4 = prime_witness(4);
  CHECK(w4.n == 31);
  CHECK(w4.kind == WitnessKind::PrimeWitness);
  CHECK(w4.branch == SearchBranch::Even);
  REQUIRE(w4.progression_index.has_value());
  CHECK(*w4.progression_index == 2);  // 2 * l(4) - 1 = 31; index 1 gives composite 15
  CHECK(w4.binom_residue == Residue{1, 4});
  CHECK(w4.floor_residue == Residue{3, 4});

  WitnessReport w9 = prime_witness(9);
  CHECK(w9.n == 13);
  CHECK(w9.branch == SearchBranch::Odd);
  REQUIRE(w9.progression_index.has_value());
  CHECK(*w9.progression_index == 0);  // 9 + 3 + 1 = 13 is already prime
  CHECK(w9.binom_residue == Residue{4, 9});
  CHECK(w9.floor_residue == Residue{1, 9});

  WitnessReport w6 = prime_witness(6);
  CHECK(w6.n == 71);  // l(6) - 1
  CHECK(w6.branch == SearchBranch::Even);
  CHECK(w6.binom_residue.value == 1);
  CHECK(w6.floor_residue.value == 5);
}

TEST_CASE("prime_witness verifies for every composite up to 100") {
  for (uint64_t p = 4; p <= 100; ++p) {
    if (arith::is_prime(p)) continue;
    WitnessReport report = prime_witness(p, 10000);
    CHECK(report.kind == WitnessKind::PrimeWitness);
    CHECK(arith::is_prime(report.n));
    CHECK(indicator(report.n, p).value != 0);
    uint64_t l = period::period_length(p).length;
    if (p % 2 == 0) {
      CHECK(report.branch == SearchBranch::Even);
      CHECK(report.n % l == l - 1);
      CHECK(report.binom_residue.value == 1);
      CHECK(report.floor_residue.value == p - 1);
    } else if (report.branch == SearchBranch::Odd) {
      uint64_t r = arith::smallest_prime_factor(p);
      CHECK(report.n % l == (p + r + 1) % l);
    }
  }
}

TEST_CASE("prime_witness rejects primes and reports exhaustion") {
  CHECK(error_kind([] { prime_witness(7); }) == ErrorKind::Domain);
  CHECK(error_kind([] { prime_witness(2); }) == ErrorKind::Domain);
  CHECK(error_kind([] { prime_witness(4, 0); }) == ErrorKind::Budget);
}
