#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <random>

#include "binom.hpp"
#include "doctest.h"

using namespace binomod;
using namespace binomod::binom;

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

// Exact falling-factorial evaluation of C(n, k) for any integer n, small k:
// prod_{i=0}^{k-1} (n - i) / k!, always an exact division.
int64_t binom_falling(int64_t n, uint64_t k) {
  __int128 num = 1;
  for (uint64_t i = 0; i < k; ++i) num *= n - static_cast<int64_t>(i);
  for (uint64_t i = 1; i <= k; ++i) num /= static_cast<__int128>(i);
  return static_cast<int64_t>(num);
}

uint64_t mod_of(int64_t v, uint64_t m) {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

}  // namespace

TEST_CASE("binom_exact handles small anchors and the 128-bit cap") {
  CHECK(binom_exact(6, 4) == 15);
  CHECK(binom_exact(12, 5) == 792);
  CHECK(binom_exact(5, 9) == 0);
  CHECK(binom_exact(0, 0) == 1);
  CHECK(binom_exact(120, 0) == 1);
  CHECK(binom_exact(120, 120) == 1);
  CHECK(binom_exact(120, 60) == binom_exact(119, 59) + binom_exact(119, 60));
  CHECK(error_kind([] { binom_exact(121, 60); }) == ErrorKind::Overflow);
}

TEST_CASE("binom_exact equals the additive recurrence everywhere it is defined") {
  for (uint64_t n = 1; n <= 40; ++n)
    for (uint64_t k = 1; k <= n; ++k)
      CHECK(binom_exact(n, k) == binom_exact(n - 1, k - 1) + binom_exact(n - 1, k));
}

TEST_CASE("binom_mod_pascal anchors") {
  CHECK(binom_mod_pascal(6, 4, 4) == Residue{3, 4});
  CHECK(binom_mod_pascal(12, 5, 5) == Residue{2, 5});
  for (uint64_t n : {0ull, 1ull, 7ull, 100ull})
    CHECK(binom_mod_pascal(n, 0, 7).value == 1);
  CHECK(binom_mod_pascal(5, 9, 3).value == 0);
  CHECK(binom_mod_pascal(10, 4, 2).value == binom_exact(10, 4) % 2);
  CHECK(error_kind([] { binom_mod_pascal(5, 2, 1); }) == ErrorKind::Domain);
}

TEST_CASE("binom_valuation counts carries and matches exact valuations") {
  CHECK(binom_valuation(6, 4, 2) == 0);
  CHECK(binom_valuation(4, 2, 2) == 1);
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) CHECK(binom_valuation(p, 1, p) == 1);
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    for (uint64_t n = 0; n <= 40; ++n) {
      for (uint64_t k = 0; k <= n; ++k) {
        auto exact = static_cast<int64_t>(binom_exact(n, k));
        CHECK(binom_valuation(n, k, p) == arith::p_adic_valuation(exact, p));
      }
    }
  }
  CHECK(error_kind([] { binom_valuation(3, 5, 2); }) == ErrorKind::Domain);
  CHECK(error_kind([] { binom_valuation(6, 4, 6); }) == ErrorKind::Domain);
}

TEST_CASE("binom_mod_prime anchors and oracle agreement") {
  CHECK(binom_mod_prime(7, 3, 5).value == 0);
  CHECK(binom_mod_prime(12, 5, 5).value == 2);
  CHECK(binom_mod_prime(10, 5, 7).value == 0);
  CHECK(binom_mod_prime(3, 5, 7).value == 0);
  std::mt19937_64 rng(10);
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull}) {
    for (int i = 0; i < 300; ++i) {
      uint64_t n = rng() % 200;
      uint64_t k = rng() % 220;
      CHECK(binom_mod_prime(n, k, p) == binom_mod_pascal(n, k, p));
    }
  }
  CHECK(error_kind([] { binom_mod_prime(5, 2, 6); }) == ErrorKind::Domain);
}

TEST_CASE("binom_mod_prime takes the table-free path for huge primes") {
  // 2^32 + 15 is prime and far beyond the factorial-table cap, so digits are
  // combined directly; small n make the answer exact binomials.
  const uint64_t p = 4294967311ull;
  CHECK(binom_mod_prime(10, 3, p).value == 120);
  CHECK(binom_mod_prime(52, 5, p).value == 2598960);
  CHECK(binom_mod_prime(p, 1, p).value == 0);
}

TEST_CASE("binom_mod_prime_power anchors and cross-engine agreement") {
  CHECK(binom_mod_prime_power(6, 4, 2, 2) == Residue{3, 4});
  CHECK(binom_mod_prime_power(9, 4, 3, 2) == Residue{0, 9});
  for (auto [p, b] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 3}, {3, 2}, {5, 2}, {2, 6}}) {
    uint64_t pb = 1;
    for (uint32_t i = 0; i < b; ++i) pb *= p;
    for (uint64_t n = 0; n <= 120; ++n)
      for (uint64_t k = 0; k <= n; ++k)
        CHECK(binom_mod_prime_power(n, k, p, b) == binom_mod_pascal(n, k, pb));
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    uint64_t n = rng() % 300;
    uint64_t k = rng() % 300;
    uint64_t p = std::vector<uint64_t>{2, 3, 5, 7, 11, 13}[rng() % 6];
    CHECK(binom_mod_prime_power(n, k, p, 1) == binom_mod_prime(n, k, p));
  }
  CHECK(error_kind([] { binom_mod_prime_power(5, 2, 3, 41); }) == ErrorKind::Overflow);
  CHECK(error_kind([] { binom_mod_prime_power(5, 2, 4, 2); }) == ErrorKind::Domain);
  CHECK(error_kind([] { binom_mod_prime_power(5, 2, 3, 0); }) == ErrorKind::Domain);
  CHECK(error_kind([] {
          binom_mod_prime_power(uint64_t{1} << 22, 1, 2, 23);
        }) == ErrorKind::Budget);
}

TEST_CASE("binom_mod anchors and engine equivalence") {
  CHECK(binom_mod(6, 4, 4) == Residue{3, 4});
  CHECK(binom_mod(31, 4, 4).value == 1);
  CHECK(binom_mod(13, 9, 9).value == 4);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    uint64_t n = rng() % 401;
    uint64_t k = rng() % (n + 1);
    uint64_t m = 2 + rng() % 119;
    CHECK(binom_mod(n, k, m) == binom_mod_pascal(n, k, m));
  }
}

TEST_CASE("binom_mod is symmetric in k and n-k") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    uint64_t n = rng() % 301;
    uint64_t k = n ? rng() % (n + 1) : 0;
    uint64_t m = 2 + rng() % 49;
    CHECK(binom_mod(n, k, m) == binom_mod(n, n - k, m));
  }
}

TEST_CASE("binom_mod_integer matches exact falling-factorial values") {
  CHECK(binom_mod_integer(-1, 4, 4).value == 1);
  CHECK(binom_mod_integer(-2, 3, 5).value == 1);
  for (uint64_t m = 2; m <= 12; ++m) CHECK(binom_mod_integer(0, m, m).value == 0);
  for (int64_t n = -50; n < 0; ++n)
    for (uint64_t k = 0; k <= 10; ++k)
      for (uint64_t m = 2; m <= 12; ++m)
        CHECK(binom_mod_integer(n, k, m).value == mod_of(binom_falling(n, k), m));
}

TEST_CASE("binom_mod_integer satisfies the additive recurrence across zero") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 800; ++i) {
    int64_t n = static_cast<int64_t>(rng() % 201) - 100;
    uint64_t k = 1 + rng() % 12;
    uint64_t m = 2 + rng() % 30;
    uint64_t lhs = binom_mod_integer(n, k, m).value;
    uint64_t rhs = arith::add_mod(binom_mod_integer(n - 1, k - 1, m).value,
                                  binom_mod_integer(n - 1, k, m).value, m);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("binom_mod_integer rejects an index that cannot be represented") {
  CHECK(error_kind([] { binom_mod_integer(INT64_MIN, UINT64_MAX, 7); }) == ErrorKind::Overflow);
}
