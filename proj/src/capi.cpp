#include "binomod.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "arith.hpp"
#include "binom.hpp"
#include "period.hpp"
#include "primality.hpp"

struct binomod_factorization {
  binomod::Factorization value;
};

struct binomod_period_profile {
  binomod::period::PeriodProfile value;
};

struct binomod_window {
  binomod::period::SequenceWindow value;
};

struct binomod_witness {
  binomod::primality::WitnessReport value;
};

namespace {

thread_local std::string g_last_error;

binomod_status fail(binomod_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

binomod_status status_for(binomod::ErrorKind kind) {
  switch (kind) {
    case binomod::ErrorKind::Domain:
      return BINOMOD_ERR_DOMAIN;
    case binomod::ErrorKind::Overflow:
      return BINOMOD_ERR_OVERFLOW;
    case binomod::ErrorKind::Budget:
      return BINOMOD_ERR_BUDGET;
    case binomod::ErrorKind::Invariant:
      return BINOMOD_ERR_INVARIANT;
  }
  return BINOMOD_ERR_INTERNAL;
}

// Runs the body and folds every throw into a status code; the body only
// writes through its out parameters when it completes.
template <typename Body>
binomod_status guarded(Body&& body) {
  try {
    body();
    return BINOMOD_OK;
  } catch (const binomod::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BINOMOD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BINOMOD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BINOMOD_ERR_INTERNAL, "unknown failure");
  }
}

binomod_status require(bool ok, const char* what) {
  return ok ? BINOMOD_OK : fail(BINOMOD_ERR_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* binomod_version(void) { return "1.0.0"; }

const char* binomod_status_name(binomod_status status) {
  switch (status) {
    case BINOMOD_OK:
      return "ok";
    case BINOMOD_ERR_ARGUMENT:
      return "argument";
    case BINOMOD_ERR_DOMAIN:
      return "domain";
    case BINOMOD_ERR_OVERFLOW:
      return "overflow";
    case BINOMOD_ERR_BUDGET:
      return "budget";
    case BINOMOD_ERR_INVARIANT:
      return "invariant";
    case BINOMOD_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* binomod_last_error(void) { return g_last_error.c_str(); }

/* ---- integer foundations ---- */

binomod_status binomod_sieve(uint64_t limit, uint64_t** out_primes, size_t* out_count) {
  if (binomod_status s = require(out_primes && out_count, "sieve: null out parameter"))
    return s;
  return guarded([&] {
    std::vector<uint64_t> primes = binomod::arith::sieve(limit);
    uint64_t* buffer = nullptr;
    if (!primes.empty()) {
      buffer = static_cast<uint64_t*>(std::malloc(primes.size() * sizeof(uint64_t)));
      if (!buffer) throw std::bad_alloc();
      std::memcpy(buffer, primes.data(), primes.size() * sizeof(uint64_t));
    }
    *out_primes = buffer;
    *out_count = primes.size();
  });
}

void binomod_primes_free(uint64_t* primes) { std::free(primes); }

binomod_status binomod_is_prime(uint64_t n, int* out_is_prime) {
  if (binomod_status s = require(out_is_prime != nullptr, "is_prime: null out parameter"))
    return s;
  return guarded([&] { *out_is_prime = binomod::arith::is_prime(n) ? 1 : 0; });
}

binomod_status binomod_factorize(uint64_t m, binomod_factorization** out) {
  if (binomod_status s = require(out != nullptr, "factorize: null out parameter")) return s;
  return guarded([&] {
    binomod::Factorization f = binomod::arith::factorize(m);
    *out = new binomod_factorization{std::move(f)};
  });
}

size_t binomod_factorization_size(const binomod_factorization* f) {
  return f ? f->value.factors.size() : 0;
}

binomod_status binomod_factorization_entry(const binomod_factorization* f, size_t index,
                                           uint64_t* out_prime, uint32_t* out_exponent) {
  if (binomod_status s = require(f && out_prime && out_exponent,
                                 "factorization_entry: null parameter"))
    return s;
  if (index >= f->value.factors.size())
    return fail(BINOMOD_ERR_ARGUMENT, "factorization_entry: index out of range");
  *out_prime = f->value.factors[index].prime;
  *out_exponent = f->value.factors[index].exponent;
  return BINOMOD_OK;
}

void binomod_factorization_free(binomod_factorization* f) { delete f; }

binomod_status binomod_legendre_valuation(uint64_t m, uint64_t p, uint64_t* out) {
  if (binomod_status s = require(out != nullptr, "legendre_valuation: null out parameter"))
    return s;
  return guarded([&] { *out = binomod::arith::legendre_valuation(m, p); });
}

binomod_status binomod_p_adic_valuation(int64_t n, uint64_t p, uint32_t* out) {
  if (binomod_status s = require(out != nullptr, "p_adic_valuation: null out parameter"))
    return s;
  return guarded([&] { *out = binomod::arith::p_adic_valuation(n, p); });
}

binomod_status binomod_ilog(uint64_t base, uint64_t m, uint32_t* out) {
  if (binomod_status s = require(out != nullptr, "ilog: null out parameter")) return s;
  return guarded([&] { *out = binomod::arith::ilog(base, m); });
}

binomod_status binomod_crt_combine(const uint64_t* values, const uint64_t* moduli,
                                   size_t count, uint64_t* out_value, uint64_t* out_modulus) {
  if (binomod_status s = require(values && moduli && out_value && out_modulus,
                                 "crt_combine: null parameter"))
    return s;
  return guarded([&] {
    std::vector<binomod::Residue> parts(count);
    for (size_t i = 0; i < count; ++i) parts[i] = {values[i], moduli[i]};
    binomod::Residue combined = binomod::arith::crt_combine(parts);
    *out_value = combined.value;
    *out_modulus = combined.modulus;
  });
}

/* ---- binomial engines ---- */

binomod_status binomod_binom_exact(uint64_t n, uint64_t k, char* buffer, size_t buffer_size) {
  if (binomod_status s = require(buffer != nullptr, "binom_exact: null buffer")) return s;
  return guarded([&] {
    std::string digits = binomod::u128_to_string(binomod::binom::binom_exact(n, k));
    if (digits.size() + 1 > buffer_size)
      binomod::fail_domain("binom_exact: buffer too small for " +
                           std::to_string(digits.size() + 1) + " bytes");
    std::memcpy(buffer, digits.c_str(), digits.size() + 1);
  });
}

binomod_status binomod_binom_mod_pascal(uint64_t n, uint64_t k, uint64_t m,
                                        uint64_t* out_value) {
  if (binomod_status s = require(out_value != nullptr, "binom_mod_pascal: null out parameter"))
    return s;
  return guarded([&] { *out_value = binomod::binom::binom_mod_pascal(n, k, m).value; });
}

binomod_status binomod_binom_mod_prime(uint64_t n, uint64_t k, uint64_t p,
                                       uint64_t* out_value) {
  if (binomod_status s = require(out_value != nullptr, "binom_mod_prime: null out parameter"))
    return s;
  return guarded([&] { *out_value = binomod::binom::binom_mod_prime(n, k, p).value; });
}

binomod_status binomod_binom_mod_prime_power(uint64_t n, uint64_t k, uint64_t p, uint32_t b,
                                             uint64_t* out_value, uint64_t* out_modulus) {
  if (binomod_status s = require(out_value && out_modulus,
                                 "binom_mod_prime_power: null out parameter"))
    return s;
  return guarded([&] {
    binomod::Residue r = binomod::binom::binom_mod_prime_power(n, k, p, b);
    *out_value = r.value;
    *out_modulus = r.modulus;
  });
}

binomod_status binomod_binom_mod(uint64_t n, uint64_t k, uint64_t m, uint64_t* out_value) {
  if (binomod_status s = require(out_value != nullptr, "binom_mod: null out parameter"))
    return s;
  return guarded([&] { *out_value = binomod::binom::binom_mod(n, k, m).value; });
}

binomod_status binomod_binom_mod_integer(int64_t n, uint64_t k, uint64_t m,
                                         uint64_t* out_value) {
  if (binomod_status s = require(out_value != nullptr,
                                 "binom_mod_integer: null out parameter"))
    return s;
  return guarded([&] { *out_value = binomod::binom::binom_mod_integer(n, k, m).value; });
}

binomod_status binomod_binom_valuation(uint64_t n, uint64_t k, uint64_t p, uint64_t* out) {
  if (binomod_status s = require(out != nullptr, "binom_valuation: null out parameter"))
    return s;
  return guarded([&] { *out = binomod::binom::binom_valuation(n, k, p); });
}

/* ---- periodicity ---- */

binomod_status binomod_period_profile_compute(uint64_t m, binomod_period_profile** out) {
  if (binomod_status s = require(out != nullptr, "period_profile_compute: null out parameter"))
    return s;
  return guarded([&] {
    binomod::period::PeriodProfile profile = binomod::period::period_length(m);
    *out = new binomod_period_profile{std::move(profile)};
  });
}

uint64_t binomod_period_profile_m(const binomod_period_profile* profile) {
  return profile ? profile->value.m : 0;
}

uint64_t binomod_period_profile_length(const binomod_period_profile* profile) {
  return profile ? profile->value.length : 0;
}

size_t binomod_period_profile_size(const binomod_period_profile* profile) {
  return profile ? profile->value.per_prime.size() : 0;
}

binomod_status binomod_period_profile_entry(const binomod_period_profile* profile,
                                            size_t index, uint64_t* out_prime,
                                            uint32_t* out_b, uint32_t* out_c,
                                            uint32_t* out_exponent) {
  if (binomod_status s = require(profile && out_prime && out_b && out_c && out_exponent,
                                 "period_profile_entry: null parameter"))
    return s;
  if (index >= profile->value.per_prime.size())
    return fail(BINOMOD_ERR_ARGUMENT, "period_profile_entry: index out of range");
  const binomod::period::PeriodPrime& entry = profile->value.per_prime[index];
  *out_prime = entry.p;
  *out_b = entry.b;
  *out_c = entry.c;
  *out_exponent = entry.exponent;
  return BINOMOD_OK;
}

void binomod_period_profile_free(binomod_period_profile* profile) { delete profile; }

binomod_status binomod_minimal_period_bruteforce(uint64_t m, uint64_t budget,
                                                 int linear_scan, uint64_t* out) {
  if (binomod_status s = require(out != nullptr,
                                 "minimal_period_bruteforce: null out parameter"))
    return s;
  return guarded([&] {
    *out = binomod::period::minimal_period_bruteforce(m, budget, linear_scan != 0);
  });
}

binomod_status binomod_verify_corollaries(uint64_t m, int* out_m_sq_divides,
                                          int* out_prime_power_iff) {
  if (binomod_status s = require(out_m_sq_divides && out_prime_power_iff,
                                 "verify_corollaries: null out parameter"))
    return s;
  return guarded([&] {
    binomod::period::CorollaryCheck check = binomod::period::verify_corollaries(m);
    *out_m_sq_divides = check.m_sq_divides ? 1 : 0;
    *out_prime_power_iff = check.prime_power_iff ? 1 : 0;
  });
}

binomod_status binomod_sequence_window_compute(uint64_t m, int64_t start, uint64_t count,
                                               binomod_window** out) {
  if (binomod_status s = require(out != nullptr,
                                 "sequence_window_compute: null out parameter"))
    return s;
  return guarded([&] {
    binomod::period::SequenceWindow window = binomod::period::sequence_window(m, start, count);
    *out = new binomod_window{std::move(window)};
  });
}

uint64_t binomod_window_m(const binomod_window* window) {
  return window ? window->value.m : 0;
}

int64_t binomod_window_start(const binomod_window* window) {
  return window ? window->value.start : 0;
}

size_t binomod_window_size(const binomod_window* window) {
  return window ? window->value.values.size() : 0;
}

binomod_status binomod_window_value(const binomod_window* window, size_t index,
                                    uint64_t* out_value) {
  if (binomod_status s = require(window && out_value, "window_value: null parameter"))
    return s;
  if (index >= window->value.values.size())
    return fail(BINOMOD_ERR_ARGUMENT, "window_value: index out of range");
  *out_value = window->value.values[index];
  return BINOMOD_OK;
}

void binomod_window_free(binomod_window* window) { delete window; }

binomod_status binomod_check_shift_coprime(uint64_t n, uint64_t m, int* out_holds) {
  if (binomod_status s = require(out_holds != nullptr,
                                 "check_shift_coprime: null out parameter"))
    return s;
  return guarded([&] { *out_holds = binomod::period::check_shift_coprime(n, m) ? 1 : 0; });
}

binomod_status binomod_check_reflection_even(uint64_t m, int64_t k, int* out_holds) {
  if (binomod_status s = require(out_holds != nullptr,
                                 "check_reflection_even: null out parameter"))
    return s;
  return guarded([&] { *out_holds = binomod::period::check_reflection_even(m, k) ? 1 : 0; });
}

/* ---- prime characterizations and witnesses ---- */

uint64_t binomod_witness_p(const binomod_witness* witness) {
  return witness ? witness->value.p : 0;
}

binomod_witness_kind binomod_witness_get_kind(const binomod_witness* witness) {
  if (witness && witness->value.kind == binomod::primality::WitnessKind::PrimeWitness)
    return BINOMOD_WITNESS_PRIME_WITNESS;
  return BINOMOD_WITNESS_COMPOSITE_COUNTEREXAMPLE;
}

uint64_t binomod_witness_n(const binomod_witness* witness) {
  return witness ? witness->value.n : 0;
}

uint64_t binomod_witness_binom_residue(const binomod_witness* witness) {
  return witness ? witness->value.binom_residue.value : 0;
}

uint64_t binomod_witness_floor_residue(const binomod_witness* witness) {
  return witness ? witness->value.floor_residue.value : 0;
}

int binomod_witness_has_progression_index(const binomod_witness* witness) {
  return witness && witness->value.progression_index.has_value() ? 1 : 0;
}

uint64_t binomod_witness_progression_index(const binomod_witness* witness) {
  return witness && witness->value.progression_index ? *witness->value.progression_index : 0;
}

binomod_search_branch binomod_witness_get_branch(const binomod_witness* witness) {
  if (!witness) return BINOMOD_BRANCH_NONE;
  switch (witness->value.branch) {
    case binomod::primality::SearchBranch::None:
      return BINOMOD_BRANCH_NONE;
    case binomod::primality::SearchBranch::Even:
      return BINOMOD_BRANCH_EVEN;
    case binomod::primality::SearchBranch::Odd:
      return BINOMOD_BRANCH_ODD;
    case binomod::primality::SearchBranch::Fallback:
      return BINOMOD_BRANCH_FALLBACK;
  }
  return BINOMOD_BRANCH_NONE;
}

void binomod_witness_free(binomod_witness* witness) { delete witness; }

binomod_status binomod_floor_div(int64_t n, int64_t p, int64_t* out) {
  if (binomod_status s = require(out != nullptr, "floor_div: null out parameter")) return s;
  return guarded([&] { *out = binomod::primality::floor_div(n, p); });
}

binomod_status binomod_indicator(uint64_t n, uint64_t p, uint64_t* out) {
  if (binomod_status s = require(out != nullptr, "indicator: null out parameter")) return s;
  return guarded([&] { *out = binomod::primality::indicator(n, p).value; });
}

binomod_status binomod_composite_counterexample(uint64_t p, binomod_witness** out) {
  if (binomod_status s = require(out != nullptr,
                                 "composite_counterexample: null out parameter"))
    return s;
  return guarded([&] {
    binomod::primality::WitnessReport report = binomod::primality::composite_counterexample(p);
    *out = new binomod_witness{std::move(report)};
  });
}

binomod_status binomod_prime_characterization(uint64_t p, int* out_is_prime,
                                              binomod_witness** out_witness) {
  if (binomod_status s = require(out_is_prime != nullptr,
                                 "prime_characterization: null out parameter"))
    return s;
  if (out_witness) *out_witness = nullptr;
  return guarded([&] {
    binomod::primality::PrimalityVerdict verdict =
        binomod::primality::is_prime_characterization(p);
    *out_is_prime = verdict.is_prime ? 1 : 0;
    if (out_witness && verdict.witness)
      *out_witness = new binomod_witness{std::move(*verdict.witness)};
  });
}

binomod_status binomod_dirichlet_prime_in_ap(uint64_t a, uint64_t d, uint64_t k_max,
                                             uint64_t* out_k, uint64_t* out_prime) {
  if (binomod_status s = require(out_k && out_prime,
                                 "dirichlet_prime_in_ap: null out parameter"))
    return s;
  return guarded([&] {
    binomod::primality::ApPrime found = binomod::primality::dirichlet_prime_in_ap(a, d, k_max);
    *out_k = found.k;
    *out_prime = found.q;
  });
}

binomod_status binomod_prime_witness(uint64_t p, uint64_t k_max, binomod_witness** out) {
  if (binomod_status s = require(out != nullptr, "prime_witness: null out parameter"))
    return s;
  return guarded([&] {
    binomod::primality::WitnessReport report = binomod::primality::prime_witness(p, k_max);
    *out = new binomod_witness{std::move(report)};
  });
}

}  // extern "C"
