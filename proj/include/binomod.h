/* binomod: binomial coefficients modulo m, minimal periods of n -> C(n,m) mod m,
 * and prime/composite witnesses built from the congruence C(n,p) = floor(n/p) (mod p).
 *
 * Every function returns a binomod_status; results travel through out
 * parameters or opaque handles. On failure, binomod_last_error() holds a
 * thread-local description until the next failing call on the same thread.
 * All functions are safe to call concurrently; handles are immutable after
 * construction and may be shared between threads, but must be freed once.
 */

#ifndef BINOMOD_H
#define BINOMOD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef BINOMOD_API
#if defined(__GNUC__)
#define BINOMOD_API __attribute__((visibility("default")))
#else
#define BINOMOD_API
#endif
#endif

typedef enum binomod_status {
  BINOMOD_OK = 0,
  BINOMOD_ERR_ARGUMENT = 1,  /* null pointer or malformed call */
  BINOMOD_ERR_DOMAIN = 2,    /* precondition violated */
  BINOMOD_ERR_OVERFLOW = 3,  /* result exceeds the 64/128-bit limits */
  BINOMOD_ERR_BUDGET = 4,    /* bounded search or table budget exhausted */
  BINOMOD_ERR_INVARIANT = 5, /* a verified identity failed numerically */
  BINOMOD_ERR_INTERNAL = 6
} binomod_status;

BINOMOD_API const char* binomod_version(void);
BINOMOD_API const char* binomod_status_name(binomod_status status);
BINOMOD_API const char* binomod_last_error(void);

/* ---- integer foundations ---- */

/* Primes <= limit in ascending order; *out_primes is malloc'd, release with
 * binomod_primes_free. limit < 2 yields a NULL buffer and count 0. */
BINOMOD_API binomod_status binomod_sieve(uint64_t limit, uint64_t** out_primes,
                                         size_t* out_count);
BINOMOD_API void binomod_primes_free(uint64_t* primes);

/* Deterministic over the full 64-bit range. */
BINOMOD_API binomod_status binomod_is_prime(uint64_t n, int* out_is_prime);

typedef struct binomod_factorization binomod_factorization;
BINOMOD_API binomod_status binomod_factorize(uint64_t m, binomod_factorization** out);
BINOMOD_API size_t binomod_factorization_size(const binomod_factorization* f);
BINOMOD_API binomod_status binomod_factorization_entry(const binomod_factorization* f,
                                                       size_t index, uint64_t* out_prime,
                                                       uint32_t* out_exponent);
BINOMOD_API void binomod_factorization_free(binomod_factorization* f);

/* Exponent of prime p in m!. */
BINOMOD_API binomod_status binomod_legendre_valuation(uint64_t m, uint64_t p, uint64_t* out);

/* Largest e with p^e | n; n must be nonzero. */
BINOMOD_API binomod_status binomod_p_adic_valuation(int64_t n, uint64_t p, uint32_t* out);

/* Largest c with base^c <= m (integer arithmetic, exact at power boundaries). */
BINOMOD_API binomod_status binomod_ilog(uint64_t base, uint64_t m, uint32_t* out);

/* Unique residue modulo the product of pairwise coprime moduli. */
BINOMOD_API binomod_status binomod_crt_combine(const uint64_t* values, const uint64_t* moduli,
                                               size_t count, uint64_t* out_value,
                                               uint64_t* out_modulus);

/* ---- binomial engines ---- */

/* Exact C(n, k) as a decimal string (n <= 120). buffer_size must cover the
 * digits plus the terminator; 64 bytes always suffices. */
BINOMOD_API binomod_status binomod_binom_exact(uint64_t n, uint64_t k, char* buffer,
                                               size_t buffer_size);

BINOMOD_API binomod_status binomod_binom_mod_pascal(uint64_t n, uint64_t k, uint64_t m,
                                                    uint64_t* out_value);
BINOMOD_API binomod_status binomod_binom_mod_prime(uint64_t n, uint64_t k, uint64_t p,
                                                   uint64_t* out_value);
BINOMOD_API binomod_status binomod_binom_mod_prime_power(uint64_t n, uint64_t k, uint64_t p,
                                                         uint32_t b, uint64_t* out_value,
                                                         uint64_t* out_modulus);
BINOMOD_API binomod_status binomod_binom_mod(uint64_t n, uint64_t k, uint64_t m,
                                             uint64_t* out_value);
BINOMOD_API binomod_status binomod_binom_mod_integer(int64_t n, uint64_t k, uint64_t m,
                                                     uint64_t* out_value);

/* Carries when adding k and n-k in base p (the p-adic valuation of C(n, k)). */
BINOMOD_API binomod_status binomod_binom_valuation(uint64_t n, uint64_t k, uint64_t p,
                                                   uint64_t* out);

/* ---- periodicity of n -> C(n, m) mod m ---- */

typedef struct binomod_period_profile binomod_period_profile;
BINOMOD_API binomod_status binomod_period_profile_compute(uint64_t m,
                                                          binomod_period_profile** out);
BINOMOD_API uint64_t binomod_period_profile_m(const binomod_period_profile* profile);
BINOMOD_API uint64_t binomod_period_profile_length(const binomod_period_profile* profile);
BINOMOD_API size_t binomod_period_profile_size(const binomod_period_profile* profile);
BINOMOD_API binomod_status binomod_period_profile_entry(const binomod_period_profile* profile,
                                                        size_t index, uint64_t* out_prime,
                                                        uint32_t* out_b, uint32_t* out_c,
                                                        uint32_t* out_exponent);
BINOMOD_API void binomod_period_profile_free(binomod_period_profile* profile);

/* Measured minimal period over a window of length 2*l(m); refuses when
 * l(m) > budget. linear_scan != 0 checks every candidate length instead of
 * only divisors of l(m) (slow; cross-check use). */
BINOMOD_API binomod_status binomod_minimal_period_bruteforce(uint64_t m, uint64_t budget,
                                                             int linear_scan, uint64_t* out);

BINOMOD_API binomod_status binomod_verify_corollaries(uint64_t m, int* out_m_sq_divides,
                                                      int* out_prime_power_iff);

typedef struct binomod_window binomod_window;
BINOMOD_API binomod_status binomod_sequence_window_compute(uint64_t m, int64_t start,
                                                           uint64_t count,
                                                           binomod_window** out);
BINOMOD_API uint64_t binomod_window_m(const binomod_window* window);
BINOMOD_API int64_t binomod_window_start(const binomod_window* window);
BINOMOD_API size_t binomod_window_size(const binomod_window* window);
BINOMOD_API binomod_status binomod_window_value(const binomod_window* window, size_t index,
                                                uint64_t* out_value);
BINOMOD_API void binomod_window_free(binomod_window* window);

/* C(n, m) == C(n-1, m) (mod m) for n coprime to m. */
BINOMOD_API binomod_status binomod_check_shift_coprime(uint64_t n, uint64_t m, int* out_holds);

/* C(m+k, m) == C(l(m)-1-k, m) (mod m) for even m. */
BINOMOD_API binomod_status binomod_check_reflection_even(uint64_t m, int64_t k, int* out_holds);

/* ---- prime characterizations and witnesses ---- */

typedef enum binomod_witness_kind {
  BINOMOD_WITNESS_COMPOSITE_COUNTEREXAMPLE = 0,
  BINOMOD_WITNESS_PRIME_WITNESS = 1
} binomod_witness_kind;

typedef enum binomod_search_branch {
  BINOMOD_BRANCH_NONE = 0,
  BINOMOD_BRANCH_EVEN = 1,
  BINOMOD_BRANCH_ODD = 2,
  BINOMOD_BRANCH_FALLBACK = 3
} binomod_search_branch;

typedef struct binomod_witness binomod_witness;
BINOMOD_API uint64_t binomod_witness_p(const binomod_witness* witness);
BINOMOD_API binomod_witness_kind binomod_witness_get_kind(const binomod_witness* witness);
BINOMOD_API uint64_t binomod_witness_n(const binomod_witness* witness);
BINOMOD_API uint64_t binomod_witness_binom_residue(const binomod_witness* witness);
BINOMOD_API uint64_t binomod_witness_floor_residue(const binomod_witness* witness);
BINOMOD_API int binomod_witness_has_progression_index(const binomod_witness* witness);
BINOMOD_API uint64_t binomod_witness_progression_index(const binomod_witness* witness);
BINOMOD_API binomod_search_branch binomod_witness_get_branch(const binomod_witness* witness);
BINOMOD_API void binomod_witness_free(binomod_witness* witness);

/* Floor division toward negative infinity: binomod_floor_div(-1, 4) == -1. */
BINOMOD_API binomod_status binomod_floor_div(int64_t n, int64_t p, int64_t* out);

/* (C(n,p) - floor(n/p)) mod p in [0, p); zero iff the congruence holds at n. */
BINOMOD_API binomod_status binomod_indicator(uint64_t n, uint64_t p, uint64_t* out);

/* Verified witness n = p + q, q the smallest prime factor of composite p. */
BINOMOD_API binomod_status binomod_composite_counterexample(uint64_t p, binomod_witness** out);

/* Prime verdict for p. When composite and out_witness is non-NULL, a verified
 * witness is returned and must be freed by the caller. */
BINOMOD_API binomod_status binomod_prime_characterization(uint64_t p, int* out_is_prime,
                                                          binomod_witness** out_witness);

/* Smallest k <= k_max with a + k*d prime; requires gcd(a, d) = 1. */
BINOMOD_API binomod_status binomod_dirichlet_prime_in_ap(uint64_t a, uint64_t d, uint64_t k_max,
                                                         uint64_t* out_k, uint64_t* out_prime);

/* Verified PRIME witness q with C(q,p) != floor(q/p) (mod p) for composite p. */
BINOMOD_API binomod_status binomod_prime_witness(uint64_t p, uint64_t k_max,
                                                 binomod_witness** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BINOMOD_H */
