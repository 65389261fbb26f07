#ifndef LXEBKIT_H
#define LXEBKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result codes. The nonzero codes 2, 3 and 4 match the CLI exit codes.
 */
typedef enum LxebStatus {
  LXEB_STATUS_OK = 0,
  LXEB_STATUS_NULL_POINTER = 1,
  LXEB_STATUS_VALIDATION = 2,
  LXEB_STATUS_GUARD = 3,
  LXEB_STATUS_CHECK = 4,
  LXEB_STATUS_INVALID_UTF8 = 5,
  LXEB_STATUS_PANIC = 6,
} LxebStatus;

/*
 Opaque product state.
 */
typedef struct LxebState LxebState;

/*
 Opaque `m x m` unitary.
 */
typedef struct LxebUnitary LxebUnitary;

/*
 Summary of an LXEB Monte Carlo run.
 */
typedef struct LxebEstimate {
  double fidelity_mean;
  double fidelity_stderr;
  double ref_value;
  uint32_t trials;
  uint32_t samples_per_trial;
} LxebEstimate;

/*
 Message of the last failure on this thread, or null. Owned by the library.
 */
const char *lxeb_last_error(void);

/*
 Library version as a static string.
 */
const char *lxeb_version(void);

/*
 Frees a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void lxeb_string_free(char *s);

/*
 Builds a product state from a JSON state document.
 `cutoff` is used when the document has none; pass 0 to require one.

 # Safety
 `json` must be a nul-terminated string and `out` writable.
 */
enum LxebStatus lxeb_state_from_json(const char *json, uint32_t cutoff, struct LxebState **out);

/*
 # Safety
 `state` must come from [`lxeb_state_from_json`] or be null.
 */
void lxeb_state_free(struct LxebState *state);

/*
 Number of modes of `state`, or 0 for null.

 # Safety
 `state` must be a live handle or null.
 */
uintptr_t lxeb_state_mode_count(const struct LxebState *state);

/*
 `Tr[S_q ρ_(n)^{⊗2}]` for the normalized `n`-particle sector.

 # Safety
 `state` must be a live handle and `out` writable.
 */
enum LxebStatus lxeb_swap_expectation(const struct LxebState *state,
                                      uint32_t n,
                                      uint32_t q,
                                      double *out);

/*
 Probability weight of the `n`-particle sector.

 # Safety
 `state` must be a live handle and `out` writable.
 */
enum LxebStatus lxeb_n_particle_norm(const struct LxebState *state, uint32_t n, double *out);

/*
 Reference value of an arbitrary product state in sector `n`.

 # Safety
 `state` must be a live handle and `out` writable.
 */
enum LxebStatus lxeb_ref_general(const struct LxebState *state, uint32_t n, double *out);

/*
 Collision-free boson sampling reference value. When `exact` is not null
 it receives the rational value as `"p/q"`, freed with [`lxeb_string_free`].

 # Safety
 `out` must be writable; `exact` writable or null.
 */
enum LxebStatus lxeb_ref_bs(uint32_t m, uint32_t n, double *out, char **exact);

/*
 Scattershot reference value with `d` heralded sources.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_ref_sbs(uint32_t m, uint32_t n, uint32_t d, double *out);

/*
 Gaussian boson sampling reference value, `pairs` photon pairs from `d` equal squeezers.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_ref_gbs_uniform(uint32_t m, uint32_t pairs, uint32_t d, double *out);

/*
 Anticoncentration score of collision-free boson sampling.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_ac_bs(uint32_t m, uint32_t n, double *out);

/*
 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_ac_sbs(uint32_t m, uint32_t n, uint32_t d, double *out);

/*
 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_ac_gbs(uint32_t m, uint32_t n, uint32_t d, double *out);

/*
 `E|per U|⁴ / (E|per U|²)²` over Haar `U(n)`, as `"p/q"`.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_hunter_jones(uint32_t n, char **out);

/*
 Irrep coefficient `c_{k,q}` for `n` particles, as `"p/q"`.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_c_coeff(uint32_t n, uint32_t k, uint32_t q, char **out);

/*
 Haar-random `m x m` unitary from trial stream `trial` of `seed`.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_unitary_haar(uint32_t m,
                                  uint64_t seed,
                                  uint64_t trial,
                                  struct LxebUnitary **out);

/*
 # Safety
 `u` must come from [`lxeb_unitary_haar`] or be null.
 */
void lxeb_unitary_free(struct LxebUnitary *u);

/*
 Mode count of `u`, or 0 for null.

 # Safety
 `u` must be a live handle or null.
 */
uintptr_t lxeb_unitary_dim(const struct LxebUnitary *u);

/*
 Entry `(row, col)` of `u`.

 # Safety
 `u` must be a live handle; `re` and `im` writable.
 */
enum LxebStatus lxeb_unitary_entry(const struct LxebUnitary *u,
                                   uintptr_t row,
                                   uintptr_t col,
                                   double *re,
                                   double *im);

/*
 Output probability of `outcome` given `input`; both are occupation
 arrays of length `modes`, which must equal the dimension of `u`.

 # Safety
 `u` must be a live handle, `input` and `outcome` readable for `modes`
 elements and `out` writable.
 */
enum LxebStatus lxeb_bs_probability(const struct LxebUnitary *u,
                                    const uint32_t *input,
                                    const uint32_t *outcome,
                                    uintptr_t modes,
                                    double *out);

/*
 Permanent of a row-major `dim x dim` complex matrix given as separate
 real and imaginary arrays.

 # Safety
 `re` and `im` must be readable for `dim * dim` elements; `out_re` and
 `out_im` writable.
 */
enum LxebStatus lxeb_permanent(const double *re,
                               const double *im,
                               uintptr_t dim,
                               double *out_re,
                               double *out_im);

/*
 LXEB fidelity estimate over `trials` Haar interferometers with
 `samples` exact samples each, collision-free input.

 # Safety
 `out` must be writable.
 */
enum LxebStatus lxeb_experiment(uint32_t m,
                                uint32_t n,
                                uint32_t trials,
                                uint32_t samples,
                                uint64_t seed,
                                struct LxebEstimate *out);

#endif  /* LXEBKIT_H */
