#ifndef LADDER_QST_H
#define LADDER_QST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum LqStatus {
  LQ_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  LQ_STATUS_NULL_POINTER = 1,
  /*
   A parameter is outside its domain.
   */
  LQ_STATUS_INVALID_PARAMETER = 2,
  /*
   An object broke an operation's contract.
   */
  LQ_STATUS_CONTRACT_VIOLATION = 3,
  /*
   The eigensolver or one ensemble realization failed.
   */
  LQ_STATUS_COMPUTATION_FAILED = 4,
  /*
   An output buffer is too small.
   */
  LQ_STATUS_BUFFER_TOO_SMALL = 5,
  /*
   A Rust panic was caught at the boundary.
   */
  LQ_STATUS_PANIC = 6,
} LqStatus;

/*
 Basis selector for [`lq_ladder_hamiltonian`].
 */
typedef enum LqBasis {
  LQ_BASIS_PHYSICAL = 0,
  LQ_BASIS_PLUS_MINUS = 1,
} LqBasis;

/*
 Opaque ladder definition.
 */
typedef struct LqLadder LqLadder;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message of this thread into `buf` (NUL-terminated,
 truncated to `len`). Returns the full message length without the NUL, or
 0 when no error has been recorded.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t lq_last_error_message(char *buf, size_t len);

/*
 Version string of the library, static and NUL-terminated.
 */
const char *lq_version(void);

/*
 Creates a ladder with `n_sites` cells, disorder `w`, detuning `delta` and
 engineered couplings.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum LqStatus lq_ladder_new(size_t n_sites,
                            double w,
                            double delta,
                            bool independent_delta,
                            struct LqLadder **out);

/*
 Same as [`lq_ladder_new`] with `n_sites − 1` explicit couplings.

 # Safety
 `couplings` must point to `n_couplings` readable doubles; `out` as in
 [`lq_ladder_new`].
 */
enum LqStatus lq_ladder_new_explicit(size_t n_sites,
                                     double w,
                                     double delta,
                                     const double *couplings,
                                     size_t n_couplings,
                                     struct LqLadder **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `ladder` must be null or a handle from [`lq_ladder_new`] not yet freed.
 */
void lq_ladder_free(struct LqLadder *ladder);

/*
 Number of cells of a ladder, 0 for a null handle.

 # Safety
 `ladder` must be null or a live handle.
 */
size_t lq_ladder_n_sites(const struct LqLadder *ladder);

/*
 Samples realization `index` under `seed` and writes its dense `2N × 2N`
 Hamiltonian row-major into `out`, which must hold `out_len ≥ 4N²` doubles.

 # Safety
 `ladder` must be a live handle; `out` must point to `out_len` writable
 doubles.
 */
enum LqStatus lq_ladder_hamiltonian(const struct LqLadder *ladder,
                                    uint64_t seed,
                                    uint64_t index,
                                    enum LqBasis basis,
                                    double *out,
                                    size_t out_len);

/*
 Mean and standard error of the end-cell concurrence at `τ` over
 `n_realizations` realizations. `threads = 0` uses the default pool size.

 # Safety
 `ladder` must be a live handle; `mean` and `std_error` writable.
 */
enum LqStatus lq_concurrence_ensemble(const struct LqLadder *ladder,
                                      size_t n_realizations,
                                      uint64_t seed,
                                      size_t threads,
                                      bool exact_revival,
                                      double *mean,
                                      double *std_error);

/*
 Mean `P⁻(t)` and `P⁺(t)` at `n_times` absolute times (ascending,
 nonnegative).

 # Safety
 `times`, `mean_p_minus` and `mean_p_plus` must each point to `n_times`
 doubles (the last two writable); `ladder` must be a live handle.
 */
enum LqStatus lq_leakage_trace(const struct LqLadder *ladder,
                               const double *times,
                               size_t n_times,
                               size_t n_realizations,
                               uint64_t seed,
                               size_t threads,
                               double *mean_p_minus,
                               double *mean_p_plus);

/*
 Concurrence at `τ` of the clean ladder with engineered couplings.

 # Safety
 `concurrence` and `tau` must be writable.
 */
enum LqStatus lq_ordered_baseline(size_t n_sites,
                                  bool exact_revival,
                                  double *concurrence,
                                  double *tau);

/*
 Largest deviation between numeric and closed-form leg-1 populations of the
 uniform ladder over `n_times` times.

 # Safety
 `times` must point to `n_times` doubles; `max_deviation` writable.
 */
enum LqStatus lq_oracle_check(double delta,
                              double gamma,
                              size_t n_sites,
                              const double *times,
                              size_t n_times,
                              double *max_deviation);

/*
 Transfer time in units of `1/J`.

 # Safety
 `tau` must be writable.
 */
enum LqStatus lq_transfer_time(size_t n_sites, bool exact_revival, double *tau);

/*
 Closed-form leg-1 population of the uniform ladder.
 */
double lq_uniform_leg_occupation(double delta, double gamma, double t);

/*
 Effective potentials and rung coupling of one cell.

 # Safety
 The three output pointers must be writable.
 */
enum LqStatus lq_effective_parameters(double eps1,
                                      double eps2,
                                      double gamma,
                                      double *eps_plus,
                                      double *eps_minus,
                                      double *gamma_tilde);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LADDER_QST_H */
