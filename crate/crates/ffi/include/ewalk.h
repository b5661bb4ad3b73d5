/* C interface to the ewalk quantum-walk toolkit. */

#pragma once

/* Generated with cbindgen:0.27.0 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Walk family selector.
 */
typedef enum EwalkKind {
  /**
   * Shift-coin walk U = S C.
   */
  EWALK_KIND_SHIFT_COIN = 0,
  /**
   * Split-step walk W = S+ C S- C.
   */
  EWALK_KIND_SPLIT_STEP = 1,
} EwalkKind;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum EwalkStatus {
  EWALK_STATUS_OK = 0,
  /**
   * A pointer argument was null.
   */
  EWALK_STATUS_NULL_POINTER = 1,
  /**
   * Arguments violate a precondition (bad fraction, |a| > 1, ...).
   */
  EWALK_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Ring size incompatible with the field period.
   */
  EWALK_STATUS_INCOMPATIBLE_RING = 3,
  /**
   * The operator has no Verblunsky representation.
   */
  EWALK_STATUS_NOT_REPRESENTABLE = 4,
  /**
   * Unexpected internal failure.
   */
  EWALK_STATUS_INTERNAL = 5,
} EwalkStatus;

/**
 * Opaque time-evolution handle. Create with `ewalk_sim_new`, advance with
 * `ewalk_sim_step`, read observables with `ewalk_sim_moments` /
 * `ewalk_sim_revival_error`, release with `ewalk_sim_free`.
 */
typedef struct EwalkSimulator EwalkSimulator;

/**
 * Maximal-velocity report: closed form |a|^exponent, the independent
 * numeric maximization, and the historical (4|a|)^m bound.
 */
typedef struct EwalkVelocity {
  double closed_form;
  double numeric;
  double legacy_bound;
  int64_t exponent;
} EwalkVelocity;

/**
 * Revival report: sup-defect, its closed form 2|a|^m resp. 2|a|^{m/2},
 * the identity unit lambda, the per-period phase (-lambda), and the
 * revival period in steps.
 */
typedef struct EwalkRevival {
  double numeric;
  double closed_form;
  double lambda;
  double phase;
  int64_t period;
} EwalkRevival;

/**
 * Closed arc on the unit circle (angles in radians, start <= end).
 */
typedef struct EwalkBandArc {
  double start;
  double end;
  uint32_t multiplicity;
} EwalkBandArc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Maximal group velocity of the electric walk `kind` with coin (a, b)
 * (normalized internally) and field num/den in units of 2*pi.
 *
 * # Safety
 * `out` must point to a writable `EwalkVelocity`.
 */
enum EwalkStatus ewalk_velocity(enum EwalkKind kind,
                                double a_re,
                                double a_im,
                                double b_re,
                                double b_im,
                                int64_t num,
                                int64_t den,
                                struct EwalkVelocity *out);

/**
 * Revival defect of the electric walk.
 *
 * # Safety
 * `out` must point to a writable `EwalkRevival`.
 */
enum EwalkStatus ewalk_revival(enum EwalkKind kind,
                               double a_re,
                               double a_im,
                               double b_re,
                               double b_im,
                               int64_t num,
                               int64_t den,
                               struct EwalkRevival *out);

/**
 * Spectral bands of the electric walk. Writes up to `capacity` arcs into
 * `arcs` and always stores the true arc count in `out_len`; call with
 * `capacity` 0 (and `arcs` possibly null) to query the count first.
 *
 * # Safety
 * `arcs` must point to `capacity` writable `EwalkBandArc`s (may be null
 * when `capacity` is 0); `out_len` must be writable.
 */
enum EwalkStatus ewalk_spectrum_bands(enum EwalkKind kind,
                                      double a_re,
                                      double a_im,
                                      double b_re,
                                      double b_im,
                                      int64_t num,
                                      int64_t den,
                                      uintptr_t theta_samples,
                                      struct EwalkBandArc *arcs,
                                      uintptr_t capacity,
                                      uintptr_t *out_len);

/**
 * Entrywise defect of the electric sieving identity on a ring of `cells`
 * cells (must be a positive multiple of 2*den).
 *
 * # Safety
 * `out_defect` must be writable.
 */
enum EwalkStatus ewalk_electric_sieve_defect(double a_re,
                                             double a_im,
                                             double b_re,
                                             double b_im,
                                             int64_t num,
                                             int64_t den,
                                             uintptr_t cells,
                                             double *out_defect);

/**
 * Continued fraction of p/q: writes up to `capacity` partial quotients and
 * stores the true count in `out_len`.
 *
 * # Safety
 * `quotients` must point to `capacity` writable i64 (may be null when
 * `capacity` is 0); `out_len` must be writable.
 */
enum EwalkStatus ewalk_continued_fraction(int64_t p,
                                          int64_t q,
                                          int64_t *quotients,
                                          uintptr_t capacity,
                                          uintptr_t *out_len);

/**
 * New simulator for the electric walk `kind`, started from the normalized
 * spinor (up, down) at the origin. Returns null on invalid arguments.
 */
struct EwalkSimulator *ewalk_sim_new(enum EwalkKind kind,
                                     double a_re,
                                     double a_im,
                                     double b_re,
                                     double b_im,
                                     int64_t num,
                                     int64_t den,
                                     double up_re,
                                     double up_im,
                                     double down_re,
                                     double down_im);

/**
 * Advance the simulator by `steps` time steps.
 *
 * # Safety
 * `sim` must be a live pointer from `ewalk_sim_new`.
 */
enum EwalkStatus ewalk_sim_step(struct EwalkSimulator *sim, uint64_t steps);

/**
 * Current step count.
 *
 * # Safety
 * `sim` must be a live pointer from `ewalk_sim_new`.
 */
uint64_t ewalk_sim_time(const struct EwalkSimulator *sim);

/**
 * Position mean and standard deviation of the current state.
 *
 * # Safety
 * `sim` must be live; `out_mean` and `out_sigma` must be writable.
 */
enum EwalkStatus ewalk_sim_moments(const struct EwalkSimulator *sim,
                                   double *out_mean,
                                   double *out_sigma);

/**
 * || psi_t - phase * psi_0 || against the initial state.
 *
 * # Safety
 * `sim` must be live; `out_error` must be writable.
 */
enum EwalkStatus ewalk_sim_revival_error(const struct EwalkSimulator *sim,
                                         double phase_re,
                                         double phase_im,
                                         double *out_error);

/**
 * Release a simulator. Passing null is a no-op.
 *
 * # Safety
 * `sim` must be null or a pointer from `ewalk_sim_new` not yet freed.
 */
void ewalk_sim_free(struct EwalkSimulator *sim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
