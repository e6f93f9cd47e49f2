#ifndef ENTX_H
#define ENTX_H

/* Generated by cbindgen from crates/ffi/src. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EntxStatus {
  ENTX_STATUS_OK = 0,
  /**
   * A parameter is out of range or sizes do not match.
   */
  ENTX_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A required pointer was null.
   */
  ENTX_STATUS_NULL_POINTER = 2,
  /**
   * The matrix is not Hermitian, not positive or not unit trace.
   */
  ENTX_STATUS_INVALID_STATE = 3,
  /**
   * Degenerate ground state, non-unique fixed point or no convergence.
   */
  ENTX_STATUS_NUMERICAL = 4,
  /**
   * A panic was caught at the boundary.
   */
  ENTX_STATUS_INTERNAL = 5,
} EntxStatus;

/**
 * Validated density matrix.
 */
typedef struct EntxDensityMatrix EntxDensityMatrix;

/**
 * Probe angles maximizing the extracted concurrence.
 */
typedef struct EntxProbeOptimum {
  double theta_left;
  double phi_left;
  double theta_right;
  double phi_right;
  double concurrence;
  size_t evaluations;
} EntxProbeOptimum;

/**
 * Summary of the fixed point of the repeated-collision channel.
 */
typedef struct EntxFixedPoint {
  double concurrence;
  /**
   * Trace distance between one more collision and the fixed state.
   */
  double residual;
  /**
   * Power-iteration steps until successive iterates agreed within 1e-12.
   */
  size_t iterations;
  /**
   * Trace distance between the linear solve and power iteration.
   */
  double cross_check_distance;
} EntxFixedPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a density matrix from row-major real and imaginary parts.
 *
 * `len` must equal `4^n_qubits`. The matrix is validated for Hermiticity,
 * unit trace and positivity.
 *
 * # Safety
 * `re` and `im` must point to `len` readable doubles; `out` must be
 * writable.
 */
enum EntxStatus entx_density_from_entries(size_t n_qubits,
                                          const double *re,
                                          const double *im,
                                          size_t len,
                                          struct EntxDensityMatrix **out);

/**
 * Two-site reduced state of a chain with correlators `g_xx`, `g_zz`.
 *
 * # Safety
 * `out` must be writable.
 */
enum EntxStatus entx_pair_state(double g_xx, double g_zz, struct EntxDensityMatrix **out);

/**
 * Computational basis state `|index⟩` on `n_qubits` qubits, big-endian.
 *
 * # Safety
 * `out` must be writable.
 */
enum EntxStatus entx_basis_state(size_t n_qubits, size_t index, struct EntxDensityMatrix **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `rho` must be null or a handle from this library not yet freed.
 */
void entx_density_free(struct EntxDensityMatrix *rho);

/**
 * Number of qubits, or 0 for a null handle.
 *
 * # Safety
 * `rho` must be null or a live handle.
 */
size_t entx_density_n_qubits(const struct EntxDensityMatrix *rho);

/**
 * Copies the row-major entries into `re` and `im`, each of length `len`,
 * which must equal `4^n_qubits`.
 *
 * # Safety
 * `rho` must be a live handle; `re` and `im` must point to `len` writable
 * doubles.
 */
enum EntxStatus entx_density_entries(const struct EntxDensityMatrix *rho,
                                     double *re,
                                     double *im,
                                     size_t len);

/**
 * Concurrence of a two-qubit state.
 *
 * # Safety
 * `rho` must be a live handle; `out` must be writable.
 */
enum EntxStatus entx_concurrence(const struct EntxDensityMatrix *rho, double *out);

/**
 * One collision of a two-qubit probe state with a two-site chain state.
 *
 * Writes the probe concurrence to `out_concurrence` and, when
 * `out_probes` is non-null, a new handle to the probe state.
 *
 * # Safety
 * `chain` and `probes` must be live handles; `out_concurrence` must be
 * writable; `out_probes` must be null or writable.
 */
enum EntxStatus entx_collide_once(const struct EntxDensityMatrix *chain,
                                  const struct EntxDensityMatrix *probes,
                                  double lambda,
                                  double j_tau,
                                  double *out_concurrence,
                                  struct EntxDensityMatrix **out_probes);

/**
 * Optimizes product probe states for one collision with `chain`.
 *
 * # Safety
 * `chain` must be a live handle; `out` must be writable.
 */
enum EntxStatus entx_optimize_probes(const struct EntxDensityMatrix *chain,
                                     double lambda,
                                     double j_tau,
                                     struct EntxProbeOptimum *out);

/**
 * Fixed point of repeated collisions with fresh copies of `chain`.
 *
 * When `out_state` is non-null it receives a handle to the fixed state.
 *
 * # Safety
 * `chain` must be a live handle; `out` must be writable; `out_state` must
 * be null or writable.
 */
enum EntxStatus entx_channel_fixed_point(const struct EntxDensityMatrix *chain,
                                         double lambda,
                                         double j_tau,
                                         struct EntxFixedPoint *out,
                                         struct EntxDensityMatrix **out_state);

/**
 * Two probes coupled to disjoint blocks of `spins_per_probe` spins of a
 * `chain_len`-spin W state. `out_analytic` receives the closed-form value,
 * or NaN where none applies.
 *
 * # Safety
 * `out_numeric` and `out_analytic` must be writable.
 */
enum EntxStatus entx_spin_star(size_t chain_len,
                               size_t spins_per_probe,
                               double lambda,
                               double j_tau,
                               double *out_numeric,
                               double *out_analytic);

/**
 * Bond-averaged ground-state correlators of an even XXZ chain.
 *
 * # Safety
 * `out_g_xx` and `out_g_zz` must be writable.
 */
enum EntxStatus entx_ground_state_correlations(double lambda,
                                               size_t chain_len,
                                               bool periodic,
                                               double *out_g_xx,
                                               double *out_g_zz);

/**
 * State of `n_probes` probes after extracting an `n_probes`-spin W state.
 *
 * # Safety
 * `out` must be writable.
 */
enum EntxStatus entx_w_extraction(size_t n_probes, double j_tau, struct EntxDensityMatrix **out);

/**
 * Message of the last failed call on this thread, or null after a
 * successful call. Valid until the next call into this library on the
 * same thread.
 */
const char *entx_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *entx_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTX_H */
