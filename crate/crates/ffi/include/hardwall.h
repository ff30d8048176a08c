#ifndef HARDWALL_H
#define HARDWALL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HwStatus {
  HW_STATUS_OK = 0,
  HW_STATUS_NULL_POINTER = 1,
  HW_STATUS_INVALID_ARGUMENT = 2,
  HW_STATUS_UNSUPPORTED_RANGE = 3,
  HW_STATUS_NON_CONVERGENCE = 4,
  HW_STATUS_ROOT_NOT_FOUND = 5,
  HW_STATUS_ILL_CONDITIONED = 6,
  HW_STATUS_GRID_TOO_COARSE = 7,
  HW_STATUS_DOMAIN_ERROR = 8,
  HW_STATUS_INVALID_ZERO_INDEX = 9,
  HW_STATUS_BUFFER_TOO_SMALL = 10,
  HW_STATUS_PANIC = 11,
} HwStatus;

typedef enum HwIdentity {
  HW_IDENTITY_VIRIAL = 0,
  HW_IDENTITY_HYPERVIRIAL = 1,
  HW_IDENTITY_BOUNDARY_DERIVATIVE = 2,
} HwIdentity;

/**
 * Opaque eigenstate handle.
 */
typedef struct HwEigenstate HwEigenstate;

/**
 * Opaque Rayleigh–Ritz result handle.
 */
typedef struct HwRitz HwRitz;

typedef struct HwEigenInfo {
  size_t n;
  double epsilon;
  double weber_order;
  double norm;
  size_t node_count;
} HwEigenInfo;

typedef struct HwIdentityReport {
  size_t n;
  double q0;
  double lhs;
  double rhs;
  double residual;
  enum HwIdentity identity;
} HwIdentityReport;

typedef struct HwDimensionless {
  double length_unit;
  double omega;
  double q0;
  double energy_unit;
} HwDimensionless;

typedef struct HwZeroPoint {
  double epsilon0;
  double joule;
  double mev;
  bool from_oracle;
} HwZeroPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hw_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `len > 0`). Returns the length the full message
 * needs including the NUL, or 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t hw_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_recip_gamma(double x, double *out);

/**
 * Parabolic cylinder function `D_m(z)`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_weber_d(double m, double z, double *out);

/**
 * Wall condition whose roots in `m` give the levels `ε = m + 1/2`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_characteristic(double m, double q0, double *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_asymptotic_epsilon0(double q0, double *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_asymptotic_epsilon1(double q0, double *out);

/**
 * Levels `0..=n_max` into `out[0..n_max+1]`.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum HwStatus hw_eigenvalues(double q0, size_t n_max, double *out, size_t len);

/**
 * Richardson-extrapolated finite-difference levels `0..=n_max`.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum HwStatus hw_fd_eigenvalues(double q0, size_t n_max, double *out, size_t len);

/**
 * # Safety
 * `out` must be valid for a write. The handle is released with
 * [`hw_eigenstate_free`].
 */
enum HwStatus hw_eigenstate_new(size_t n, double q0, struct HwEigenstate **out);

/**
 * # Safety
 * `state` must be null or come from [`hw_eigenstate_new`] and not be used
 * afterwards.
 */
void hw_eigenstate_free(struct HwEigenstate *state);

/**
 * # Safety
 * `state` must be a live handle; `out` valid for a write.
 */
enum HwStatus hw_eigenstate_info(const struct HwEigenstate *state, struct HwEigenInfo *out);

/**
 * Normalized eigenfunction at `q >= -q0`.
 *
 * # Safety
 * `state` must be a live handle; `out` valid for a write.
 */
enum HwStatus hw_eigenstate_phi(const struct HwEigenstate *state, double q, double *out);

/**
 * Virial, hypervirial and boundary-derivative reports for levels
 * `0..=n_max`, three per level. `written` receives the count.
 *
 * # Safety
 * `out` must be valid for `len` writes; `written` valid for a write.
 */
enum HwStatus hw_identity_suite(double q0,
                                size_t n_max,
                                struct HwIdentityReport *out,
                                size_t len,
                                size_t *written);

/**
 * # Safety
 * `out` must be valid for a write. The handle is released with
 * [`hw_ritz_free`].
 */
enum HwStatus hw_ritz_new(size_t basis_size, double q0, struct HwRitz **out);

/**
 * # Safety
 * `ritz` must be null or come from [`hw_ritz_new`] and not be used
 * afterwards.
 */
void hw_ritz_free(struct HwRitz *ritz);

/**
 * Number of Ritz values, or 0 for a null handle.
 *
 * # Safety
 * `ritz` must be null or a live handle.
 */
size_t hw_ritz_len(const struct HwRitz *ritz);

/**
 * Ascending Ritz values into `out`.
 *
 * # Safety
 * `ritz` must be a live handle; `out` valid for `len` writes.
 */
enum HwStatus hw_ritz_values(const struct HwRitz *ritz, double *out, size_t len);

/**
 * Basis coefficients of root `k`, normalized to `cᵀSc = 1`.
 *
 * # Safety
 * `ritz` must be a live handle; `out` valid for `len` writes.
 */
enum HwStatus hw_ritz_coefficients(const struct HwRitz *ritz, size_t k, double *out, size_t len);

/**
 * # Safety
 * `ritz` must be a live handle; `out` valid for a write.
 */
enum HwStatus hw_ritz_overlap_condition(const struct HwRitz *ritz, double *out);

/**
 * Mass in u, force constant in N/m, wall distance in Å.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_dimensionless(double mass_amu,
                               double k_npm,
                               double d_angstrom,
                               struct HwDimensionless *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum HwStatus hw_zero_point_energy(double mass_amu,
                                   double k_npm,
                                   double d_angstrom,
                                   struct HwZeroPoint *out);

/**
 * Presets: `"H-Pd100"`, `"D-Pd100"`.
 *
 * # Safety
 * `label` must be a NUL-terminated string; `out` valid for a write.
 */
enum HwStatus hw_preset_dimensionless(const char *label, struct HwDimensionless *out);

/**
 * # Safety
 * `label` must be a NUL-terminated string; `out` valid for a write.
 */
enum HwStatus hw_preset_zero_point_energy(const char *label, struct HwZeroPoint *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARDWALL_H */
