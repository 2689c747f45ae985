#ifndef KFRAC_H
#define KFRAC_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum KfracStatus {
  /**
   * The call succeeded.
   */
  KfracStatus_Ok = 0,
  /**
   * A pointer argument was null.
   */
  KfracStatus_NullArgument = 1,
  /**
   * An argument was outside its documented domain.
   */
  KfracStatus_InvalidArgument = 2,
  /**
   * The computation reported a domain error (see `kfrac_last_error`).
   */
  KfracStatus_ComputationFailed = 3,
} KfracStatus;

/**
 * Verification suite selector for `kfrac_verify`.
 */
typedef enum KfracSuite {
  KfracSuite_Algebra = 0,
  KfracSuite_Grassmann = 1,
  KfracSuite_Coherent = 2,
  KfracSuite_Susy = 3,
  KfracSuite_All = 4,
} KfracSuite;

/**
 * Opaque check-report handle.
 */
typedef struct KfracCheckReport KfracCheckReport;

/**
 * Opaque limit-report handle.
 */
typedef struct KfracLimitReport KfracLimitReport;

/**
 * Opaque spectrum-report handle.
 */
typedef struct KfracSpectrumReport KfracSpectrumReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or null if none. Borrowed pointer;
 * valid until the next failing call on the same thread. Do not free.
 */
const char *kfrac_last_error(void);

/**
 * Release a string returned by this library.
 */
void kfrac_string_free(char *s);

/**
 * Run verification suites for one deformation order.
 *
 * `k` in 2..=12, `boson_cutoff >= k + 3`, `tol > 0`. On success writes a
 * handle to `out` and returns `Ok`; the handle must be released with
 * `kfrac_check_report_free`.
 */
enum KfracStatus kfrac_verify(uintptr_t k,
                              uintptr_t boson_cutoff,
                              double tol,
                              enum KfracSuite suite,
                              struct KfracCheckReport **out);

/**
 * 1 if every check in the report passed, 0 otherwise.
 */
int32_t kfrac_check_report_pass(const struct KfracCheckReport *report);

/**
 * Number of individual checks in the report.
 */
uintptr_t kfrac_check_report_len(const struct KfracCheckReport *report);

/**
 * Largest residual over all residual-type checks.
 */
double kfrac_check_report_max_residual(const struct KfracCheckReport *report);

/**
 * Serialize the report to a JSON string (caller frees with
 * `kfrac_string_free`). Returns null on allocation failure.
 */
char *kfrac_check_report_to_json(const struct KfracCheckReport *report);

/**
 * Release a check-report handle.
 */
void kfrac_check_report_free(struct KfracCheckReport *report);

/**
 * Compute the oscillator spectrum. `k` in 2..=12, `boson_cutoff >= k + 3`.
 */
enum KfracStatus kfrac_spectrum(uintptr_t k,
                                uintptr_t boson_cutoff,
                                struct KfracSpectrumReport **out);

/**
 * Number of levels in the spectrum report.
 */
uintptr_t kfrac_spectrum_len(const struct KfracSpectrumReport *report);

/**
 * Energy and degeneracy of level `index`. Returns `InvalidArgument` if the
 * index is out of range; output pointers may be null if unwanted.
 */
enum KfracStatus kfrac_spectrum_level(const struct KfracSpectrumReport *report,
                                      uintptr_t index,
                                      double *energy,
                                      uintptr_t *degeneracy);

/**
 * Uniform spacing between adjacent levels.
 */
double kfrac_spectrum_spacing(const struct KfracSpectrumReport *report);

/**
 * Serialize the spectrum report to JSON (caller frees the string).
 */
char *kfrac_spectrum_to_json(const struct KfracSpectrumReport *report);

/**
 * Release a spectrum-report handle.
 */
void kfrac_spectrum_free(struct KfracSpectrumReport *report);

/**
 * Run the quon-limit study over an epsilon ladder of length `len`.
 * Each epsilon must lie in (0, 0.5).
 */
enum KfracStatus kfrac_quon_limit(uintptr_t k,
                                  const double *epsilons,
                                  uintptr_t len,
                                  uintptr_t boson_cutoff,
                                  struct KfracLimitReport **out);

/**
 * 1 if the deviations decrease monotonically and the operators converge
 * entrywise, 0 otherwise.
 */
int32_t kfrac_limit_pass(const struct KfracLimitReport *report);

/**
 * Serialize the limit report to JSON (caller frees the string).
 */
char *kfrac_limit_to_json(const struct KfracLimitReport *report);

/**
 * Release a limit-report handle.
 */
void kfrac_limit_free(struct KfracLimitReport *report);

/**
 * Crate version as a borrowed static string. Do not free.
 */
const char *kfrac_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KFRAC_H */
