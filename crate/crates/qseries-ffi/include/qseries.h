#ifndef QSERIES_H
#define QSERIES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function in this library.
typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_ARGUMENT = 2,
  QS_STATUS_DOMAIN = 3,
  QS_STATUS_POLE = 4,
  QS_STATUS_BUDGET_EXCEEDED = 5,
  QS_STATUS_DIVERGENCE = 6,
  QS_STATUS_OVERFLOW = 7,
  QS_STATUS_UNKNOWN_IDENTITY = 8,
  QS_STATUS_PANIC = 9,
} QsStatus;

// Base `q` plus truncation policy.
typedef struct QsContext QsContext;

// Result of a verification run, with its JSON rendering cached.
typedef struct QsReport QsReport;

typedef struct QsComplex {
  double re;
  double im;
} QsComplex;

// A computed value and the number of terms (or factors) the evaluation used.
typedef struct QsValue {
  struct QsComplex value;
  uintptr_t terms;
} QsValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last non-`Ok` status on this thread. The pointer stays valid until the
// next failing call on the same thread.
const char *qs_last_error(void);

// Creates a context for base `q`. Pass `eps <= 0` or `max_terms == 0` for the defaults
// (1e-14 and 10000).
//
// # Safety
// `out` must be null or valid for writing one pointer.
enum QsStatus qs_context_new(struct QsComplex q,
                             double eps,
                             uintptr_t max_terms,
                             struct QsContext **out);

// # Safety
// `ctx` must be null or a pointer from [`qs_context_new`] not yet freed.
void qs_context_free(struct QsContext *ctx);

// `(a;q)_n` for any integer `n`.
//
// # Safety
// `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_qpoch(const struct QsContext *ctx,
                       struct QsComplex a,
                       int64_t n,
                       struct QsValue *out);

// `(a;q)_inf`.
//
// # Safety
// `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_qpoch_inf(const struct QsContext *ctx, struct QsComplex a, struct QsValue *out);

// Jacobi theta function `theta(x;q)` from its bilateral series.
//
// # Safety
// `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_theta(const struct QsContext *ctx, struct QsComplex x, struct QsValue *out);

// Basic hypergeometric series `r phi s` with `r = n_upper`, `s = n_lower`.
//
// # Safety
// `upper` and `lower` must point to `n_upper` and `n_lower` values (or be null when the
// count is zero); `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_phi(const struct QsContext *ctx,
                     const struct QsComplex *upper,
                     uintptr_t n_upper,
                     const struct QsComplex *lower,
                     uintptr_t n_lower,
                     struct QsComplex z,
                     struct QsValue *out);

// Bilateral series `r psi s`; `terms` counts both tails.
//
// # Safety
// Same contract as [`qs_phi`].
enum QsStatus qs_psi(const struct QsContext *ctx,
                     const struct QsComplex *upper,
                     uintptr_t n_upper,
                     const struct QsComplex *lower,
                     uintptr_t n_lower,
                     struct QsComplex z,
                     struct QsValue *out);

// `E_b(y;q)`; `b = 2` gives `K_inf(y)`.
//
// # Safety
// `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_eb(const struct QsContext *ctx,
                    struct QsComplex y,
                    uint32_t b,
                    struct QsValue *out);

// `E_q(y D_{q^sign} | q^b)` applied to `x^n`, evaluated at `x`. `sign` is `1` or `-1`.
//
// # Safety
// `ctx` must be a live context and `out` valid for writing.
enum QsStatus qs_eop_power(const struct QsContext *ctx,
                           struct QsComplex y,
                           uint32_t b,
                           int32_t sign,
                           int64_t n,
                           struct QsComplex x,
                           struct QsValue *out);

// Number of registered identities.
uintptr_t qs_identity_count(void);

// Verifies one identity (`id` non-null) or the whole registry (`id` null). Uses the
// truncation of `ctx` when given, otherwise the defaults.
//
// # Safety
// `id` must be null or a NUL-terminated string; `ctx` null or live; `out` valid for writing.
enum QsStatus qs_verify(const char *id,
                        uintptr_t n_samples,
                        uint64_t seed,
                        double tol,
                        const struct QsContext *ctx,
                        struct QsReport **out);

// 1 if some expected-pass identity failed or errored, 0 otherwise (also for null).
//
// # Safety
// `report` must be null or live.
int32_t qs_report_failed(const struct QsReport *report);

// The JSON rendering, owned by the report. Null for a null report.
//
// # Safety
// `report` must be null or live; the string dies with the report.
const char *qs_report_json(const struct QsReport *report);

// # Safety
// `report` must be null or a pointer from [`qs_verify`] not yet freed.
void qs_report_free(struct QsReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSERIES_H */
