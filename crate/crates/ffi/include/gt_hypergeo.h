#ifndef GT_HYPERGEO_H
#define GT_HYPERGEO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every entry point.
typedef enum GthoStatus {
  GTHO_STATUS_OK = 0,
  // A required pointer was null.
  GTHO_STATUS_NULL_POINTER = 1,
  // Malformed input: wrong lengths, non-finite numbers, bad rationals.
  GTHO_STATUS_INVALID_ARGUMENT = 2,
  // Coincident entries where strictly decreasing ones are required.
  GTHO_STATUS_DEGENERATE = 3,
  // The pair `(μ, λ)` does not interlace strictly.
  GTHO_STATUS_INTERLACING = 4,
  // The requested configuration is outside what the library evaluates.
  GTHO_STATUS_UNSUPPORTED = 5,
  // A numerical or algebraic step failed.
  GTHO_STATUS_NUMERICAL = 6,
  // The caller's buffer is too small; the required size was reported.
  GTHO_STATUS_BUFFER_TOO_SMALL = 7,
  // The library panicked. This is a bug.
  GTHO_STATUS_PANIC = 8,
} GthoStatus;

// Which Gelfand-Tsetlin integral [`gtho_eval`] computes.
typedef enum GthoFunction {
  // Normalized Bessel function `B_k(λ, s)`.
  GTHO_FUNCTION_BESSEL = 0,
  // Normalized Heckman-Opdam function `F_k(λ, s)`.
  GTHO_FUNCTION_HECKMAN_OPDAM = 1,
  // Rational integral `φ_k(λ, s)`.
  GTHO_FUNCTION_PHI_RATIONAL = 2,
  // Trigonometric integral `Φ_k(λ, s)`.
  GTHO_FUNCTION_PHI_TRIGONOMETRIC = 3,
} GthoFunction;

// Opaque Macdonald polynomial with exact rational coefficients.
typedef struct GthoMacdonald GthoMacdonald;

// Opaque interlacing unitary `u(μ, λ)`.
typedef struct GthoUnitary GthoUnitary;

// Value, error estimate and work counter of an evaluation.
typedef struct GthoEvalResult {
  double value;
  double est_error;
  uint64_t work;
} GthoEvalResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null if none. The string
// stays valid until the next failing call on the same thread.
const char *gtho_last_error_message(void);

// Forgets the stored error message.
void gtho_clear_last_error(void);

// Library version as a static NUL-terminated string.
const char *gtho_version(void);

// Evaluates a Gelfand-Tsetlin integral at `(λ, s)` with `n` entries each,
// using `nodes` Gauss-Legendre nodes per dimension on `panels` panels.
//
// # Safety
// `lambda` and `s` must point to `n` doubles; `out` must be writable.
enum GthoStatus gtho_eval(enum GthoFunction function,
                          const double *lambda,
                          const double *s,
                          size_t n,
                          double k,
                          size_t nodes,
                          size_t panels,
                          struct GthoEvalResult *out);

// The Harish-Chandra alternating sum `det[e^{λ_i s_j}] / (Δ(λ)Δ(s))`.
//
// # Safety
// `lambda` and `s` must point to `n` doubles; `out` must be writable.
enum GthoStatus gtho_harish_chandra(const double *lambda, const double *s, size_t n, double *out);

// Monte Carlo estimate of the orbit integral `ψ_k` (or `Ψ_k` when `trig`
// is nonzero), deterministic in `seed`.
//
// # Safety
// `lambda` and `s` must point to `n` doubles; `out` must be writable.
enum GthoStatus gtho_orbit_mc(const double *lambda,
                              const double *s,
                              size_t n,
                              uint32_t k,
                              bool trig,
                              uint64_t samples,
                              uint64_t seed,
                              struct GthoEvalResult *out);

// Builds `u(μ, λ)` for `μ` of length `n − 1` and `λ` of length `n`.
//
// # Safety
// `mu` must point to `n − 1` doubles, `lambda` to `n`; `out` must be
// writable. On success `*out` owns a handle for [`gtho_unitary_free`].
enum GthoStatus gtho_unitary_new(const double *mu,
                                 const double *lambda,
                                 size_t n,
                                 bool trig,
                                 struct GthoUnitary **out);

// Releases a unitary handle. Null is ignored.
//
// # Safety
// `handle` must be null or come from [`gtho_unitary_new`], freed once.
void gtho_unitary_free(struct GthoUnitary *handle);

// Matrix size `n`.
//
// # Safety
// `handle` must be live; `out` must be writable.
enum GthoStatus gtho_unitary_size(const struct GthoUnitary *handle, size_t *out);

// Copies the `n × n` entries row-major into `buf` of capacity `len`.
//
// # Safety
// `handle` must be live; `buf` must be writable for `len` doubles.
enum GthoStatus gtho_unitary_entries(const struct GthoUnitary *handle, double *buf, size_t len);

// `‖uuᵀ − I‖_∞`.
//
// # Safety
// `handle` must be live; `out` must be writable.
enum GthoStatus gtho_unitary_residual(const struct GthoUnitary *handle, double *out);

// The zero-weight matrix element of `u` in the `(k−1)`-th symmetric power.
//
// # Safety
// `handle` must be live; `out` must be writable.
enum GthoStatus gtho_unitary_matrix_element(const struct GthoUnitary *handle,
                                            uint32_t k,
                                            double *out);

// Computes `P_λ(x; q², t²)` in `n` variables. `q` and `t` are strings such
// as `"1/2"`, `"3"` or `"0.25"`.
//
// # Safety
// `partition` must point to `len` ints; `q`, `t` must be NUL-terminated;
// `out` must be writable. On success `*out` owns a handle for
// [`gtho_macdonald_free`].
enum GthoStatus gtho_macdonald_new(const int32_t *partition,
                                   size_t len,
                                   size_t n,
                                   const char *q,
                                   const char *t,
                                   struct GthoMacdonald **out);

// Releases a Macdonald handle. Null is ignored.
//
// # Safety
// `handle` must be null or come from [`gtho_macdonald_new`], freed once.
void gtho_macdonald_free(struct GthoMacdonald *handle);

// Number of nonzero monomial coefficients.
//
// # Safety
// `handle` must be live; `out` must be writable.
enum GthoStatus gtho_macdonald_term_count(const struct GthoMacdonald *handle, size_t *out);

// Term `index`: its partition (padded to `n` parts) into `monomial`, and
// the coefficient as a NUL-terminated `"p/q"` string into `text` of
// capacity `text_len`. `*text_needed` receives the required capacity
// including the NUL, also when the call fails with `BufferTooSmall`.
//
// # Safety
// `handle` must be live; `monomial` writable for `monomial_len` ints;
// `text` writable for `text_len` bytes; `text_needed` writable or null.
enum GthoStatus gtho_macdonald_term(const struct GthoMacdonald *handle,
                                    size_t index,
                                    int32_t *monomial,
                                    size_t monomial_len,
                                    char *text,
                                    size_t text_len,
                                    size_t *text_needed);

// Term `index`'s coefficient rounded to the nearest double.
//
// # Safety
// `handle` must be live; `out` must be writable.
enum GthoStatus gtho_macdonald_coefficient_f64(const struct GthoMacdonald *handle,
                                               size_t index,
                                               double *out);

// Evaluates the polynomial at a point with `n` coordinates.
//
// # Safety
// `handle` must be live; `x` must point to `n` doubles; `out` writable.
enum GthoStatus gtho_macdonald_eval(const struct GthoMacdonald *handle,
                                    const double *x,
                                    size_t n,
                                    double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GT_HYPERGEO_H */
