#ifndef EULERIAN_KIT_H
#define EULERIAN_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes. `EK_STATUS_OK` is zero.
 */
typedef enum EkStatus {
  EK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EK_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EK_STATUS_INVALID_UTF8 = 2,
  /**
   * Facet text, JSON, or a generator expression failed to parse.
   */
  EK_STATUS_PARSE_ERROR = 3,
  /**
   * The arguments were well-formed but not acceptable, e.g. an unknown
   * check name or a check whose precondition fails.
   */
  EK_STATUS_INVALID_INPUT = 4,
  /**
   * The output buffer is shorter than the value written to `*len`.
   */
  EK_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * A value does not fit the output integer type.
   */
  EK_STATUS_OVERFLOW = 6,
  /**
   * An internal error; the library caught a panic.
   */
  EK_STATUS_PANIC = 7,
} EkStatus;

/**
 * An immutable simplicial complex.
 */
typedef struct EkComplex EkComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the plain facet format: one facet per line, whitespace-separated
 * labels, `#` comments.
 */
enum EkStatus ek_complex_from_text(const char *text, struct EkComplex **out);

/**
 * Parses `{"facets": [["a", "b"], ...]}`.
 */
enum EkStatus ek_complex_from_json(const char *text, struct EkComplex **out);

/**
 * Builds a complex from a generator expression such as
 * `suspension(torus7)` or `simplex_boundary:3`.
 */
enum EkStatus ek_complex_generate(const char *spec, struct EkComplex **out);

/**
 * Releases a handle. Null is ignored.
 */
void ek_complex_free(struct EkComplex *k);

/**
 * Dimension; -1 for the empty complex.
 */
enum EkStatus ek_complex_dim(const struct EkComplex *k, int64_t *out);

enum EkStatus ek_complex_num_vertices(const struct EkComplex *k, size_t *out);

/**
 * `(f_0, ..., f_{dim})`; `*len` is `dim + 1`.
 */
enum EkStatus ek_complex_f_vector(const struct EkComplex *k,
                                  uint64_t *buf,
                                  size_t cap,
                                  size_t *len);

/**
 * `(h_0, ..., h_d)` with `d = dim + 1`; `*len` is `d + 1`.
 * `EK_STATUS_OVERFLOW` if an entry does not fit in 64 bits.
 */
enum EkStatus ek_complex_h_vector(const struct EkComplex *k, int64_t *buf, size_t cap, size_t *len);

enum EkStatus ek_complex_euler_characteristic(const struct EkComplex *k, int64_t *out);

/**
 * Whether every link has the Euler characteristic of a sphere of the
 * matching dimension. The empty complex does not pass.
 */
enum EkStatus ek_check_eulerian(const struct EkComplex *k, bool *holds);

/**
 * Whether every Dehn–Sommerville row holds. `EK_STATUS_INVALID_INPUT` for
 * the empty complex.
 */
enum EkStatus ek_check_dehn_sommerville(const struct EkComplex *k, bool *holds);

/**
 * Compares χ with `Σ (-1/2)^i f_i`. `parity_warning` is set for odd
 * dimensions and may be null.
 */
enum EkStatus ek_check_main_formula(const struct EkComplex *k, bool *holds, bool *parity_warning);

/**
 * Whether every clique of the 1-skeleton is a face.
 */
enum EkStatus ek_check_flag(const struct EkComplex *k, bool *holds);

/**
 * The JSON report for the checks named in `checks`, comma- or
 * space-separated from eulerian, ds, formula, proof, flag and all. A null
 * or empty `checks` is the same as `all`: every check except flag.
 * `exhaustive` collects every failing face.
 */
enum EkStatus ek_report_json(const struct EkComplex *k,
                             const char *checks,
                             bool exhaustive,
                             char **out);

/**
 * The facets in the plain format, one per line.
 */
enum EkStatus ek_complex_to_text(const struct EkComplex *k, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void ek_string_free(char *s);

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. Valid until the next call into the library on this
 * thread.
 */
const char *ek_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *ek_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULERIAN_KIT_H */
