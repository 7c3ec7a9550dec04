#ifndef RUMER_H
#define RUMER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Counting routes for [`rumer_rho`].
 */
typedef enum RumerCountMethod {
  RUMER_COUNT_METHOD_FORMULA = 0,
  RUMER_COUNT_METHOD_PRODUCT = 1,
  RUMER_COUNT_METHOD_RECURRENCE = 2,
  RUMER_COUNT_METHOD_ENUMERATE = 3,
} RumerCountMethod;

/**
 * Result codes shared by every function.
 */
typedef enum RumerStatus {
  RUMER_STATUS_OK = 0,
  RUMER_STATUS_NULL_POINTER = 1,
  RUMER_STATUS_INVALID_ARGUMENT = 2,
  RUMER_STATUS_PARSE_ERROR = 3,
  RUMER_STATUS_INDEX_OUT_OF_RANGE = 4,
  RUMER_STATUS_FUEL_EXHAUSTED = 5,
  RUMER_STATUS_INTERNAL = 6,
} RumerStatus;

/**
 * Opaque list of Rumer diagrams.
 */
typedef struct RumerDiagramList RumerDiagramList;

/**
 * Opaque integer bracket polynomial.
 */
typedef struct RumerPolynomial RumerPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *rumer_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void rumer_string_free(char *s);

/**
 * `rho(n, m)` as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum RumerStatus rumer_rho(size_t n, size_t m, enum RumerCountMethod method, char **out);

/**
 * `N(m_1, ..., m_len)` as a decimal string.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be writable.
 */
enum RumerStatus rumer_n_recurrence(const size_t *degrees, size_t len, char **out);

/**
 * All Rumer diagrams with `m` bonds on `n` atoms.
 *
 * # Safety
 * `out` must be writable. Release the list with [`rumer_diagram_list_free`].
 */
enum RumerStatus rumer_enumerate(size_t n, size_t m, struct RumerDiagramList **out);

/**
 * All Rumer diagrams with the given per-atom valences.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be writable.
 */
enum RumerStatus rumer_enumerate_multidegree(const size_t *degrees,
                                             size_t len,
                                             struct RumerDiagramList **out);

/**
 * Number of diagrams in `list` (0 for NULL).
 *
 * # Safety
 * `list` must be NULL or a live handle.
 */
size_t rumer_diagram_list_len(const struct RumerDiagramList *list);

/**
 * Diagram `index` in text form `n=4; (1,2)(3,4)` (`as_json = false`) or as
 * `{"n":4,"edges":[[1,2],[3,4]]}` (`as_json = true`).
 *
 * # Safety
 * `list` must be a live handle and `out` writable.
 */
enum RumerStatus rumer_diagram_list_get(const struct RumerDiagramList *list,
                                        size_t index,
                                        bool as_json,
                                        char **out);

/**
 * # Safety
 * `list` must be NULL or a handle not yet freed.
 */
void rumer_diagram_list_free(struct RumerDiagramList *list);

/**
 * Parses a bracket polynomial on `n` atoms, e.g. `"[1,3][2,4] - [1,2][3,4]"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RumerStatus rumer_polynomial_parse(const char *text, size_t n, struct RumerPolynomial **out);

/**
 * Reads the JSON form `{"n":..,"terms":[{"coeff":..,"factors":[[i,j],..]}]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RumerStatus rumer_polynomial_from_json(const char *json, struct RumerPolynomial **out);

/**
 * Rewrites `p` in the Rumer basis using at most `fuel` quadratic rewrites.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RumerStatus rumer_polynomial_straighten(const struct RumerPolynomial *p,
                                             uint64_t fuel,
                                             struct RumerPolynomial **out);

/**
 * Text (`as_json = false`) or JSON form of `p`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RumerStatus rumer_polynomial_to_string(const struct RumerPolynomial *p,
                                            bool as_json,
                                            char **out);

/**
 * Whether `a` and `b` expand to the same polynomial in the atom coordinates.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum RumerStatus rumer_polynomial_equal_by_expansion(const struct RumerPolynomial *a,
                                                     const struct RumerPolynomial *b,
                                                     bool *out);

/**
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void rumer_polynomial_free(struct RumerPolynomial *p);

/**
 * Basis verification report for `(n, m)` as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum RumerStatus rumer_verify_basis_json(size_t n, size_t m, char **out);

/**
 * Merge-bijection report for a multidegree with at least two entries, as
 * JSON.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be writable.
 */
enum RumerStatus rumer_verify_psi_bijection_json(const size_t *degrees, size_t len, char **out);

/**
 * SVG drawing of a diagram given in text or JSON form.
 *
 * # Safety
 * `diagram` must be a NUL-terminated string; `out` must be writable.
 */
enum RumerStatus rumer_render_svg(const char *diagram, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RUMER_H */
