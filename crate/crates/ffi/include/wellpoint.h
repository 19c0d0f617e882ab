#ifndef WELLPOINT_H
#define WELLPOINT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WP_STATUS_OK = 0,
  WP_STATUS_NULL_ARGUMENT = 1,
  WP_STATUS_INVALID_UTF8 = 2,
  WP_STATUS_SYNTAX = 3,
  WP_STATUS_UNDEFINED = 4,
  WP_STATUS_CONFLICT = 5,
  WP_STATUS_INCOMPLETE = 6,
  WP_STATUS_INVALID = 7,
  WP_STATUS_DUPLICATE = 8,
  WP_STATUS_NOT_WELL_POINTED = 9,
  WP_STATUS_OUT_OF_RANGE = 10,
  WP_STATUS_UNSUPPORTED = 11,
  WP_STATUS_LIMIT_EXCEEDED = 12,
  WP_STATUS_INTERNAL = 13,
} WpStatus;

/**
 * A well-pointed endofunctor `(Ω, θ)` on a finite category.
 */
typedef struct WpEndo WpEndo;

/**
 * A parsed and elaborated specification.
 */
typedef struct WpWorkspace WpWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *wp_last_error(void);

uint32_t wp_schema_version(void);

/**
 * Parses and builds DSL source. Diagnostics are joined into the last error,
 * one `line:col: error[E00x]: message` per line; the status reflects the
 * first one.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
WpStatus wp_workspace_parse(const char *text, WpWorkspace **out);

/**
 * # Safety
 * `ws` must be null or a handle from [`wp_workspace_parse`] not yet freed.
 */
void wp_workspace_free(WpWorkspace *ws);

/**
 * Extracts the pointed endofunctor named `endo` with pointing `point`.
 * Either name may be null when the workspace has exactly one candidate.
 *
 * # Safety
 * `ws` must be a live handle, `out` a valid pointer, and the names null or
 * NUL-terminated.
 */
WpStatus wp_workspace_endo(const WpWorkspace *ws,
                           const char *endo,
                           const char *point,
                           WpEndo **out);

/**
 * # Safety
 * `e` must be null or a handle from [`wp_workspace_endo`] not yet freed.
 */
void wp_endo_free(WpEndo *e);

/**
 * Number of objects of the underlying category, or 0 for a null handle.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
size_t wp_endo_object_count(const WpEndo *e);

/**
 * Writes whether object `x` carries an Ω-algebra structure.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
WpStatus wp_endo_is_algebra(const WpEndo *e, size_t x, bool *out);

/**
 * Writes the size (Set) or dimension (Vect) of `L_Ω C(x, y)`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
WpStatus wp_endo_localised_hom_size(const WpEndo *e, size_t x, size_t y, size_t *out);

/**
 * Writes whether θ commutes with Ω; always true for a handle built by
 * [`wp_workspace_endo`].
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
WpStatus wp_endo_is_well_pointed(const WpEndo *e, bool *out);

/**
 * Runs the stabilisation/spectra comparison and writes the verdict.
 * A `window` of 0 selects the default.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
WpStatus wp_endo_compare(const WpEndo *e, int64_t window, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WELLPOINT_H */
