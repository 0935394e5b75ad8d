#ifndef CWL_H
#define CWL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum CwlStatus {
  CWL_STATUS_OK = 0,
  CWL_STATUS_NULL_POINTER = 1,
  CWL_STATUS_INVALID_UTF8 = 2,
  CWL_STATUS_PARSE = 3,
  CWL_STATUS_DOMAIN = 4,
  CWL_STATUS_NOT_RATIONAL_HOMOLOGY_SPHERE = 5,
  CWL_STATUS_UNDEFINED = 6,
  CWL_STATUS_DEGENERATE_CHAIN = 7,
  CWL_STATUS_OUT_OF_RANGE = 8,
  CWL_STATUS_PANIC = 99,
} CwlStatus;

// Opaque framed link.
typedef struct CwlLink CwlLink;

// Opaque homotopy path (a link plus crossing-change steps).
typedef struct CwlPath CwlPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *cwl_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cwl_string_free(char *s);

// Parses `.lnk` text into a new link handle.
//
// # Safety
// `lnk` must be a NUL-terminated string; `out` must be writable.
enum CwlStatus cwl_link_parse(const char *lnk, struct CwlLink **out);

// # Safety
// `link` must come from [`cwl_link_parse`] and not have been freed.
void cwl_link_free(struct CwlLink *link);

// # Safety
// `link` must be a live handle; `out` must be writable.
enum CwlStatus cwl_link_components(const struct CwlLink *link, uintptr_t *out);

// Casson-Walker-Lescop invariant of the surgered manifold.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum CwlStatus cwl_link_lambda(const struct CwlLink *link, char **out);

// Casson-Walker invariant; fails with
// `CWL_STATUS_NOT_RATIONAL_HOMOLOGY_SPHERE` when `|H_1|` is infinite.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum CwlStatus cwl_link_walker(const struct CwlLink *link, char **out);

// `|H_1|` as a decimal string, `"0"` when infinite.
//
// # Safety
// `link` must be a live handle; `out` must be writable.
enum CwlStatus cwl_link_h1(const struct CwlLink *link, char **out);

// Parses a path file (link block followed by `path`/`step` lines).
//
// # Safety
// `text_in` must be a NUL-terminated string; `out` must be writable.
enum CwlStatus cwl_path_parse(const char *text_in, struct CwlPath **out);

// # Safety
// `path` must come from [`cwl_path_parse`] and not have been freed.
void cwl_path_free(struct CwlPath *path);

// # Safety
// `path` must be a live handle; `out` must be writable.
enum CwlStatus cwl_path_steps(const struct CwlPath *path, uintptr_t *out);

// Lambda change across step `index` (0-based).
//
// # Safety
// `path` must be a live handle; `out` must be writable.
enum CwlStatus cwl_path_step_delta(const struct CwlPath *path, uintptr_t index, char **out);

// Total lambda change along the path.
//
// # Safety
// `path` must be a live handle; `out` must be writable.
enum CwlStatus cwl_path_delta(const struct CwlPath *path, char **out);

// Dedekind sum `s(p, q)`, `q > 0`.
//
// # Safety
// `out` must be writable.
enum CwlStatus cwl_dedekind(int64_t p, int64_t q, char **out);

// Lambda of the lens space `L(p, q)`.
//
// # Safety
// `out` must be writable.
enum CwlStatus cwl_lens_lambda(int64_t p, int64_t q, char **out);

// Lambda of surgery on `T(n)` with framings `(s, -s)`; `s` is `"p/q"`.
//
// # Safety
// `s` must be a NUL-terminated string; `out` must be writable.
enum CwlStatus cwl_tn_lambda(int64_t n, const char *s, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CWL_H */
