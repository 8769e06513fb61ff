#ifndef ARROWLAB_H
#define ARROWLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Search engine for `arrowlab_decide_arrow`.
typedef enum ArrowlabEngine {
  ARROWLAB_ENGINE_BACKTRACK = 0,
  ARROWLAB_ENGINE_EXHAUSTIVE = 1,
} ArrowlabEngine;

// Which partition arrow to decide.
typedef enum ArrowlabKind {
  ARROWLAB_KIND_CLASSICAL = 0,
  ARROWLAB_KIND_HC = 1,
  ARROWLAB_KIND_WC = 2,
} ArrowlabKind;

// Result codes.
typedef enum ArrowlabStatus {
  // Success; for predicates, the positive answer.
  ARROWLAB_STATUS_OK = 0,
  // Success with a negative answer (fails, refuted).
  ARROWLAB_STATUS_NEGATIVE = 1,
  // A required pointer was null.
  ARROWLAB_STATUS_NULL_POINTER = 2,
  // An argument or input text was rejected.
  ARROWLAB_STATUS_INVALID_ARGUMENT = 3,
  // A search guard (size limit or node budget) was hit.
  ARROWLAB_STATUS_RESOURCE_GUARD = 4,
  // A bug: a panic or an internal consistency failure.
  ARROWLAB_STATUS_INTERNAL = 5,
} ArrowlabStatus;

// Opaque coloring handle.
typedef struct ArrowlabColoring ArrowlabColoring;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next library call on the same thread.
const char *arrowlab_last_error(void);

// Library version as a static NUL-terminated string.
const char *arrowlab_version(void);

// Parses coloring file text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum ArrowlabStatus arrowlab_coloring_load(const char *text, struct ArrowlabColoring **out);

// Seeded random coloring of `[n]^2` with `arity` colors.
//
// # Safety
// `out` must be a valid pointer.
enum ArrowlabStatus arrowlab_coloring_random(size_t n,
                                             uint64_t arity,
                                             uint64_t seed,
                                             struct ArrowlabColoring **out);

// Dense coloring of `[n]^2` from `n(n-1)/2` colors listed column by column:
// `c(0,1), c(0,2), c(1,2), c(0,3), ...`.
//
// # Safety
// `colors` must point to `n(n-1)/2` values and `out` must be valid.
enum ArrowlabStatus arrowlab_coloring_from_matrix(size_t n,
                                                  uint64_t arity,
                                                  const uint64_t *colors,
                                                  struct ArrowlabColoring **out);

// Releases a coloring. Null is ignored.
//
// # Safety
// `c` must come from this library and not be used afterwards.
void arrowlab_coloring_free(struct ArrowlabColoring *c);

// Number of domain elements, or 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t arrowlab_coloring_size(const struct ArrowlabColoring *c);

// Color index of the pair at domain positions `i < j`.
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum ArrowlabStatus arrowlab_coloring_eval(const struct ArrowlabColoring *c,
                                           size_t i,
                                           size_t j,
                                           uint64_t *out);

// Coloring file text; release with `arrowlab_string_free`.
//
// # Safety
// `c` must be a live handle and `out` a valid pointer.
enum ArrowlabStatus arrowlab_coloring_save(const struct ArrowlabColoring *c, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void arrowlab_string_free(char *s);

// Size of the largest set well-connected in scalar color `color`.
//
// # Safety
// `c` must be a live handle and `out_size` a valid pointer.
enum ArrowlabStatus arrowlab_max_wc(const struct ArrowlabColoring *c,
                                    uint64_t color,
                                    size_t *out_size);

// Whether the vertices at the given domain positions form a set that is
// well-connected in `color`. Returns `Ok` or `Negative`.
//
// # Safety
// `c` must be a live handle and `positions` must point to `len` values.
enum ArrowlabStatus arrowlab_wc_check(const struct ArrowlabColoring *c,
                                      uint64_t color,
                                      const size_t *positions,
                                      size_t len);

// Decides `n -> (m)^2_colors` deterministically. Returns `Ok` when the arrow
// holds and `Negative` when it fails; in the latter case a counterexample is
// stored in `out_counterexample` if that pointer is non-null. A
// `node_budget` of 0 means unlimited.
//
// # Safety
// `out_counterexample` must be null or a valid pointer.
enum ArrowlabStatus arrowlab_decide_arrow(enum ArrowlabKind kind,
                                          size_t n,
                                          size_t m,
                                          size_t colors,
                                          enum ArrowlabEngine engine,
                                          uint64_t node_budget,
                                          struct ArrowlabColoring **out_counterexample);

// `rho(a, b)` for ordinal expressions `a < b`.
//
// # Safety
// `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
enum ArrowlabStatus arrowlab_rho(const char *a, const char *b, uint64_t *out);

// `varrho(a, b) = (rho, count)` for ordinal expressions `a < b`.
//
// # Safety
// `a` and `b` must be NUL-terminated strings; the outputs must be valid.
enum ArrowlabStatus arrowlab_varrho(const char *a,
                                    const char *b,
                                    uint64_t *out_rho,
                                    uint64_t *out_count);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ARROWLAB_H */
