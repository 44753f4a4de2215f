#ifndef ZONOCUBE_H
#define ZONOCUBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZcClass {
  ZC_CLASS_ALL = 0,
  ZC_CLASS_SYMMETRIC = 1,
  ZC_CLASS_SKEW = 2,
} ZcClass;

typedef enum ZcEdgeKind {
  ZC_EDGE_KIND_TYPE_A = 0,
  ZC_EDGE_KIND_SIMPLE = 1,
  ZC_EDGE_KIND_DOUBLE = 2,
  ZC_EDGE_KIND_BARREL = 3,
} ZcEdgeKind;

typedef enum ZcStatus {
  ZC_STATUS_OK = 0,
  ZC_STATUS_INVALID_INPUT = 1,
  ZC_STATUS_PRECONDITION = 2,
  ZC_STATUS_BUDGET_EXCEEDED = 3,
  ZC_STATUS_BARREL_HOLE = 4,
  ZC_STATUS_INTERNAL = 5,
  ZC_STATUS_NULL_POINTER = 6,
  ZC_STATUS_OUT_OF_RANGE = 7,
} ZcStatus;

/**
 * A validated cubillage.
 */
typedef struct ZcCubillage ZcCubillage;

/**
 * A flip digraph together with the class it was built from.
 */
typedef struct ZcDigraph ZcDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread; valid until the next
 * call into the library. Never null.
 */
const char *zc_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void zc_string_free(char *s);

/**
 * Parses and validates a cubillage document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ZcStatus zc_cubillage_from_json(const char *json, struct ZcCubillage **out);

/**
 * The standard (`antistandard = false`) or antistandard cubillage.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZcStatus zc_cubillage_new(size_t n, size_t d, bool antistandard, struct ZcCubillage **out);

/**
 * # Safety
 * `q` must be null or a handle from this library, not yet freed.
 */
void zc_cubillage_free(struct ZcCubillage *q);

/**
 * Canonical JSON of the cubillage; free with [`zc_string_free`].
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_cubillage_to_json(const struct ZcCubillage *q, bool symmetric_labels, char **out);

/**
 * Number of inversions.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_cubillage_rank(const struct ZcCubillage *q, size_t *out);

/**
 * Whether the cubillage is fixed (`symmetric`) or complemented (`skew`) by
 * the color involution.
 *
 * # Safety
 * `q` must be a live handle; `symmetric` and `skew` must be writable.
 */
enum ZcStatus zc_cubillage_symmetry(const struct ZcCubillage *q, bool *symmetric, bool *skew);

/**
 * Deletes the middle color of a symmetric cubillage with odd `n`.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_reduce_middle(const struct ZcCubillage *q, struct ZcCubillage **out);

/**
 * Core of a symmetric cubillage with `n` and `d` even.
 *
 * # Safety
 * `q` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_core(const struct ZcCubillage *q, struct ZcCubillage **out);

/**
 * Size of a class. A `budget` of 0 selects the default.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZcStatus zc_enumerate_count(size_t n,
                                 size_t d,
                                 enum ZcClass class_,
                                 uint64_t budget,
                                 size_t *out);

/**
 * Flip digraph of the `All` or `Symmetric` class. A `budget` of 0 selects
 * the default.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZcStatus zc_digraph_build(size_t n,
                               size_t d,
                               enum ZcClass class_,
                               uint64_t budget,
                               struct ZcDigraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void zc_digraph_free(struct ZcDigraph *g);

/**
 * # Safety
 * `g` must be a live handle; `nodes` and `edges` must be writable.
 */
enum ZcStatus zc_digraph_size(const struct ZcDigraph *g, size_t *nodes, size_t *edges);

/**
 * The `index`-th edge in canonical order.
 *
 * # Safety
 * `g` must be a live handle; `src`, `dst` and `kind` must be writable.
 */
enum ZcStatus zc_digraph_edge(const struct ZcDigraph *g,
                              size_t index,
                              size_t *src,
                              size_t *dst,
                              enum ZcEdgeKind *kind);

/**
 * A copy of the `index`-th node.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_digraph_node(const struct ZcDigraph *g, size_t index, struct ZcCubillage **out);

/**
 * Canonical digraph document; free with [`zc_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum ZcStatus zc_digraph_to_json(const struct ZcDigraph *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZONOCUBE_H */
