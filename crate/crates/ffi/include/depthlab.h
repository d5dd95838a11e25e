#ifndef DEPTHLAB_H
#define DEPTHLAB_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the command-line exit codes.
 */
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_INPUT = 2,
  DL_STATUS_UNSUPPORTED = 3,
  DL_STATUS_CAP_EXCEEDED = 4,
  DL_STATUS_PANIC = 5,
} DlStatus;

/**
 * A Hopf algebra with a Hopf subalgebra.
 */
typedef struct DlHopfPair DlHopfPair;

/**
 * An inclusion matrix with optional trivial-character row.
 */
typedef struct DlInclusion DlInclusion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an inclusion matrix from `rows * cols` entries in row-major order.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values and `out` must be
 * writable.
 */
enum DlStatus dl_inclusion_from_entries(size_t rows,
                                        size_t cols,
                                        const uint64_t *entries,
                                        struct DlInclusion **out);

/**
 * The branching matrix of `S_n` in `S_(n+1)`, with the trivial row set.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_inclusion_branch(size_t n, struct DlInclusion **out);

/**
 * Marks row `row` as the trivial character of the subalgebra.
 *
 * # Safety
 * `inc` must be a live handle.
 */
enum DlStatus dl_inclusion_set_triv_row(struct DlInclusion *inc, size_t row);

/**
 * # Safety
 * `inc` must be null or a handle from this library not yet freed.
 */
void dl_inclusion_free(struct DlInclusion *inc);

/**
 * # Safety
 * `inc` must be a live handle and `out` writable.
 */
enum DlStatus dl_min_odd_depth(const struct DlInclusion *inc, uint64_t *out);

/**
 * # Safety
 * `inc` must be a live handle and `out` writable.
 */
enum DlStatus dl_min_h_depth(const struct DlInclusion *inc, uint64_t *out);

/**
 * Needs the trivial row to be set.
 *
 * # Safety
 * `inc` must be a live handle and `out` writable.
 */
enum DlStatus dl_module_depth_h(const struct DlInclusion *inc, uint64_t *out);

/**
 * # Safety
 * `inc` must be a live handle and `out` writable.
 */
enum DlStatus dl_bipartite_odd_depth(const struct DlInclusion *inc, uint64_t *out);

/**
 * All matrix reports as a JSON array; free the string with
 * [`dl_string_free`].
 *
 * # Safety
 * `inc` must be a live handle and `out` writable.
 */
enum DlStatus dl_report_json(const struct DlInclusion *inc, char **out);

/**
 * The Taft algebra `H_n` over its group subalgebra, `2 <= n <= 6`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_taft_new(size_t n, struct DlHopfPair **out);

/**
 * The small quantum group of dimension `d^3` over its Borel part.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_small_quantum_new(size_t d, struct DlHopfPair **out);

/**
 * # Safety
 * `pair` must be null or a handle from this library not yet freed.
 */
void dl_hopf_pair_free(struct DlHopfPair *pair);

/**
 * Module depth of `V = H / R^+ H` over the subalgebra.
 *
 * # Safety
 * `pair` must be a live handle and `out` writable.
 */
enum DlStatus dl_hopf_module_depth(const struct DlHopfPair *pair, uint64_t *out);

/**
 * The interval `[lo, hi]` containing the minimum depth of the pair.
 *
 * # Safety
 * `pair` must be a live handle; `lo` and `hi` writable.
 */
enum DlStatus dl_hopf_depth_interval(const struct DlHopfPair *pair, uint64_t *lo, uint64_t *hi);

/**
 * Divisibility depth of a sequence prefix. When no depth is found within
 * the probe window, `*exceeds_probe` is set and `*depth` holds the largest
 * `m` tested.
 *
 * # Safety
 * `values` must point to `len` readable values; `depth` and
 * `exceeds_probe` must be writable.
 */
enum DlStatus dl_sequence_depth(const uint64_t *values,
                                size_t len,
                                size_t probe,
                                uint64_t *depth,
                                bool *exceeds_probe);

/**
 * Message of the last failed call on this thread, empty after a success.
 * The pointer is valid until the next call into the library.
 */
const char *dl_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void dl_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *dl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEPTHLAB_H */
