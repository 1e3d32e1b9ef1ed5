#ifndef GOLAB_H
#define GOLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which property [`golab_space_check`] decides.
 */
typedef enum GolabCheck {
  GOLAB_CHECK_GO = 0,
  GOLAB_CHECK_NORMAL = 1,
  GOLAB_CHECK_NECFORM = 2,
} GolabCheck;

/**
 * Status codes.
 */
typedef enum GolabError {
  GOLAB_ERROR_OK = 0,
  GOLAB_ERROR_NULL_POINTER = 1,
  GOLAB_ERROR_INVALID_UTF8 = 2,
  /**
   * Bad type, rank, painting, torus or config text.
   */
  GOLAB_ERROR_INVALID_INPUT = 3,
  /**
   * Metric not symmetric, positive or equivariant.
   */
  GOLAB_ERROR_INVALID_METRIC = 4,
  GOLAB_ERROR_INTERNAL = 5,
  GOLAB_ERROR_PANIC = 6,
} GolabError;

/**
 * Opaque root system handle.
 */
typedef struct GolabRootSystem GolabRootSystem;

/**
 * Opaque handle for a space `G/S` with its configured metric.
 */
typedef struct GolabSpace GolabSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success.
 * Valid until the next call into the library from the same thread.
 */
const char *golab_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void golab_string_free(char *s);

/**
 * Builds the root system of type `"A"`..`"D"`, `"G"` and the given rank.
 *
 * # Safety
 * `type_label` must be a nul-terminated string and `out` writable.
 */
enum GolabError golab_rootsys_new(const char *type_label,
                                  uint32_t rank,
                                  struct GolabRootSystem **out);

/**
 * # Safety
 * `rs` must come from [`golab_rootsys_new`] or be null.
 */
void golab_rootsys_free(struct GolabRootSystem *rs);

/**
 * # Safety
 * `rs` must be a live handle and `out` writable.
 */
enum GolabError golab_rootsys_num_positive(const struct GolabRootSystem *rs, uint32_t *out);

/**
 * JSON description: simple roots, positive roots and Cartan matrix.
 *
 * # Safety
 * `rs` must be a live handle and `out` writable.
 */
enum GolabError golab_rootsys_to_json(const struct GolabRootSystem *rs, char **out);

/**
 * Root partition of a painted diagram as JSON; nodes are numbered from 1.
 *
 * # Safety
 * `rs` must be a live handle, `painted` must point to `count` values and
 * `out` must be writable.
 */
enum GolabError golab_flag_describe_json(const struct GolabRootSystem *rs,
                                         const uint32_t *painted,
                                         size_t count,
                                         char **out);

/**
 * Builds a space and its metric from TOML config text.
 *
 * # Safety
 * `toml` must be a nul-terminated string and `out` writable.
 */
enum GolabError golab_space_from_toml(const char *toml, struct GolabSpace **out);

/**
 * # Safety
 * `sp` must come from [`golab_space_from_toml`] or be null.
 */
void golab_space_free(struct GolabSpace *sp);

/**
 * # Safety
 * `sp` must be a live handle and `out` writable.
 */
enum GolabError golab_space_dim_m(const struct GolabSpace *sp, uint32_t *out);

/**
 * Runs one decider on the configured metric. `holds` receives the verdict;
 * when `report` is not null it receives the JSON certificate.
 *
 * # Safety
 * `sp` must be a live handle, `holds` writable, `report` writable or null.
 */
enum GolabError golab_space_check(const struct GolabSpace *sp,
                                  enum GolabCheck which,
                                  bool *holds,
                                  char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOLAB_H */
