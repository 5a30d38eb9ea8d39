#ifndef NORMLAT_H
#define NORMLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `NL_STATUS_OK` is zero; the rest mirror the library errors.
 */
typedef enum NlStatus {
  NL_STATUS_OK = 0,
  NL_STATUS_NULL_ARGUMENT = 1,
  NL_STATUS_INVALID_UTF8 = 2,
  NL_STATUS_UNKNOWN_NAME = 3,
  NL_STATUS_INVALID_PERMUTATION = 4,
  NL_STATUS_CAP_EXCEEDED = 5,
  NL_STATUS_TRIVIAL_GROUP = 6,
  NL_STATUS_NOT_SEMISIMPLE = 7,
  NL_STATUS_DOMAIN_ERROR = 8,
  NL_STATUS_BUDGET_EXCEEDED = 9,
  NL_STATUS_CHARACTER_TABLE_FAILED = 10,
  NL_STATUS_INTERNAL = 11,
  NL_STATUS_PANIC = 12,
} NlStatus;

/**
 * A group together with its normal lattice.
 */
typedef struct NlGroup NlGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a group from a catalog name (`C2^2xS3`, `SL23`, ...) or a
 * `perm:` generator list. `cap` bounds the group order.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum NlStatus nl_group_from_spec(const char *spec, size_t cap, struct NlGroup **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from `nl_group_from_spec` and not be used afterwards.
 */
void nl_group_free(struct NlGroup *g);

/**
 * Group order, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nl_group_order(const struct NlGroup *g);

/**
 * Number of conjugacy classes, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nl_group_class_count(const struct NlGroup *g);

/**
 * Number of normal subgroups, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nl_group_normal_subgroup_count(const struct NlGroup *g);

/**
 * Least number of conjugacy classes whose union generates the group.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum NlStatus nl_class_generating_number(const struct NlGroup *g, size_t *out);

/**
 * `μ(1, G)` on the normal lattice as a decimal string; free it with
 * `nl_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum NlStatus nl_moebius_one_top(const struct NlGroup *g, char **out);

/**
 * Sum of squared degrees of the faithful irreducible characters.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum NlStatus nl_faithful_degree_square_sum(const struct NlGroup *g, size_t cap, uint64_t *out);

/**
 * Full analysis as pretty-printed JSON; free it with `nl_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum NlStatus nl_analysis_json(const struct NlGroup *g, double tolerance, bool verify, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void nl_string_free(char *s);

/**
 * Message for the last failure on this thread; empty after a success.
 * The pointer stays valid until the next library call on this thread.
 */
const char *nl_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NORMLAT_H */
