#ifndef LINKAGE_H
#define LINKAGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum LkStatus {
  LK_STATUS_OK = 0,
  LK_STATUS_NULL_POINTER = 1,
  LK_STATUS_INVALID_UTF8 = 2,
  LK_STATUS_PARSE = 3,
  LK_STATUS_RING_MISMATCH = 4,
  LK_STATUS_ENGINE = 5,
  LK_STATUS_IO = 6,
  LK_STATUS_PANIC = 7,
} LkStatus;

/**
 * Outcome of a horizontal linkage check.
 */
typedef enum LkVerdict {
  LK_VERDICT_LINKED = 0,
  LK_VERDICT_NOT_LINKED = 1,
  LK_VERDICT_INCONCLUSIVE = 2,
} LkVerdict;

/**
 * A finitely presented graded module.
 */
typedef struct LkModule LkModule;

/**
 * A quotient of a weighted polynomial ring.
 */
typedef struct LkRing LkRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *lk_last_error(void);

/**
 * Parses a `ring NAME { ... }` definition.
 *
 * # Safety
 * `src` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LkStatus lk_ring_parse(const char *src, struct LkRing **out);

/**
 * # Safety
 * `ring` must come from [`lk_ring_parse`] and not be used afterwards.
 */
void lk_ring_free(struct LkRing *ring);

/**
 * Krull dimension of the ring.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum LkStatus lk_ring_dim(const struct LkRing *ring, int64_t *out);

/**
 * Parses a `module NAME over R { ... }` definition over `ring`.
 *
 * # Safety
 * `ring` must be a live handle, `src` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum LkStatus lk_module_parse(const struct LkRing *ring, const char *src, struct LkModule **out);

/**
 * The ring itself as a module.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum LkStatus lk_module_ring(const struct LkRing *ring, struct LkModule **out);

/**
 * The canonical module of a Cohen-Macaulay ring.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum LkStatus lk_module_canonical(const struct LkRing *ring, struct LkModule **out);

/**
 * # Safety
 * `module` must come from this library and not be used afterwards.
 */
void lk_module_free(struct LkModule *module);

/**
 * Writes `dim M_d` for `d = lo..=hi` into `out`, which must hold
 * `hi - lo + 1` values.
 *
 * # Safety
 * `module` must be a live handle and `out` valid for `hi - lo + 1` writes.
 */
enum LkStatus lk_module_hilbert_function(const struct LkModule *module,
                                         int64_t lo,
                                         int64_t hi,
                                         int64_t *out);

/**
 * A module definition in the input syntax, released with [`lk_string_free`].
 *
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum LkStatus lk_module_definition(const struct LkModule *module, char **out);

/**
 * `λ(C, M)`.
 *
 * # Safety
 * `c` and `m` must be live handles and `out` a valid pointer.
 */
enum LkStatus lk_lambda(const struct LkModule *c, const struct LkModule *m, struct LkModule **out);

/**
 * `Tr_C M`.
 *
 * # Safety
 * `c` and `m` must be live handles and `out` a valid pointer.
 */
enum LkStatus lk_transpose(const struct LkModule *c,
                           const struct LkModule *m,
                           struct LkModule **out);

/**
 * `Ext^i(M, N)`.
 *
 * # Safety
 * `m` and `n` must be live handles and `out` a valid pointer.
 */
enum LkStatus lk_ext(size_t i,
                     const struct LkModule *m,
                     const struct LkModule *n,
                     struct LkModule **out);

/**
 * Horizontal linkage of `M` with respect to `C`. `c_is_canonical` declares
 * that `C` is the canonical module of its ring.
 *
 * # Safety
 * `c` and `m` must be live handles and `out` a valid pointer.
 */
enum LkStatus lk_linkage_check(const struct LkModule *c,
                               const struct LkModule *m,
                               size_t bound,
                               size_t trials,
                               uint64_t seed,
                               bool c_is_canonical,
                               enum LkVerdict *out);

/**
 * Runs the named suites (`A`, `B`, `C`, `L`, a comma list or `all`) over a
 * corpus directory. The JSON report is stored in `report`; `success` is set
 * when no result failed.
 *
 * # Safety
 * String arguments must be NUL-terminated; `report` and `success` must be
 * valid pointers.
 */
enum LkStatus lk_suite_run(const char *corpus,
                           const char *suites,
                           size_t bound,
                           size_t trials,
                           uint64_t seed,
                           char **report,
                           bool *success);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void lk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKAGE_H */
