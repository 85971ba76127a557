#ifndef QWEIL_H
#define QWEIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Which exterior algebra a query runs on.
 */
typedef enum QweilKind {
  /**
   * Use the preset's configured kind.
   */
  QWEIL_KIND_PRESET = 0,
  QWEIL_KIND_WEDGE = 1,
  QWEIL_KIND_VEE = 2,
} QweilKind;

/**
 * Result codes shared by every entry point.
 */
typedef enum QweilStatus {
  QWEIL_STATUS_OK = 0,
  QWEIL_STATUS_NULL_ARGUMENT = 1,
  QWEIL_STATUS_INVALID_UTF8 = 2,
  QWEIL_STATUS_NOT_FOUND = 3,
  QWEIL_STATUS_PARSE = 4,
  QWEIL_STATUS_VALIDATION = 5,
  QWEIL_STATUS_COMPUTE = 6,
  QWEIL_STATUS_BUFFER_TOO_SMALL = 7,
  QWEIL_STATUS_PANIC = 8,
} QweilStatus;

/**
 * Opaque loaded preset.
 */
typedef struct QweilContext QweilContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qweil_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qweil_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void qweil_string_free(char *s);

/**
 * Loads and validates a preset by built-in name, file path or name under
 * `QWEIL_PRESET_DIR`.
 *
 * # Safety
 * `name` must be a valid C string and `out` a writable pointer.
 */
enum QweilStatus qweil_context_load(const char *name, struct QweilContext **out);

/**
 * Loads and validates a preset given as text.
 *
 * # Safety
 * `name` and `text` must be valid C strings and `out` a writable pointer.
 */
enum QweilStatus qweil_context_load_text(const char *name,
                                         const char *text,
                                         struct QweilContext **out);

/**
 * Releases a context. Null is ignored.
 *
 * # Safety
 * `ctx` must come from `qweil_context_load*` and not have been freed.
 */
void qweil_context_free(struct QweilContext *ctx);

/**
 * Dimension of the first-order calculus.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum QweilStatus qweil_context_dim(const struct QweilContext *ctx, size_t *out);

/**
 * Re-runs the preset validators. `passed` receives the overall verdict and
 * `report`, if non-null, a text report to be freed by the caller.
 *
 * # Safety
 * `ctx` must be a live context; `passed` writable; `report` null or writable.
 */
enum QweilStatus qweil_validate(const struct QweilContext *ctx,
                                uint64_t seed,
                                bool *passed,
                                char **report);

/**
 * Dimensions of Γ^∨ in degrees 0..=max. On `BufferTooSmall`, `len` holds
 * the required size.
 *
 * # Safety
 * `ctx` must be live, `out` must hold `cap` slots and `len` be writable.
 */
enum QweilStatus qweil_exterior_dims(const struct QweilContext *ctx,
                                     size_t max,
                                     size_t *out,
                                     size_t cap,
                                     size_t *len);

/**
 * Dimensions of the left-invariant cohomology in degrees 0..=max.
 *
 * # Safety
 * As for `qweil_exterior_dims`.
 */
enum QweilStatus qweil_group_cohomology(const struct QweilContext *ctx,
                                        size_t max,
                                        enum QweilKind kind,
                                        size_t *out,
                                        size_t cap,
                                        size_t *len);

/**
 * Runs a command line exactly as the `qweil` binary would. `argv[0]` is the
 * program name. Output strings are written when the pointers are non-null
 * and must be freed by the caller.
 *
 * # Safety
 * `argv` must point to `argc` valid C strings; the out pointers are null or
 * writable.
 */
enum QweilStatus qweil_run(size_t argc,
                           const char *const *argv,
                           int32_t *exit_code,
                           char **out_text,
                           char **err_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWEIL_H */
