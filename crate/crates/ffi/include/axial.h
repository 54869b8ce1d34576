#ifndef AXIAL_H
#define AXIAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AxlFamily {
  AXL_FAMILY_FREE = 0,
  AXL_FAMILY_FREE_ABELIAN = 1,
} AxlFamily;

typedef enum AxlStatus {
  AXL_STATUS_OK = 0,
  AXL_STATUS_NULL_POINTER = 1,
  AXL_STATUS_INVALID_UTF8 = 2,
  AXL_STATUS_CONFIG_ERROR = 3,
  AXL_STATUS_UNKNOWN_GENERATOR = 4,
  AXL_STATUS_RUNTIME_ERROR = 5,
  AXL_STATUS_UNKNOWN_SUITE = 6,
  AXL_STATUS_PANIC = 7,
} AxlStatus;

typedef enum AxlVerdict {
  AXL_VERDICT_PASS = 0,
  AXL_VERDICT_FAIL = 1,
  AXL_VERDICT_INCONCLUSIVE = 2,
} AxlVerdict;

/**
 * Opaque group handle.
 */
typedef struct AxlGroup AxlGroup;

/**
 * Opaque scenario handle.
 */
typedef struct AxlScenario AxlScenario;

typedef struct AxlAuditSummary {
  enum AxlVerdict axiom1;
  enum AxlVerdict axiom2;
  bool virtually_cyclic;
  /**
   * False when the constants could not be estimated; the fields below are then 0.
   */
  bool constants_known;
  bool constants_stable;
  int64_t m_hat;
  int64_t l_hat;
  int64_t n_hat;
  uint32_t radius;
} AxlAuditSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *axl_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void axl_string_free(char *s);

/**
 * Parses a scenario from TOML text.
 *
 * # Safety
 * `toml` must be a nul-terminated string and `out` a valid pointer.
 */
enum AxlStatus axl_scenario_from_toml(const char *toml, struct AxlScenario **out);

/**
 * Reads a scenario file.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` a valid pointer.
 */
enum AxlStatus axl_scenario_from_path(const char *path, struct AxlScenario **out);

/**
 * # Safety
 * `s` must be NULL or a handle from `axl_scenario_from_*`, not yet freed.
 */
void axl_scenario_free(struct AxlScenario *s);

/**
 * # Safety
 * `s` must be a live scenario handle.
 */
enum AxlStatus axl_scenario_set_radius(struct AxlScenario *s, uint32_t radius);

/**
 * # Safety
 * `s` must be a live scenario handle and `out` a valid pointer.
 */
enum AxlStatus axl_audit(struct AxlScenario *s, struct AxlAuditSummary *out);

/**
 * Full report as JSON. Nothing is written to disk.
 *
 * # Safety
 * `s` must be a live scenario handle and `out` a valid pointer.
 */
enum AxlStatus axl_report_json(struct AxlScenario *s, char **out);

/**
 * # Safety
 * `s` must be a live scenario handle, `suite` a nul-terminated string and
 * `out` a valid pointer.
 */
enum AxlStatus axl_verify_suite(struct AxlScenario *s, const char *suite, enum AxlVerdict *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum AxlStatus axl_group_new(enum AxlFamily family, size_t rank, struct AxlGroup **out);

/**
 * # Safety
 * `g` must be NULL or a handle from `axl_group_new`, not yet freed.
 */
void axl_group_free(struct AxlGroup *g);

/**
 * Reduced form of a word such as `"a^2 b A"`.
 *
 * # Safety
 * `g` must be a live group handle, `word` a nul-terminated string and `out` a
 * valid pointer.
 */
enum AxlStatus axl_group_normal_form(const struct AxlGroup *g, const char *word, char **out);

/**
 * # Safety
 * As for [`axl_group_normal_form`], with two input words.
 */
enum AxlStatus axl_group_multiply(const struct AxlGroup *g,
                                  const char *x,
                                  const char *y,
                                  char **out);

/**
 * # Safety
 * `g` must be a live group handle, `word` a nul-terminated string and `out` a
 * valid pointer.
 */
enum AxlStatus axl_group_word_length(const struct AxlGroup *g, const char *word, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AXIAL_H */
