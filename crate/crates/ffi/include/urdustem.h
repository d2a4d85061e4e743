#ifndef URDUSTEM_H
#define URDUSTEM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UsStatus {
  US_STATUS_OK = 0,
  US_STATUS_NULL_ARGUMENT = 1,
  US_STATUS_INVALID_UTF8 = 2,
  US_STATUS_RULE_PARSE = 3,
  US_STATUS_STEM = 4,
  US_STATUS_INVALID_CONFIG = 5,
  US_STATUS_INTERNAL = 6,
} UsStatus;

/**
 * Opaque compiled rule set.
 */
typedef struct UsRuleSet UsRuleSet;

/**
 * Opaque result of stemming one word.
 */
typedef struct UsStemResult UsStemResult;

/**
 * Stemming options. Obtain defaults from [`urdustem_config_default`].
 */
typedef struct UsStemConfig {
  uint8_t max_suffix_passes;
  uint8_t max_prefix_passes;
  /**
   * Strip prefixes before suffixes.
   */
  bool prefix_first;
} UsStemConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *urdustem_last_error(void);

/**
 * Library version as a static string.
 */
const char *urdustem_version(void);

struct UsStemConfig urdustem_config_default(void);

/**
 * The built-in default rule set, or NULL on internal failure. Free with
 * [`urdustem_ruleset_free`].
 */
struct UsRuleSet *urdustem_ruleset_default(void);

/**
 * Parses rule-file text into a new rule set stored in `*out`.
 *
 * # Safety
 * `text` must be NULL or a valid NUL-terminated string; `out` must be NULL or
 * point to writable storage for one pointer.
 */
enum UsStatus urdustem_ruleset_parse(const char *text, struct UsRuleSet **out);

/**
 * Number of rules in the set, or 0 for NULL.
 *
 * # Safety
 * `rules` must be NULL or a live handle from this library.
 */
size_t urdustem_ruleset_len(const struct UsRuleSet *rules);

/**
 * # Safety
 * `rules` must be NULL or a handle from this library not yet freed.
 */
void urdustem_ruleset_free(struct UsRuleSet *rules);

/**
 * Stems one NFC-normalized word. `config` may be NULL for defaults. On
 * success `*out` receives a result handle to free with
 * [`urdustem_result_free`].
 *
 * # Safety
 * `rules` must be a live rule-set handle, `word` a NUL-terminated string,
 * `config` NULL or a valid pointer, and `out` writable.
 */
enum UsStatus urdustem_stem(const struct UsRuleSet *rules,
                            const char *word,
                            const struct UsStemConfig *config,
                            struct UsStemResult **out);

/**
 * # Safety
 * `result` must be NULL or a live result handle. The returned pointer is
 * owned by the handle.
 */
const char *urdustem_result_word(const struct UsStemResult *result);

/**
 * # Safety
 * See [`urdustem_result_word`].
 */
const char *urdustem_result_stem(const struct UsStemResult *result);

/**
 * Detached prefix, or NULL when none was removed.
 *
 * # Safety
 * See [`urdustem_result_word`].
 */
const char *urdustem_result_prefix(const struct UsStemResult *result);

/**
 * Detached suffix, or NULL when none was removed.
 *
 * # Safety
 * See [`urdustem_result_word`].
 */
const char *urdustem_result_suffix(const struct UsStemResult *result);

/**
 * # Safety
 * See [`urdustem_result_word`].
 */
bool urdustem_result_exception_hit(const struct UsStemResult *result);

/**
 * Number of rules applied to produce the stem.
 *
 * # Safety
 * See [`urdustem_result_word`].
 */
size_t urdustem_result_applied_count(const struct UsStemResult *result);

/**
 * # Safety
 * `result` must be NULL or a handle from [`urdustem_stem`] not yet freed.
 */
void urdustem_result_free(struct UsStemResult *result);

/**
 * Normalizes text (NFC, letter unification, optional diacritic stripping).
 * Returns a new string to release with [`urdustem_string_free`], or NULL on
 * error.
 *
 * # Safety
 * `text` must be NULL or a valid NUL-terminated string.
 */
char *urdustem_normalize(const char *text, bool strip_diacritics);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void urdustem_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* URDUSTEM_H */
