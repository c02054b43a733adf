/* C ABI for the rasad Arabic corpus-analysis library. */

#ifndef RASAD_H
#define RASAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Second-pass codes for [`rasad_classify`]'s `second_pass_out`:
 * -1 none, 0 Names+Violence, 1 Names+Theological, 2 Names+Sectarian,
 * 3 Names+Other.
 */
#define RASAD_SECOND_PASS_NONE -1

/**
 * Status codes returned by fallible calls.
 */
typedef enum RasadStatus {
  RasadStatus_Ok = 0,
  RasadStatus_NullPointer = 1,
  RasadStatus_InvalidUtf8 = 2,
  RasadStatus_LexiconError = 3,
  RasadStatus_Panic = 4,
} RasadStatus;

/**
 * First-pass labels. Values are stable ABI.
 */
typedef enum RasadLabel {
  RasadLabel_Violence = 0,
  RasadLabel_Theological = 1,
  RasadLabel_Sectarian = 2,
  RasadLabel_Names = 3,
  RasadLabel_Other = 4,
  RasadLabel_None = 5,
} RasadLabel;

/**
 * Opaque engine handle: a loaded lexicon plus the stemmer.
 */
typedef struct RasadEngine RasadEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the
 * next failing call; never NULL.
 */
const char *rasad_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rasad_version(void);

/**
 * New engine with the built-in lexicon. Never fails; free with
 * [`rasad_engine_free`].
 */
struct RasadEngine *rasad_engine_new(void);

/**
 * New engine from a lexicon JSON file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to receive the handle.
 */
enum RasadStatus rasad_engine_from_file(const char *path, struct RasadEngine **out);

/**
 * Release an engine. NULL is a no-op.
 *
 * # Safety
 * `engine` must have come from this library and not be freed twice.
 */
void rasad_engine_free(struct RasadEngine *engine);

/**
 * Stem one normalized token. The result lands in `*out` as a
 * caller-owned string.
 *
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` must be writable.
 */
enum RasadStatus rasad_stem(const char *word, char **out);

/**
 * Whether `word` is in the engine's stop list: 1 yes, 0 no, -1 error.
 *
 * # Safety
 * `engine` and `word` must be valid pointers.
 */
int rasad_is_stop(const struct RasadEngine *engine, const char *word);

/**
 * Classify one tweet text with occurrence counting. Writes the four
 * category counts (Violence, Theological, Sectarian, Names) into
 * `counts_out[4]`, the first-pass label into `label_out`, and the
 * second-pass code into `second_pass_out`.
 *
 * # Safety
 * All pointers must be valid; `counts_out` must have room for 4 values.
 */
enum RasadStatus rasad_classify(const struct RasadEngine *engine,
                                const char *text,
                                uint32_t *counts_out,
                                enum RasadLabel *label_out,
                                int *second_pass_out);

/**
 * Release a string produced by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must have come from this library and not be freed twice.
 */
void rasad_string_free(char *s);

/**
 * Convenience: stem and classify in one call without a handle, using
 * the built-in lexicon. Equivalent to `rasad_engine_new` + classify.
 *
 * # Safety
 * See [`rasad_classify`].
 */
enum RasadStatus rasad_classify_builtin(const char *text,
                                        uint32_t *counts_out,
                                        enum RasadLabel *label_out,
                                        int *second_pass_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RASAD_H */
