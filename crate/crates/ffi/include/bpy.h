#ifndef BPY_H
#define BPY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BpyStatus {
  BPY_STATUS_OK = 0,
  BPY_STATUS_NULL_ARGUMENT = 1,
  BPY_STATUS_INVALID_UTF8 = 2,
  BPY_STATUS_PARSE = 3,
  BPY_STATUS_UNKNOWN_ROOT = 4,
  BPY_STATUS_INCOMPATIBLE_FEATURES = 5,
  BPY_STATUS_CONVERSION = 6,
  BPY_STATUS_IO = 7,
  BPY_STATUS_PANIC = 8,
} BpyStatus;

/**
 * Morphological engine handle.
 */
typedef struct BpyEngine BpyEngine;

/**
 * Word frequency table handle.
 */
typedef struct BpyFreqTable BpyFreqTable;

/**
 * Legacy-font mapping table handle.
 */
typedef struct BpyMappingTable BpyMappingTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *bpy_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void bpy_string_free(char *s);

/**
 * NFC-normalizes `text`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum BpyStatus bpy_normalize(const char *text, char **out);

/**
 * Engine over the bundled rules and lexicon.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpyStatus bpy_engine_new(struct BpyEngine **out);

/**
 * Engine over a rule file and a lexicon file.
 *
 * # Safety
 * Both paths must be NUL-terminated strings; `out` must be writable.
 */
enum BpyStatus bpy_engine_load(const char *rules_path,
                               const char *lexicon_path,
                               struct BpyEngine **out);

/**
 * # Safety
 * `engine` must be NULL or a handle from this library, not yet freed.
 */
void bpy_engine_free(struct BpyEngine *engine);

/**
 * Generates a form, e.g. lemma `কর` with features `verb,imperative,slot=1`.
 *
 * # Safety
 * `engine` must be a live handle; strings NUL-terminated; `out` writable.
 */
enum BpyStatus bpy_generate(const struct BpyEngine *engine,
                            const char *lemma,
                            const char *features,
                            char **out);

/**
 * Analyzes a word or two-word form. The result has one line per analysis:
 * `surface TAB root TAB features TAB rule-ids`; empty if none.
 *
 * # Safety
 * `engine` must be a live handle; `word` NUL-terminated; `out` writable.
 */
enum BpyStatus bpy_analyze(const struct BpyEngine *engine,
                           const char *word,
                           bool use_lexicon,
                           char **out);

/**
 * The bundled sample mapping table.
 *
 * # Safety
 * `out` must be writable.
 */
enum BpyStatus bpy_table_sample(struct BpyMappingTable **out);

/**
 * # Safety
 * `path` must be NUL-terminated; `out` writable.
 */
enum BpyStatus bpy_table_load(const char *path, struct BpyMappingTable **out);

/**
 * # Safety
 * `table` must be NULL or a handle from this library, not yet freed.
 */
void bpy_table_free(struct BpyMappingTable *table);

/**
 * Converts `len` legacy bytes to Unicode text.
 *
 * # Safety
 * `table` must be a live handle; `bytes` must point to `len` readable
 * bytes (may be NULL when `len` is 0); `out` writable.
 */
enum BpyStatus bpy_convert(const struct BpyMappingTable *table,
                           const uint8_t *bytes,
                           size_t len,
                           bool lenient,
                           char **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BpyStatus bpy_freq_new(struct BpyFreqTable **out);

/**
 * # Safety
 * `table` must be NULL or a handle from this library, not yet freed.
 */
void bpy_freq_free(struct BpyFreqTable *table);

/**
 * Tokenizes `text` and adds its words to `table`.
 *
 * # Safety
 * `table` must be a live handle not used concurrently; `text` NUL-terminated.
 */
enum BpyStatus bpy_freq_add_text(struct BpyFreqTable *table, const char *text);

/**
 * Adds every count of `other` into `table`.
 *
 * # Safety
 * Both must be live handles; `table` not used concurrently.
 */
enum BpyStatus bpy_freq_merge(struct BpyFreqTable *table, const struct BpyFreqTable *other);

/**
 * # Safety
 * `table` must be a live handle; out pointers writable.
 */
enum BpyStatus bpy_freq_totals(const struct BpyFreqTable *table,
                               uint64_t *total_tokens,
                               size_t *type_count);

/**
 * Ranked TSV export. `top` limits the rows; `SIZE_MAX` means all.
 *
 * # Safety
 * `table` must be a live handle; `out` writable.
 */
enum BpyStatus bpy_freq_to_tsv(const struct BpyFreqTable *table, size_t top, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BPY_H */
