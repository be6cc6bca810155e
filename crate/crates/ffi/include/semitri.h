#ifndef SEMITRI_H
#define SEMITRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SemitriMode {
  /**
   * Whatever the family file names.
   */
  SEMITRI_MODE_FROM_FILE = 0,
  SEMITRI_MODE_AUTO,
  SEMITRI_MODE_LEVITZKI,
  SEMITRI_MODE_KOLCHIN,
  SEMITRI_MODE_KAPLANSKY,
  SEMITRI_MODE_GENERAL,
  SEMITRI_MODE_TN,
  SEMITRI_MODE_IRREDUCIBLE,
} SemitriMode;

typedef enum SemitriStatus {
  SEMITRI_STATUS_OK = 0,
  SEMITRI_STATUS_NULL_ARGUMENT = 1,
  SEMITRI_STATUS_INVALID_UTF8 = 2,
  SEMITRI_STATUS_INVALID_INPUT = 3,
  SEMITRI_STATUS_RESOURCE_EXCEEDED = 4,
  SEMITRI_STATUS_PANIC = 5,
} SemitriStatus;

/**
 * Same numbering as the command line exit codes.
 */
typedef enum SemitriVerdict {
  /**
   * Triangularizable, verified, or reducible in irreducible mode.
   */
  SEMITRI_VERDICT_POSITIVE = 0,
  /**
   * Refuted, rejected, or irreducible in irreducible mode.
   */
  SEMITRI_VERDICT_NEGATIVE = 1,
  SEMITRI_VERDICT_UNDETERMINED = 3,
} SemitriVerdict;

/**
 * A decoded family file.
 */
typedef struct SemitriFamily SemitriFamily;

/**
 * The result of `semitri_triangularize` or `semitri_verify`.
 */
typedef struct SemitriReport SemitriReport;

typedef struct SemitriOptions {
  enum SemitriMode mode;
  /**
   * 0 keeps the file's bound or the default.
   */
  size_t closure_bound;
  bool finite;
  /**
   * 0 means the command line default.
   */
  uint64_t max_prime;
  /**
   * Render the report as JSON instead of text.
   */
  bool json;
} SemitriOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failing call on this thread, or null.
 */
const char *semitri_last_error(void);

/**
 * Options matching the command line defaults.
 */
struct SemitriOptions semitri_options_default(void);

/**
 * Parses and decodes a family file.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum SemitriStatus semitri_family_from_json(const char *json, struct SemitriFamily **out);

/**
 * Dimension `n` of the family, 0 for a null handle.
 *
 * # Safety
 * `family` must be null or a live handle.
 */
size_t semitri_family_dim(const struct SemitriFamily *family);

/**
 * # Safety
 * `family` must be null or a handle not yet freed.
 */
void semitri_family_free(struct SemitriFamily *family);

/**
 * Runs the engine. `options` may be null for the defaults. A refutation is a
 * successful call whose report has verdict `Negative`.
 *
 * # Safety
 * `family` must be a live handle, `options` null or valid, `out` valid.
 */
enum SemitriStatus semitri_triangularize(const struct SemitriFamily *family,
                                         const struct SemitriOptions *options,
                                         struct SemitriReport **out);

/**
 * Checks a chain file against the family.
 *
 * # Safety
 * `family` must be a live handle, `chain_json` a nul-terminated string,
 * `out` valid.
 */
enum SemitriStatus semitri_verify(const struct SemitriFamily *family,
                                  const char *chain_json,
                                  struct SemitriReport **out);

/**
 * `Undetermined` for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
enum SemitriVerdict semitri_report_verdict(const struct SemitriReport *report);

/**
 * The rendered report; owned by `report`.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *semitri_report_text(const struct SemitriReport *report);

/**
 * The chain file when a chain was found, else null; owned by `report`.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *semitri_report_chain(const struct SemitriReport *report);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void semitri_report_free(struct SemitriReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMITRI_H */
