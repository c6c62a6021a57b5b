/* C interface for the cmplxgt complex group testing library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum CgtStatus {
  CGT_STATUS_OK = 0,
  CGT_STATUS_NULL_POINTER = 1,
  CGT_STATUS_INVALID_ARGUMENT = 2,
  CGT_STATUS_CONSTRUCTION_FAILED = 3,
  CGT_STATUS_VERIFICATION_FAILED = 4,
  CGT_STATUS_BUDGET_EXCEEDED = 5,
  CGT_STATUS_PARSE_ERROR = 6,
  CGT_STATUS_IO_ERROR = 7,
  CGT_STATUS_DECODE_FAILED = 8,
  CGT_STATUS_INTERNAL = 9,
} CgtStatus;

/**
 * Test channel semantics.
 */
typedef enum CgtMode {
  CGT_MODE_CCMPLX = 0,
  CGT_MODE_GCMPLX = 1,
} CgtMode;

/**
 * Opaque hidden complex family.
 */
typedef struct CgtComplexSet CgtComplexSet;

/**
 * Opaque composed test design.
 */
typedef struct CgtDesign CgtDesign;

/**
 * Opaque binary measurement matrix.
 */
typedef struct CgtMatrix CgtMatrix;

/**
 * Opaque outcome vector.
 */
typedef struct CgtOutcome CgtOutcome;

/**
 * Opaque decoding result.
 */
typedef struct CgtResult CgtResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message (NUL-terminated) into `buf` and returns the
 * byte count the full message needs, including the terminator. Call with a
 * null `buf` to query the size.
 */
uintptr_t cgt_last_error(char *buf, uintptr_t cap);

/**
 * Builds a random (d, r; z]-disjunct matrix over `n` items, verified before
 * return (exhaustively within the default budget, sampled above it).
 */
enum CgtStatus cgt_matrix_random_disjunct(uintptr_t n,
                                          uintptr_t d,
                                          uintptr_t r,
                                          uintptr_t z,
                                          uint64_t seed,
                                          struct CgtMatrix **out);

/**
 * Builds the deterministic code-concatenation d-disjunct matrix.
 */
enum CgtStatus cgt_matrix_kautz_singleton(uintptr_t n, uintptr_t d, struct CgtMatrix **out);

enum CgtStatus cgt_matrix_identity(uintptr_t n, struct CgtMatrix **out);

uintptr_t cgt_matrix_rows(const struct CgtMatrix *m);

uintptr_t cgt_matrix_cols(const struct CgtMatrix *m);

/**
 * Entry at (row, col): 0 or 1, or -1 on a null handle or out-of-range index.
 */
int32_t cgt_matrix_get(const struct CgtMatrix *m, uintptr_t row, uintptr_t col);

/**
 * Exhaustively decides (d, r; z]-disjunctness; `is_disjunct` receives the
 * verdict. Fails with `BUDGET_EXCEEDED` when the pair count tops the cap.
 */
enum CgtStatus cgt_matrix_verify(const struct CgtMatrix *m,
                                 uintptr_t d,
                                 uintptr_t r,
                                 uintptr_t z,
                                 uint64_t max_pair_checks,
                                 bool *is_disjunct);

enum CgtStatus cgt_matrix_read_file(const char *path, struct CgtMatrix **out);

enum CgtStatus cgt_matrix_write_file(const struct CgtMatrix *m, const char *path);

void cgt_matrix_free(struct CgtMatrix *m);

/**
 * Builds a complex family from flattened item arrays. `items` holds the
 * concatenated complexes, `lens[i]` the length of complex `i`, `thresholds`
 * the per-complex trigger counts.
 */
enum CgtStatus cgt_complex_set_new(uintptr_t n,
                                   const uint32_t *items,
                                   const uintptr_t *lens,
                                   const uint32_t *thresholds,
                                   uintptr_t count,
                                   struct CgtComplexSet **out);

/**
 * Draws a random valid family: `s` complexes of size at most `r` over a
 * d-item pool with thresholds up to `u_max`.
 */
enum CgtStatus cgt_complex_set_random(uintptr_t n,
                                      uintptr_t d,
                                      uintptr_t r,
                                      uintptr_t s,
                                      uint32_t u_max,
                                      uint64_t seed,
                                      struct CgtComplexSet **out);

uintptr_t cgt_complex_set_count(const struct CgtComplexSet *set);

uint32_t cgt_complex_set_threshold(const struct CgtComplexSet *set, uintptr_t idx);

uintptr_t cgt_complex_set_complex_len(const struct CgtComplexSet *set, uintptr_t idx);

/**
 * Copies complex `idx` into `buf` (up to `cap` items); returns the full
 * item count.
 */
uintptr_t cgt_complex_set_complex_items(const struct CgtComplexSet *set,
                                        uintptr_t idx,
                                        uint32_t *buf,
                                        uintptr_t cap);

enum CgtStatus cgt_complex_set_read_file(const char *path, struct CgtComplexSet **out);

enum CgtStatus cgt_complex_set_write_file(const struct CgtComplexSet *set, const char *path);

void cgt_complex_set_free(struct CgtComplexSet *set);

/**
 * Composes an outer and an inner matrix into the full block design.
 */
enum CgtStatus cgt_design_new(const struct CgtMatrix *outer,
                              const struct CgtMatrix *inner,
                              struct CgtDesign **out);

/**
 * Total test count, (2k + 1) * h.
 */
uintptr_t cgt_design_test_count(const struct CgtDesign *t);

uintptr_t cgt_design_blocks(const struct CgtDesign *t);

uintptr_t cgt_design_inner_rows(const struct CgtDesign *t);

void cgt_design_free(struct CgtDesign *t);

/**
 * Simulates all tests of the design against the hidden family.
 */
enum CgtStatus cgt_encode(const struct CgtDesign *design,
                          const struct CgtComplexSet *set,
                          enum CgtMode mode,
                          struct CgtOutcome **out);

uintptr_t cgt_outcome_len(const struct CgtOutcome *y);

/**
 * Bit `i` of the flat outcome vector; -1 on bad input.
 */
int32_t cgt_outcome_get(const struct CgtOutcome *y, uintptr_t i);

/**
 * Flips `e` distinct random bits in place. `positions` (optional, `cap`
 * entries) receives the flip sites; `written` the number stored.
 */
enum CgtStatus cgt_outcome_inject_errors(struct CgtOutcome *y,
                                         uintptr_t e,
                                         uint64_t seed,
                                         uintptr_t *positions,
                                         uintptr_t cap,
                                         uintptr_t *written);

enum CgtStatus cgt_outcome_read_file(const char *path, struct CgtOutcome **out);

enum CgtStatus cgt_outcome_write_file(const struct CgtOutcome *y, const char *path);

void cgt_outcome_free(struct CgtOutcome *y);

/**
 * Runs the classical (CCMPLX) or generalized (GCMPLX) decoder.
 */
enum CgtStatus cgt_decode(const struct CgtOutcome *outcome,
                          const struct CgtDesign *design,
                          uintptr_t z,
                          enum CgtMode mode,
                          struct CgtResult **out);

uintptr_t cgt_result_complex_count(const struct CgtResult *r);

uintptr_t cgt_result_complex_len(const struct CgtResult *r, uintptr_t idx);

/**
 * Copies recovered complex `idx` into `buf` (up to `cap` items); returns
 * the full item count.
 */
uintptr_t cgt_result_complex_items(const struct CgtResult *r,
                                   uintptr_t idx,
                                   uint32_t *buf,
                                   uintptr_t cap);

/**
 * Serializes the full result (complexes, per-block dispositions, frequency
 * table) as JSON into `buf`; returns the byte count needed including the
 * NUL terminator.
 */
uintptr_t cgt_result_to_json(const struct CgtResult *r, char *buf, uintptr_t cap);

void cgt_result_free(struct CgtResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
