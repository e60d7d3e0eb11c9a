#ifndef IHGENERA_H
#define IHGENERA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of a call across the C interface.
typedef enum IhgStatus {
  IHG_STATUS_OK = 0,
  // A required pointer argument was null.
  IHG_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  IHG_STATUS_INVALID_UTF8 = 2,
  // Input text could not be parsed.
  IHG_STATUS_SYNTAX = 3,
  // Input parsed but is not usable: invalid space, missing data, bad parameter.
  IHG_STATUS_INVALID_INPUT = 4,
  // A `(1 + y)` denominator survived where the result must be a Laurent polynomial.
  IHG_STATUS_DENOMINATOR_SURVIVES = 5,
  // The library panicked. This is a bug.
  IHG_STATUS_PANIC = 6,
} IhgStatus;

// A stratified map: target space with fiber and cone preimage data.
typedef struct IhgMap IhgMap;

// A parsed stratified space.
typedef struct IhgSpace IhgSpace;

// Message describing the last failed call on this thread, or null. The
// pointer stays valid until the next call into this library on the same
// thread.
const char *ihg_last_error(void);

// Library version as a static string.
const char *ihg_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ihg_string_free(char *s);

// Parses a stratified-space file.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum IhgStatus ihg_space_parse(const char *text, struct IhgSpace **out);

// # Safety
// `space` must be null or a handle from [`ihg_space_parse`], not yet freed.
void ihg_space_free(struct IhgSpace *space);

// Writes whether the space has no error diagnostics.
//
// # Safety
// `space` must be a live handle; `out` must be writable.
enum IhgStatus ihg_space_is_valid(const struct IhgSpace *space, bool *out);

// All diagnostics of the space, one per line.
//
// # Safety
// `space` must be a live handle; `out` must be writable.
enum IhgStatus ihg_space_diagnostics(const struct IhgSpace *space, char **out);

// `chi_y` of the space computed from the intersection genera of its
// stratum closures.
//
// # Safety
// `space` must be a live handle; `out` must be writable.
enum IhgStatus ihg_space_chi_y(const struct IhgSpace *space, char **out);

// Parses a map file. The map's `space = ...` entry is ignored and
// `space_text` is used as the target space instead.
//
// # Safety
// Both strings must be nul-terminated; `out` must be writable.
enum IhgStatus ihg_map_parse(const char *map_text, const char *space_text, struct IhgMap **out);

// Builds one of the standard examples, e.g. `"blowup_linear"` with
// parameters `{4, 1}`. `params` may be null when `len` is 0.
//
// # Safety
// `kind` must be nul-terminated; `params` must point to `len` values;
// `out` must be writable.
enum IhgStatus ihg_map_example(const char *kind,
                               const int64_t *params,
                               uintptr_t len,
                               struct IhgMap **out);

// # Safety
// `map` must be null or a live handle, not yet freed.
void ihg_map_free(struct IhgMap *map);

// `chi_y` of the source of the map, pushed forward through the fibers.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum IhgStatus ihg_map_chi_y(const struct IhgMap *map, char **out);

// `Ichi_y` of the source, from the cone preimages.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum IhgStatus ihg_map_ichi_y(const struct IhgMap *map, char **out);

// E-polynomial of the source in `u`, `v`. Needs Hodge-level data.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum IhgStatus ihg_map_e_poly(const struct IhgMap *map, char **out);

// Evaluates a Laurent polynomial in `y` at a rational such as `"-1"` or `"1/2"`.
//
// # Safety
// Both strings must be nul-terminated; `out` must be writable.
enum IhgStatus ihg_eval_y(const char *poly, const char *y, char **out);

// Degree of `T_y(P^n)`, that is `chi_y(P^n)`.
//
// # Safety
// `out` must be writable.
enum IhgStatus ihg_ty_projective_degree(uint32_t n, char **out);

// Coefficients of `Q_y(a)` up to `a^order`, one per line.
//
// # Safety
// `out` must be writable.
enum IhgStatus ihg_qy_series(uintptr_t order, char **out);

#endif  /* IHGENERA_H */
