#ifndef CREMONA_H
#define CREMONA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CremonaStatus {
  CREMONA_STATUS_OK = 0,
  CREMONA_STATUS_NULL_POINTER = 1,
  CREMONA_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input or an unknown name.
   */
  CREMONA_STATUS_INPUT = 3,
  /**
   * A precondition of the operation does not hold.
   */
  CREMONA_STATUS_PRECONDITION = 4,
  /**
   * An exact check failed.
   */
  CREMONA_STATUS_VERIFICATION = 5,
  CREMONA_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * A bug: the library panicked.
   */
  CREMONA_STATUS_INTERNAL = 7,
} CremonaStatus;

/**
 * A rational self-map of projective `n`-space.
 */
typedef struct CremonaMap CremonaMap;

/**
 * A polynomial over the rationals in `X0..Xn`.
 */
typedef struct CremonaPoly CremonaPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *cremona_last_error_message(void);

/**
 * Parses a polynomial in `X0..Xn`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CremonaStatus cremona_poly_parse(const char *src, size_t n, struct CremonaPoly **out);

/**
 * Canonical text of a polynomial.
 *
 * # Safety
 * `poly` must come from this library; `buf` must hold `capacity` bytes.
 */
enum CremonaStatus cremona_poly_to_string(const struct CremonaPoly *poly,
                                          char *buf,
                                          size_t capacity,
                                          size_t *needed);

/**
 * # Safety
 * `poly` must be null or come from this library and not be used afterwards.
 */
void cremona_poly_free(struct CremonaPoly *poly);

/**
 * Loads the projective map `name` from map-file text.
 *
 * # Safety
 * `src` and `name` must be NUL-terminated strings and `out` writable.
 */
enum CremonaStatus cremona_map_from_file(const char *src,
                                         const char *name,
                                         struct CremonaMap **out);

/**
 * Builds a map from `count` homogeneous components of one degree.
 *
 * # Safety
 * `components` must point to `count` polynomial handles from this library.
 */
enum CremonaStatus cremona_map_from_components(const struct CremonaPoly *const *components,
                                               size_t count,
                                               struct CremonaMap **out);

/**
 * # Safety
 * `map` must come from this library and `out` be writable.
 */
enum CremonaStatus cremona_map_ambient_n(const struct CremonaMap *map, size_t *out);

/**
 * `g ∘ f`, optionally reduced to the coprime representative.
 *
 * # Safety
 * `g` and `f` must come from this library and `out` be writable.
 */
enum CremonaStatus cremona_map_compose(const struct CremonaMap *g,
                                       const struct CremonaMap *f,
                                       bool normalize,
                                       struct CremonaMap **out);

/**
 * Whether two maps agree as rational maps.
 *
 * # Safety
 * `a` and `b` must come from this library and `out` be writable.
 */
enum CremonaStatus cremona_map_equals_projectively(const struct CremonaMap *a,
                                                   const struct CremonaMap *b,
                                                   bool *out);

/**
 * Text `[f0 : ... : fn]` of a map.
 *
 * # Safety
 * `map` must come from this library; `buf` must hold `capacity` bytes.
 */
enum CremonaStatus cremona_map_to_string(const struct CremonaMap *map,
                                         char *buf,
                                         size_t capacity,
                                         size_t *needed);

/**
 * The exponent matrix `rho(map)`, row-major, `n * n` entries. `needed`
 * receives the entry count.
 *
 * # Safety
 * `map` must come from this library; `out` must hold `capacity` entries.
 */
enum CremonaStatus cremona_map_rho(const struct CremonaMap *map,
                                   int64_t *out,
                                   size_t capacity,
                                   size_t *needed);

/**
 * # Safety
 * `map` must be null or come from this library and not be used afterwards.
 */
void cremona_map_free(struct CremonaMap *map);

/**
 * Checks that all reduced words of length `<= max_len` in two `SL2(Z)`
 * matrices (row-major `[a, b, c, d]`) have distinct images.
 *
 * # Safety
 * `a` and `b` must point to four integers each; `holds` must be writable;
 * `words_checked` may be null.
 */
enum CremonaStatus cremona_sl2_certificate(const int64_t *a,
                                           const int64_t *b,
                                           size_t max_len,
                                           size_t workers,
                                           bool *holds,
                                           uint64_t *words_checked);

/**
 * The same check for `rho(a1)^2, rho(a2)^2` in dimension `n >= 4`.
 *
 * # Safety
 * `holds` must be writable; `words_checked` may be null.
 */
enum CremonaStatus cremona_rho_certificate(size_t n,
                                           size_t max_len,
                                           size_t workers,
                                           bool *holds,
                                           uint64_t *words_checked);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREMONA_H */
