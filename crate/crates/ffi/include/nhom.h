#ifndef NHOM_H
#define NHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum NhomStatus {
  NHOM_STATUS_OK = 0,
  NHOM_STATUS_NULL_POINTER = 1,
  NHOM_STATUS_INVALID_UTF8 = 2,
  NHOM_STATUS_PARSE = 3,
  NHOM_STATUS_INVALID = 4,
  NHOM_STATUS_DIMENSION_MISMATCH = 5,
  NHOM_STATUS_ALGEBRA_MISMATCH = 6,
  NHOM_STATUS_SIZE_BOUND_EXCEEDED = 7,
  NHOM_STATUS_NOT_CLOSED = 8,
  NHOM_STATUS_MATH = 9,
  NHOM_STATUS_PANIC = 10,
} NhomStatus;

// A finite-dimensional commutative algebra over ℚ.
typedef struct NhomAlgebra NhomAlgebra;

// A linear map between two algebras.
typedef struct NhomMap NhomMap;

// The message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *nhom_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void nhom_string_free(char *s);

// Builds an algebra from a builtin name (`Q`, `fun:x,y`, `fun:3`, `trunc:3`)
// or an algebra JSON object.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum NhomStatus nhom_algebra_new(const char *spec, struct NhomAlgebra **out);

// # Safety
// `alg` must be null or a handle from this library, not used afterwards.
void nhom_algebra_free(struct NhomAlgebra *alg);

// # Safety
// `alg` must be a live handle; `out` must be writable.
enum NhomStatus nhom_algebra_dim(const struct NhomAlgebra *alg, size_t *out);

// Counts failures of commutativity, associativity and the unit law.
// `violations_json`, when not null, receives the list as JSON.
//
// # Safety
// `alg` must be a live handle; `count` must be writable.
enum NhomStatus nhom_algebra_validate(const struct NhomAlgebra *alg,
                                      size_t *count,
                                      char **violations_json);

// The algebra as JSON.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum NhomStatus nhom_algebra_to_json(const struct NhomAlgebra *alg, char **out);

// `{ "domain": ..., "codomain": ..., "matrix": [[...]] }`, with algebras
// given inline or by builtin name.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum NhomStatus nhom_map_from_json(const char *json, struct NhomMap **out);

// # Safety
// `map` must be null or a handle from this library, not used afterwards.
void nhom_map_free(struct NhomMap *map);

// A new handle for the domain of `map`.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum NhomStatus nhom_map_domain(const struct NhomMap *map, struct NhomAlgebra **out);

// `R(f, a, z)` to `order`, as a JSON list of codomain elements. `element` is
// a JSON list of rational strings in the domain basis.
//
// # Safety
// `map` must be a live handle, `element` a NUL-terminated string, `out` writable.
enum NhomStatus nhom_char_series_json(const struct NhomMap *map,
                                      const char *element,
                                      size_t order,
                                      char **out);

// Exhaustive n-homomorphism test. `passes` receives 1 or 0; `report_json`,
// when not null, receives the verdict and witness.
//
// # Safety
// `map` must be a live handle; `passes` must be writable.
enum NhomStatus nhom_check_n_hom(const struct NhomMap *map,
                                 size_t n,
                                 int32_t *passes,
                                 char **report_json);

// Smallest `n ≤ max_n` for which `map` is an n-homomorphism, as JSON.
//
// # Safety
// `map` must be a live handle; `out` must be writable.
enum NhomStatus nhom_detect_degree(const struct NhomMap *map, size_t max_n, char **out);

// Sampled p|q-homomorphism test. A negative `k_max` selects `p + q + 4`.
//
// # Safety
// `map` must be a live handle; `passes` must be writable.
enum NhomStatus nhom_check_pq_hom(const struct NhomMap *map,
                                  size_t p,
                                  size_t q,
                                  int64_t k_max,
                                  size_t samples,
                                  uint64_t seed,
                                  int32_t *passes,
                                  char **report_json);

// `S^n A` as JSON.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum NhomStatus nhom_symmetric_power_json(const struct NhomAlgebra *alg,
                                          size_t n,
                                          size_t size_bound,
                                          char **out);

// `S^{p|q} A` as JSON.
//
// # Safety
// `alg` must be a live handle; `out` must be writable.
enum NhomStatus nhom_super_power_json(const struct NhomAlgebra *alg,
                                      size_t p,
                                      size_t q,
                                      size_t size_bound,
                                      char **out);

#endif  /* NHOM_H */
