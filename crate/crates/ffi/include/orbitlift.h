#ifndef ORBITLIFT_H
#define ORBITLIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every exported call.
typedef enum OrbitliftStatus {
  ORBITLIFT_STATUS_OK = 0,
  // The computation ran but at least one check failed.
  ORBITLIFT_STATUS_CHECK_FAILED = 1,
  // Malformed JSON, an invalid tableau or an impossible request.
  ORBITLIFT_STATUS_INVALID_INPUT = 2,
  ORBITLIFT_STATUS_NULL_POINTER = 3,
  ORBITLIFT_STATUS_INVALID_UTF8 = 4,
  // A Rust panic was caught at the boundary.
  ORBITLIFT_STATUS_INTERNAL = 5,
} OrbitliftStatus;

// A tableau together with its sign epsilon.
typedef struct OrbitliftTableau OrbitliftTableau;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a tableau document (`{"epsilon", "algebra"?, "rows"}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum OrbitliftStatus orbitlift_tableau_from_json(const char *json, struct OrbitliftTableau **out);

// Releases a handle. Null is accepted.
//
// # Safety
// `t` must come from this library and not have been freed.
void orbitlift_tableau_free(struct OrbitliftTableau *t);

// Number of boxes, i.e. the dimension of the module the tableau describes.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum OrbitliftStatus orbitlift_tableau_size(const struct OrbitliftTableau *t, uintptr_t *out);

// Serializes the tableau back to JSON.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum OrbitliftStatus orbitlift_tableau_to_json(const struct OrbitliftTableau *t, char **out);

// Checks admissibility, the sl2 relations and the Jordan type.
//
// Writes the JSON report to `out` and returns `CHECK_FAILED` when some
// check fails.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum OrbitliftStatus orbitlift_tableau_validate(const struct OrbitliftTableau *t, char **out);

// Lifts the tableau to a target of dimension `dim_vtilde` (0 for the
// smallest one) and checks the moment-map identities of the lift.
//
// On success `out` receives a new handle for the lifted tableau.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum OrbitliftStatus orbitlift_tableau_lift(const struct OrbitliftTableau *t,
                                            uintptr_t dim_vtilde,
                                            struct OrbitliftTableau **out);

// Runs every suite on the generated corpus and writes the JSON-lines report.
//
// # Safety
// `out` must be a valid pointer.
enum OrbitliftStatus orbitlift_verify_all(uint64_t seed,
                                          uintptr_t samples,
                                          uintptr_t max_part,
                                          char **out);

// Message for the last failed call on this thread, or null.
//
// The pointer stays valid until the next call into the library on the
// same thread; do not free it.
const char *orbitlift_last_error(void);

// Releases a string returned by the library. Null is accepted.
//
// # Safety
// `s` must come from this library and not have been freed.
void orbitlift_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITLIFT_H */
