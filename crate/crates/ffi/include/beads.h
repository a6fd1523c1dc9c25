#ifndef BEADS_H
#define BEADS_H

/* Generated by cbindgen from beads-ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define BEADS_ABI_VERSION 1

typedef enum BeadsStatus {
  BEADS_STATUS_OK = 0,
  BEADS_STATUS_VERIFY_FAILED = 1,
  BEADS_STATUS_PARSE = 2,
  BEADS_STATUS_PRECONDITION = 3,
  BEADS_STATUS_NULL_POINTER = 4,
  BEADS_STATUS_INVALID_UTF8 = 5,
  BEADS_STATUS_PANIC = 6,
} BeadsStatus;

typedef struct BeadsAlgebra BeadsAlgebra;

typedef struct BeadsBeadCombo BeadsBeadCombo;

typedef struct BeadsLegCombo BeadsLegCombo;

typedef struct BeadsMatrix BeadsMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must be null or a handle from this library not yet freed.
 */
void beads_algebra_free(struct BeadsAlgebra *p);

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must be null or a handle from this library not yet freed.
 */
void beads_leg_combo_free(struct BeadsLegCombo *p);

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must be null or a handle from this library not yet freed.
 */
void beads_bead_combo_free(struct BeadsBeadCombo *p);

/*
 Releases a handle. Null is ignored.

 # Safety
 `p` must be null or a handle from this library not yet freed.
 */
void beads_matrix_free(struct BeadsMatrix *p);

uint32_t beads_abi_version(void);

/*
 Message of the last failed call on this thread, or an empty string. The
 pointer stays valid until the next call into the library on this thread.
 */
const char *beads_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library not yet freed.
 */
void beads_string_free(char *s);

/*
 Builds `sl2`, `sl3`, ... by name.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum BeadsStatus beads_algebra_new(const char *name, struct BeadsAlgebra **out);

/*
 # Safety
 `alg` must be a live handle; `out` must be writable.
 */
enum BeadsStatus beads_algebra_rank(const struct BeadsAlgebra *alg, uintptr_t *out);

/*
 Parses leg diagrams in the text DSL.

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum BeadsStatus beads_leg_combo_parse(const char *src, struct BeadsLegCombo **out);

/*
 Parses beaded diagrams in the text DSL.

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum BeadsStatus beads_bead_combo_parse(const char *src, struct BeadsBeadCombo **out);

/*
 Parses a Hermitian matrix from `{"size":n,"entries":[[...]]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BeadsStatus beads_matrix_from_json(const char *json, struct BeadsMatrix **out);

/*
 `W_g` as series JSON. A null `lambda` means rho.

 # Safety
 Handles must be live; `lambda` null or NUL-terminated; `out` writable.
 */
enum BeadsStatus beads_weight_lie(const struct BeadsAlgebra *alg,
                                  const struct BeadsLegCombo *combo,
                                  const char *lambda,
                                  uintptr_t order,
                                  char **out);

/*
 `W_G` at `e^{hλ}` as series JSON.

 # Safety
 Handles must be live; `lambda` null or NUL-terminated; `out` writable.
 */
enum BeadsStatus beads_weight_group(const struct BeadsAlgebra *alg,
                                    const struct BeadsBeadCombo *combo,
                                    const char *lambda,
                                    uintptr_t order,
                                    char **out);

/*
 Matrix part as series JSON.

 # Safety
 Handles must be live; `lambda` null or NUL-terminated; `out` writable.
 */
enum BeadsStatus beads_weight_matrix(const struct BeadsAlgebra *alg,
                                     const struct BeadsMatrix *matrix,
                                     const char *lambda,
                                     uintptr_t order,
                                     char **out);

/*
 Matrix part times diagram part as series JSON.

 # Safety
 Handles must be live; `lambda` null or NUL-terminated; `out` writable.
 */
enum BeadsStatus beads_weight_full(const struct BeadsAlgebra *alg,
                                   const struct BeadsMatrix *matrix,
                                   const struct BeadsBeadCombo *combo,
                                   const char *lambda,
                                   uintptr_t order,
                                   char **out);

/*
 Runs one verification suite over a comma-separated algebra list and
 writes the report. Returns `VerifyFailed` when any case differs; the
 report is written either way.

 # Safety
 Strings must be NUL-terminated; `out` writable.
 */
enum BeadsStatus beads_verify(const char *suite,
                              const char *algebras,
                              uintptr_t order,
                              uint64_t seed,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEADS_H */
