#ifndef ODESIGN_H
#define ODESIGN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OdFamily {
  OD_FAMILY_R = 0,
  OD_FAMILY_ALP_O = 1,
  OD_FAMILY_ALP_Q = 2,
  OD_FAMILY_GP = 3,
} OdFamily;

typedef enum OdRate1Variant {
  OD_RATE1_VARIANT_W = 0,
  OD_RATE1_VARIANT_W_HAT = 1,
} OdRate1Variant;

typedef enum OdStatus {
  OD_STATUS_OK = 0,
  OD_STATUS_NULL_POINTER = 1,
  OD_STATUS_INVALID_ARGUMENT = 2,
  OD_STATUS_UNSUPPORTED = 3,
  OD_STATUS_PARSE = 4,
  OD_STATUS_INVALID_DESIGN = 5,
  OD_STATUS_INTERNAL = 6,
} OdStatus;

// An immutable design and how it was made.
typedef struct OdDesign OdDesign;

// One design cell. `sign` is 0 for a zero cell, in which case the other
// fields are unspecified.
typedef struct OdCell {
  int8_t sign;
  uint32_t var;
  bool conj;
  bool scaled;
} OdCell;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the most recent failure on this thread, or "" if there
// was none. Successful calls leave it alone. The pointer stays valid until
// the next failing call on this thread.
const char *od_last_error_message(void);

// Square ROD of order `t` (a power of two).
//
// # Safety
// `out` must be valid for writing one pointer.
enum OdStatus od_square(uint64_t t, enum OdFamily fam, bool recursive, struct OdDesign **out);

// Rate-1 ROD `W_n` or its companion.
//
// # Safety
// `out` must be valid for writing one pointer.
enum OdStatus od_rate1(size_t n,
                       enum OdRate1Variant variant,
                       enum OdFamily fam,
                       struct OdDesign **out);

// Rate-½ scaled COD `RH_n` (`n ≥ 5`), optionally post-multiplied by `Q_n`.
//
// # Safety
// `out` must be valid for writing one pointer.
enum OdStatus od_rh(size_t n, enum OdFamily fam, bool zero_free, struct OdDesign **out);

// Rate-½ scaled COD `TJC_n`.
//
// # Safety
// `out` must be valid for writing one pointer.
enum OdStatus od_tjc(size_t n, enum OdFamily fam, struct OdDesign **out);

// Parses a JSON design document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writing
// one pointer.
enum OdStatus od_design_from_json(const char *json, struct OdDesign **out);

// Serializes a design; free the result with [`od_string_free`].
//
// # Safety
// `d` must be a live handle; `out` must be valid for writing one pointer.
enum OdStatus od_design_to_json(const struct OdDesign *d, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void od_string_free(char *s);

// # Safety
// `d` must be null or a live handle, which must not be used afterwards.
void od_design_free(struct OdDesign *d);

// Rows, columns and variable count. Any output pointer may be null.
//
// # Safety
// `d` must be a live handle; non-null outputs must be writable.
enum OdStatus od_design_shape(const struct OdDesign *d,
                              size_t *rows,
                              size_t *cols,
                              size_t *num_vars);

// # Safety
// `d` must be a live handle; `out` must be writable.
enum OdStatus od_design_cell(const struct OdDesign *d, size_t row, size_t col, struct OdCell *out);

// Checks the orthogonality identity exactly. `*ok` is set either way;
// the status is `Ok` unless the arguments are bad. When `*ok` is false the
// failing Gram cell is described by [`od_last_error_message`].
//
// # Safety
// `d` must be a live handle; `ok` must be writable.
enum OdStatus od_verify(const struct OdDesign *d, bool *ok);

// # Safety
// `out` must be writable.
enum OdStatus od_rho(uint64_t n, uint64_t *out);

// # Safety
// `out` must be writable.
enum OdStatus od_nu(uint64_t n, uint64_t *out);

// # Safety
// `out` must be writable.
enum OdStatus od_hopf_stiefel(uint64_t n, uint64_t k, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODESIGN_H */
