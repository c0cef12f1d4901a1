#ifndef SEMIWEDGE_H
#define SEMIWEDGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_PARSE = 3,
  SW_STATUS_INVALID_MODULUS = 4,
  SW_STATUS_RESIDUE_OUT_OF_RANGE = 5,
  SW_STATUS_MODULUS_MISMATCH = 6,
  SW_STATUS_ORDER_MISMATCH = 7,
  SW_STATUS_NOT_BOUNDED = 8,
  SW_STATUS_ALREADY_STABLE = 9,
  SW_STATUS_NOT_STABLE = 10,
  SW_STATUS_NOT_REDUCED = 11,
  SW_STATUS_NON_MONOTONE_PARTITION = 12,
  SW_STATUS_INVALID_OPERATOR = 13,
  SW_STATUS_NOT_PRIME = 14,
  SW_STATUS_INEXACT_DIVISION = 15,
  // A crystal operator is not defined on the given set.
  SW_STATUS_UNDEFINED = 16,
  // The buffer passed in is too small; the required length is reported.
  SW_STATUS_BUFFER_TOO_SMALL = 17,
  SW_STATUS_PANIC = 99,
} SwStatus;

// Opaque handle to a Fock-space vector with integer coefficients.
typedef struct SwFockVector SwFockVector;

// Opaque handle to an integer set.
typedef struct SwSet SwSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into the library from this thread.
const char *sw_last_error(void);

// Library version as a static string.
const char *sw_version(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void sw_string_free(char *s);

// Parses a set literal such as `n=5;<=0;3,4,7`.
//
// # Safety
// `literal` must be a nul-terminated string and `out_set` a valid pointer.
enum SwStatus sw_set_parse(const char *literal, struct SwSet **out_set);

// `L_m = {k ≤ m}` for modulus `n`.
//
// # Safety
// `out_set` must be a valid pointer.
enum SwStatus sw_set_vacuum(uint32_t n, int64_t m, struct SwSet **out_set);

// # Safety
// `set` must be NULL or a handle from this library, not freed before.
void sw_set_free(struct SwSet *set);

// # Safety
// `set` must be a live handle and `out_text` a valid pointer.
enum SwStatus sw_set_to_string(const struct SwSet *set, char **out_text);

// # Safety
// `a` and `b` must be live handles and `out_equal` a valid pointer.
enum SwStatus sw_set_equal(const struct SwSet *a, const struct SwSet *b, bool *out_equal);

// # Safety
// `set` must be a live handle and `out_order` a valid pointer.
enum SwStatus sw_set_order(const struct SwSet *set, int64_t *out_order);

// # Safety
// `set` must be a live handle and `out_height` a valid pointer.
enum SwStatus sw_set_height(const struct SwSet *set, uint64_t *out_height);

// # Safety
// `set` must be a live handle and `out_flag` a valid pointer.
enum SwStatus sw_set_is_bounded(const struct SwSet *set, bool *out_flag);

// # Safety
// `set` must be a live handle and `out_flag` a valid pointer.
enum SwStatus sw_set_is_stable(const struct SwSet *set, bool *out_flag);

// The roof of `set` and the number of up steps taken.
//
// # Safety
// `set` must be a live handle; `out_roof` and `out_steps` valid pointers.
enum SwStatus sw_roof(const struct SwSet *set, struct SwSet **out_roof, size_t *out_steps);

// Copies the up trace into `ps` and `qs`, each of capacity `capacity`.
// `out_len` receives the trace length; if it exceeds `capacity` nothing is
// copied and `BufferTooSmall` is returned. A zero capacity with NULL
// buffers queries the length.
//
// # Safety
// `ps` and `qs` must point to at least `capacity` elements each.
enum SwStatus sw_roof_trace(const struct SwSet *set,
                            int64_t *ps,
                            int64_t *qs,
                            size_t capacity,
                            size_t *out_len);

// # Safety
// `set` must be a live handle and `out_set` a valid pointer.
enum SwStatus sw_ceiling(const struct SwSet *set, struct SwSet **out_set);

// Comma-separated reduced word for a stable set, in the order
// `y = s_{r_1} s_{r_2} ⋯`.
//
// # Safety
// `set` must be a live handle and `out_text` a valid pointer.
enum SwStatus sw_reduced_word(const struct SwSet *set, char **out_text);

// Lowering operator `f_i`; `Undefined` when it does not act.
//
// # Safety
// `set` must be a live handle and `out_set` a valid pointer.
enum SwStatus sw_crystal_f(const struct SwSet *set, uint32_t i, struct SwSet **out_set);

// Raising operator `e_i`; `Undefined` when it does not act.
//
// # Safety
// `set` must be a live handle and `out_set` a valid pointer.
enum SwStatus sw_crystal_e(const struct SwSet *set, uint32_t i, struct SwSet **out_set);

// Whether `set` lies in the Demazure crystal with extremal set `top`.
//
// # Safety
// `set`, `top` must be live handles and `out_member` a valid pointer.
enum SwStatus sw_member(const struct SwSet *set, const struct SwSet *top, bool *out_member);

// The standard vector `v_J`.
//
// # Safety
// `set` must be a live handle and `out_vec` a valid pointer.
enum SwStatus sw_standard_vector(const struct SwSet *set, struct SwFockVector **out_vec);

// The divided-power vector `v′_J`.
//
// # Safety
// `set` must be a live handle and `out_vec` a valid pointer.
enum SwStatus sw_divided_vector(const struct SwSet *set, struct SwFockVector **out_vec);

// # Safety
// `v` must be NULL or a handle from this library, not freed before.
void sw_fock_free(struct SwFockVector *v);

// Number of nonzero terms.
//
// # Safety
// `v` must be a live handle and `out_len` a valid pointer.
enum SwStatus sw_fock_len(const struct SwFockVector *v, size_t *out_len);

// Term dump, one `<coefficient> * <set literal>` line per term.
//
// # Safety
// `v` must be a live handle and `out_text` a valid pointer.
enum SwStatus sw_fock_to_dump(const struct SwFockVector *v, char **out_text);

// Coefficient of `ε_K` in `v` as a decimal string.
//
// # Safety
// `v`, `k` must be live handles and `out_text` a valid pointer.
enum SwStatus sw_fock_coefficient(const struct SwFockVector *v,
                                  const struct SwSet *k,
                                  char **out_text);

// Coefficient of `ε_K` in `v_J` as a decimal string, without expanding
// `v_J` in full.
//
// # Safety
// `j`, `k` must be live handles and `out_text` a valid pointer.
enum SwStatus sw_standard_coefficient(const struct SwSet *j,
                                      const struct SwSet *k,
                                      char **out_text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEMIWEDGE_H */
