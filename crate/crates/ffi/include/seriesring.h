#ifndef SERIESRING_H
#define SERIESRING_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SrStatus {
  SR_STATUS_OK = 0,
  /**
   * A checked property does not hold.
   */
  SR_STATUS_FALSIFIED = 1,
  /**
   * Malformed or inconsistent input.
   */
  SR_STATUS_INVALID = 2,
  /**
   * Precision ran out, or a structure is too large to enumerate.
   */
  SR_STATUS_LIMIT = 3,
  /**
   * A required pointer was NULL or a string was not UTF-8.
   */
  SR_STATUS_BAD_ARGUMENT = 4,
  /**
   * The library panicked; the handle arguments should be treated as unusable.
   */
  SR_STATUS_INTERNAL = 5,
} SrStatus;

/**
 * Which ring divisibility is decided in.
 */
typedef enum SrRingChoice {
  /**
   * All series with exponents in the positive cone.
   */
  SR_RING_CHOICE_R = 0,
  /**
   * Series whose constant term lies in the small field.
   */
  SR_RING_CHOICE_S = 1,
} SrRingChoice;

/**
 * A finite lattice with display labels.
 */
typedef struct SrLattice SrLattice;

/**
 * A series ring: extension, exponent group and default precision.
 */
typedef struct SrRing SrRing;

typedef struct SrSeries SrSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *sr_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer obtained from this library and not yet freed.
 */
void sr_string_free(char *s);

/**
 * Builds a series ring from an extension literal such as `gf(4)/gf(2)`, a
 * group literal (`z`, `q`, `z*z`) and an optional precision literal (NULL
 * for the default).
 *
 * # Safety
 * String arguments must be NULL-terminated; `out` must be writable.
 */
enum SrStatus sr_ring_new(const char *extension,
                          const char *group,
                          const char *precision,
                          struct SrRing **out);

/**
 * # Safety
 * `ring` must be NULL or a handle from [`sr_ring_new`] not yet freed.
 */
void sr_ring_free(struct SrRing *ring);

/**
 * Parses a series literal such as `1 + a*t^2 + O(t^5)` in `ring`.
 *
 * # Safety
 * `ring` must be a live handle; `literal` NULL-terminated; `out` writable.
 */
enum SrStatus sr_series_parse(const struct SrRing *ring,
                              const char *literal,
                              struct SrSeries **out);

/**
 * # Safety
 * `series` must be NULL or a live handle.
 */
void sr_series_free(struct SrSeries *series);

/**
 * The series as a literal including its `O(t^τ)` term.
 *
 * # Safety
 * `series` must be a live handle; `out` writable.
 */
enum SrStatus sr_series_to_string(const struct SrSeries *series, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles from the same ring; `out` writable.
 */
enum SrStatus sr_series_add(const struct SrSeries *a,
                            const struct SrSeries *b,
                            struct SrSeries **out);

/**
 * # Safety
 * `a` and `b` must be live handles from the same ring; `out` writable.
 */
enum SrStatus sr_series_mul(const struct SrSeries *a,
                            const struct SrSeries *b,
                            struct SrSeries **out);

/**
 * Multiplicative inverse of a series with nonzero constant term.
 *
 * # Safety
 * `series` must be a live handle; `out` writable.
 */
enum SrStatus sr_series_invert(const struct SrSeries *series, struct SrSeries **out);

/**
 * Whether `divisor` divides `dividend` in the ring named by `ring`, one of
 * the [`SrRingChoice`] values.
 *
 * # Safety
 * Handles must be live and from the same ring; `out` writable.
 */
enum SrStatus sr_divides(const struct SrSeries *divisor,
                         const struct SrSeries *dividend,
                         uint32_t ring,
                         bool *out);

/**
 * ψ(num/den) in `(γ,cK♯)` notation.
 *
 * # Safety
 * Handles must be live and from the same ring; `out` writable.
 */
enum SrStatus sr_psi(const struct SrSeries *num, const struct SrSeries *den, char **out);

/**
 * Number of atoms in a factorization of `series`, written to `count`, and
 * the atoms as a comma-separated list written to `atoms` (which may be NULL).
 *
 * # Safety
 * `series` must be a live handle; `count` writable; `atoms` NULL or writable.
 */
enum SrStatus sr_factor(const struct SrSeries *series, size_t *count, char **atoms);

/**
 * The predicted ideal lattice of the depth-`depth` truncation.
 *
 * # Safety
 * `extension` NULL-terminated; `out` writable.
 */
enum SrStatus sr_lattice_predicted(const char *extension, uint32_t depth, struct SrLattice **out);

/**
 * Ideals of the depth-`depth` truncation found by exhaustive search.
 *
 * # Safety
 * `extension` NULL-terminated; `out` writable.
 */
enum SrStatus sr_lattice_brute(const char *extension, uint32_t depth, struct SrLattice **out);

/**
 * # Safety
 * `lattice` must be NULL or a live handle.
 */
void sr_lattice_free(struct SrLattice *lattice);

/**
 * Node and cover counts.
 *
 * # Safety
 * `lattice` must be a live handle; out-pointers writable.
 */
enum SrStatus sr_lattice_size(const struct SrLattice *lattice, size_t *nodes, size_t *covers);

/**
 * Whether the two lattices are isomorphic as posets.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum SrStatus sr_lattice_isomorphic(const struct SrLattice *a,
                                    const struct SrLattice *b,
                                    bool *out);

/**
 * Hasse diagram in DOT.
 *
 * # Safety
 * `lattice` must be a live handle; `out` writable.
 */
enum SrStatus sr_lattice_to_dot(const struct SrLattice *lattice, char **out);

/**
 * Runs a command line such as `check gf(4)/gf(2) --property atomic`. The
 * exit code is written to `code`; output streams go to `out` and `err`
 * (either may be NULL). The status reports failures of the call itself.
 *
 * # Safety
 * `command` NULL-terminated; `code` writable; `out`, `err` NULL or writable.
 */
enum SrStatus sr_run(const char *command, int32_t *code, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SERIESRING_H */
