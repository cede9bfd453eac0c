#ifndef SPECTRA_H
#define SPECTRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum SpectraCode {
  SPECTRA_CODE_OK = 0,
  SPECTRA_CODE_NULL_POINTER = 1,
  SPECTRA_CODE_INVALID_ARGUMENT = 2,
  SPECTRA_CODE_INVALID_GRAPH = 3,
  SPECTRA_CODE_INVALID_COLORING = 4,
  SPECTRA_CODE_SEARCH_FAILED = 5,
  SPECTRA_CODE_BUFFER_TOO_SMALL = 6,
  SPECTRA_CODE_PANIC = 7,
} SpectraCode;

/**
 * Which closed form [`spectra_closed_form`] evaluates.
 */
typedef enum SpectraClosedForm {
  SPECTRA_CLOSED_FORM_MU21 = 0,
  SPECTRA_CLOSED_FORM_LOWER_W = 1,
  SPECTRA_CLOSED_FORM_UPPER_W = 2,
  SPECTRA_CLOSED_FORM_WY = 3,
} SpectraClosedForm;

/**
 * Opaque edge-coloring handle.
 */
typedef struct SpectraColoring SpectraColoring;

/**
 * Opaque graph handle.
 */
typedef struct SpectraGraph SpectraGraph;

/**
 * Search limits. Zero means unbounded for `max_nodes` and `max_millis`;
 * `workers` below 1 is treated as 1.
 */
typedef struct SpectraBudget {
  uint64_t max_nodes;
  uint64_t max_millis;
  uint32_t workers;
} SpectraBudget;

/**
 * Summary of a solve. `exact` is false when the budget ran out, in which
 * case `value` is the best found.
 */
typedef struct SpectraOutcome {
  bool exact;
  uint64_t value;
  uint64_t nodes;
} SpectraOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *spectra_last_error(void);

/**
 * Builds `K_{m,n}` (`|Y| = m`, `|X| = n`).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SpectraCode spectra_graph_complete_bipartite(size_t m, size_t n, struct SpectraGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SpectraCode spectra_graph_cycle(size_t k, struct SpectraGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SpectraCode spectra_graph_path(size_t k, struct SpectraGraph **out);

/**
 * Parses the graph JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
 */
enum SpectraCode spectra_graph_from_json(const char *json, struct SpectraGraph **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum SpectraCode spectra_graph_to_json(const struct SpectraGraph *g, char **out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void spectra_graph_free(struct SpectraGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t spectra_graph_vertex_count(const struct SpectraGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t spectra_graph_edge_count(const struct SpectraGraph *g);

/**
 * Wraps `len` colors (indexed by edge) with declared color count `t`.
 *
 * # Safety
 * `colors` must point to `len` readable values; `out` must be writable.
 */
enum SpectraCode spectra_coloring_new(uint32_t t,
                                      const uint32_t *colors,
                                      size_t len,
                                      struct SpectraColoring **out);

/**
 * # Safety
 * `c` must be null or a handle not yet freed.
 */
void spectra_coloring_free(struct SpectraColoring *c);

/**
 * Declared color count, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live coloring handle.
 */
uint32_t spectra_coloring_t(const struct SpectraColoring *c);

/**
 * Copies the colors into `buf`. `len` always receives the edge count; the
 * call fails with `BufferTooSmall` when `cap` is less than that.
 *
 * # Safety
 * `c` must be a live handle, `buf` writable for `cap` values, `len` writable.
 */
enum SpectraCode spectra_coloring_colors(const struct SpectraColoring *c,
                                         uint32_t *buf,
                                         size_t cap,
                                         size_t *len);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum SpectraCode spectra_coloring_to_json(const struct SpectraColoring *c, char **out);

/**
 * The staircase coloring `(x_i, y_j) -> i + j - 1` of `K_{m,n}`, `m >= n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpectraCode spectra_staircase(size_t m, size_t n, struct SpectraColoring **out);

/**
 * Block coloring of `K_{m,n}` interval on `Y` with `t = n * q`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpectraCode spectra_block_interval_on_y(size_t m,
                                             size_t n,
                                             size_t q,
                                             struct SpectraColoring **out);

/**
 * One collapse step of a harmonic coloring.
 *
 * # Safety
 * `g` and `c` must be live handles; `out` must be writable.
 */
enum SpectraCode spectra_collapse_step(const struct SpectraGraph *g,
                                       const struct SpectraColoring *c,
                                       struct SpectraColoring **out);

/**
 * Validates `c` on `g` and writes the number of interval vertices.
 *
 * # Safety
 * `g` and `c` must be live handles; `out` must be writable.
 */
enum SpectraCode spectra_interval_count(const struct SpectraGraph *g,
                                        const struct SpectraColoring *c,
                                        size_t *out);

/**
 * # Safety
 * `g` and `c` must be live handles; `out` must be writable.
 */
enum SpectraCode spectra_is_harmonic(const struct SpectraGraph *g,
                                     const struct SpectraColoring *c,
                                     bool *out);

/**
 * Fewest interval vertices over proper `t`-colorings. `budget` may be null
 * (unbounded). `witness` may be null; otherwise it receives a new handle or
 * null when no witness was found.
 *
 * # Safety
 * Pointers must be null where allowed or valid.
 */
enum SpectraCode spectra_mu1(const struct SpectraGraph *g,
                             uint32_t t,
                             const struct SpectraBudget *budget,
                             struct SpectraOutcome *out,
                             struct SpectraColoring **witness);

/**
 * Most interval vertices over proper `t`-colorings. Same conventions as
 * [`spectra_mu1`].
 *
 * # Safety
 * Pointers must be null where allowed or valid.
 */
enum SpectraCode spectra_mu2(const struct SpectraGraph *g,
                             uint32_t t,
                             const struct SpectraBudget *budget,
                             struct SpectraOutcome *out,
                             struct SpectraColoring **witness);

/**
 * Looks for a `t`-coloring interval at each of the `len` listed vertices.
 * `out.value` is 1 when found, 0 otherwise.
 *
 * # Safety
 * `vertices` must point to `len` readable values (may be null if `len` is
 * 0); other pointers as in [`spectra_mu1`].
 */
enum SpectraCode spectra_feasible_interval_on(const struct SpectraGraph *g,
                                              const size_t *vertices,
                                              size_t len,
                                              uint32_t t,
                                              const struct SpectraBudget *budget,
                                              struct SpectraOutcome *out,
                                              struct SpectraColoring **witness);

/**
 * Evaluates a closed form for `K_{m,n}`; `(m, n)` may come in either order.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpectraCode spectra_closed_form(enum SpectraClosedForm form, size_t m, size_t n, size_t *out);

/**
 * Runs the verification sweep and returns the report as JSON. `failures`
 * (may be null) receives the number of failed claims.
 *
 * # Safety
 * `out` must be writable; `budget` and `failures` may be null.
 */
enum SpectraCode spectra_verify_json(size_t max_m,
                                     size_t max_n,
                                     const struct SpectraBudget *budget,
                                     char **out,
                                     size_t *failures);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void spectra_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRA_H */
