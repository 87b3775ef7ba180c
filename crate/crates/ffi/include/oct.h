#ifndef OCT_H
#define OCT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum OctStatus {
  OCT_STATUS_OK = 0,
  OCT_STATUS_NULL_POINTER = 1,
  OCT_STATUS_INVALID_ARGUMENT = 2,
  OCT_STATUS_PARSE = 3,
  OCT_STATUS_REFUSED = 4,
  OCT_STATUS_CONTRACT = 5,
  OCT_STATUS_CONFIG = 6,
  OCT_STATUS_INTEGRATION = 7,
  OCT_STATUS_IO = 8,
  OCT_STATUS_PANIC = 9,
} OctStatus;

/**
 * LP formulation selector for [`oct_export_lp`].
 */
typedef enum OctForm {
  OCT_FORM_DIRECT = 0,
  OCT_FORM_COVER = 1,
} OctForm;

/**
 * Opaque graph handle.
 */
typedef struct OctGraph OctGraph;

/**
 * Opaque solver report handle.
 */
typedef struct OctReport OctReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *oct_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *oct_version(void);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2 * m`
 * consecutive endpoints. Duplicates and self-loops are rejected.
 */
enum OctStatus oct_graph_new(size_t n, const size_t *edges, size_t m, struct OctGraph **out);

/**
 * Parses a canonical, edge-list or QUBO file held in memory. Labels are
 * relabeled numerically where they are integers.
 */
enum OctStatus oct_graph_parse(const uint8_t *bytes, size_t len, struct OctGraph **out);

void oct_graph_free(struct OctGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 */
size_t oct_graph_vertex_count(const struct OctGraph *g);

/**
 * Edge count, or 0 for a null handle.
 */
size_t oct_graph_edge_count(const struct OctGraph *g);

/**
 * Sets `*ok` to whether deleting the `len` vertices at `s` leaves `g`
 * bipartite.
 */
enum OctStatus oct_verify(const struct OctGraph *g, const size_t *s, size_t len, bool *ok);

/**
 * Heuristic ensemble. With neither a timeout nor an iteration budget, one
 * round of every heuristic runs.
 */
enum OctStatus oct_solve_heuristic(const struct OctGraph *g,
                                   uint64_t seed,
                                   double timeout,
                                   uint64_t iterations,
                                   struct OctReport **out);

/**
 * Iterative compression at ordering `level` 0, 1 or 2. When `reduce` is
 * set the graph is preprocessed first and the solution lifted back.
 */
enum OctStatus oct_solve_ic(const struct OctGraph *g,
                            uint8_t level,
                            uint64_t seed,
                            double timeout,
                            uint64_t iterations,
                            bool reduce,
                            struct OctReport **out);

/**
 * Exact solve through vertex cover, optionally capped at `node_limit`
 * search nodes.
 */
enum OctStatus oct_solve_vc(const struct OctGraph *g,
                            uint64_t seed,
                            double timeout,
                            uint64_t node_limit,
                            struct OctReport **out);

/**
 * Brute-force optimum; [`OctStatus::Refused`] above `cap` vertices.
 */
enum OctStatus oct_oracle(const struct OctGraph *g, size_t cap, size_t *opt);

void oct_report_free(struct OctReport *r);

/**
 * Bounds and optimality flag; any output pointer may be null.
 */
enum OctStatus oct_report_bounds(const struct OctReport *r,
                                 size_t *lower,
                                 size_t *upper,
                                 bool *optimal);

/**
 * Solution size, or 0 for a null handle.
 */
size_t oct_report_size(const struct OctReport *r);

/**
 * Wall-clock seconds spent, or 0 for a null handle.
 */
double oct_report_elapsed(const struct OctReport *r);

/**
 * Copies the sorted solution into `buf`, which must hold
 * [`oct_report_size`] entries.
 */
enum OctStatus oct_report_vertices(const struct OctReport *r, size_t *buf, size_t capacity);

/**
 * LP-format model as a NUL-terminated string, released with
 * [`oct_string_free`].
 */
enum OctStatus oct_export_lp(const struct OctGraph *g, enum OctForm form, char **out);

void oct_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCT_H */
