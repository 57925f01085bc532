#ifndef MINORFREE_H
#define MINORFREE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MfOracleMode {
  MF_ORACLE_MODE_EXHAUSTIVE = 0,
  MF_ORACLE_MODE_BALL = 1,
  MF_ORACLE_MODE_WALK = 2,
} MfOracleMode;

typedef enum MfStatus {
  MF_STATUS_OK = 0,
  MF_STATUS_NULL_POINTER = 1,
  MF_STATUS_INVALID_ARGUMENT = 2,
  MF_STATUS_PARSE = 3,
  MF_STATUS_IO = 4,
  MF_STATUS_BUDGET = 5,
  /**
   * The graph lacks something the call needs: a degree bound or weights.
   */
  MF_STATUS_UNSUPPORTED = 6,
  MF_STATUS_INTERNAL = 7,
} MfStatus;

typedef struct MfEdgeList MfEdgeList;

typedef struct MfGraph MfGraph;

typedef struct MfQueryCounts {
  uint64_t neighbor;
  uint64_t degree;
  uint64_t random_neighbor;
} MfQueryCounts;

/**
 * Covering-oracle choice. Zero `k` or `radius` means automatic.
 */
typedef struct MfOracle {
  enum MfOracleMode mode;
  size_t k;
  size_t radius;
  size_t cap;
  uint64_t ell;
  uint32_t c;
  size_t walks_per_length;
} MfOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *mf_last_error(void);

const char *mf_version(void);

/**
 * Loads a graph in the text edge-list format.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MfStatus mf_graph_load(const char *path, struct MfGraph **out);

/**
 * Parses a graph from text in the edge-list format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MfStatus mf_graph_parse(const char *text, struct MfGraph **out);

/**
 * Builds a graph from `m` edges `(us[i], vs[i])`. `weights` may be null for
 * an unweighted graph. A negative `degree_bound` means none.
 *
 * # Safety
 * `us` and `vs` (and `weights` when non-null) must point to `m` elements.
 */
enum MfStatus mf_graph_from_edges(size_t n,
                                  const size_t *us,
                                  const size_t *vs,
                                  const double *weights,
                                  size_t m,
                                  int64_t degree_bound,
                                  struct MfGraph **out);

/**
 * Generates an instance of a named family. `wmax == 0` leaves it unweighted.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MfStatus mf_generate(const char *family,
                          size_t n,
                          uint64_t seed,
                          uint64_t wmax,
                          struct MfGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards. Null is ignored.
 */
void mf_graph_free(struct MfGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null.
 */
size_t mf_graph_vertex_count(const struct MfGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle or null.
 */
size_t mf_graph_edge_count(const struct MfGraph *g);

/**
 * Queries charged to `g` since creation or the last reset.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum MfStatus mf_graph_query_counts(const struct MfGraph *g, struct MfQueryCounts *out);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
enum MfStatus mf_graph_reset_queries(const struct MfGraph *g);

/**
 * Certified distance to having a Hamiltonian path stored with a generated
 * instance; `*known` is false when there is none.
 *
 * # Safety
 * `g` must be a live graph handle and the outputs valid pointers.
 */
enum MfStatus mf_graph_truth_ham_distance(const struct MfGraph *g, bool *known, size_t *out);

/**
 * Exact distance to having a Hamiltonian path.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum MfStatus mf_ham_distance(const struct MfGraph *g, size_t *out);

/**
 * One-sided Hamiltonian-path test; the oracle is built at `eps/6`.
 *
 * # Safety
 * `g` must be a live graph handle and `accept` a valid pointer.
 */
enum MfStatus mf_test_ham_one_sided(const struct MfGraph *g,
                                    double eps,
                                    struct MfOracle oracle,
                                    uint64_t seed,
                                    bool *accept);

/**
 * Estimated distance to having a Hamiltonian path, within `eps·n` with
 * probability at least 2/3. Needs the exhaustive oracle.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum MfStatus mf_estimate_ham_distance(const struct MfGraph *g,
                                       double eps,
                                       struct MfOracle oracle,
                                       uint64_t seed,
                                       double *out);

/**
 * Weight of the minimum spanning forest.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum MfStatus mf_kruskal_weight(const struct MfGraph *g, double *out);

/**
 * Global sparse spanning subgraph with default parameters and the given oracle.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
enum MfStatus mf_build_spanner(const struct MfGraph *g,
                               double eps,
                               double wmax,
                               struct MfOracle oracle,
                               uint64_t seed,
                               struct MfEdgeList **out);

/**
 * Whether the bounded-degree per-edge rule keeps `{u, v}`.
 *
 * # Safety
 * `g` must be a live graph handle and `keep` a valid pointer.
 */
enum MfStatus mf_local_edge_bounded(const struct MfGraph *g,
                                    size_t u,
                                    size_t v,
                                    double eps,
                                    double wmax,
                                    struct MfOracle oracle,
                                    uint64_t seed,
                                    bool *keep);

/**
 * One-sided bipartiteness test; the oracle is built at `eps/2`.
 *
 * # Safety
 * `g` must be a live graph handle and `accept` a valid pointer.
 */
enum MfStatus mf_test_bipartite(const struct MfGraph *g,
                                double eps,
                                struct MfOracle oracle,
                                uint64_t seed,
                                bool *accept);

/**
 * # Safety
 * `list` must be a live edge-list handle or null.
 */
size_t mf_edge_list_len(const struct MfEdgeList *list);

/**
 * # Safety
 * `list` must be a live edge-list handle and `u`, `v` valid pointers.
 */
enum MfStatus mf_edge_list_get(const struct MfEdgeList *list, size_t i, size_t *u, size_t *v);

/**
 * # Safety
 * `list` must come from this library and not be used afterwards. Null is ignored.
 */
void mf_edge_list_free(struct MfEdgeList *list);

/**
 * Runs one harness spec given as JSON and returns its record as JSON.
 * Free the result with [`mf_string_free`].
 *
 * # Safety
 * `spec_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MfStatus mf_run_json(const char *spec_json, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void mf_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MINORFREE_H */
