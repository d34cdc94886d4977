#ifndef SCORACLE_H
#define SCORACLE_H

/* C interface to the sublinear spectral clustering oracle library.
 *
 * Handles are opaque; every function returns a status code (SCO_OK on
 * success) and reports results through out-parameters. On any non-zero
 * return, sco_last_error() gives a human-readable message for the calling
 * thread, valid until that thread's next failing call.
 *
 * All randomized operations are pure functions of their seed arguments:
 * repeating a call with the same inputs reproduces the same outputs bit for
 * bit, regardless of thread count.
 */

#include <stdint.h>

#if defined(_WIN32)
#define SCO_API __declspec(dllexport)
#else
#define SCO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  SCO_OK = 0,
  SCO_EINVAL = 1,   /* bad arguments (null handle, domain violation)   */
  SCO_EFAIL = 2,    /* construction/init declined: not a usage error   */
  SCO_EIO = 3,      /* file or parse failure                           */
  SCO_EINTERNAL = 4 /* unexpected internal error                       */
};

typedef struct sco_graph sco_graph;
typedef struct sco_state sco_state;

/* Sketch/oracle configuration; mirror of the library defaults via
 * sco_params_default(). */
typedef struct sco_params {
  uint32_t k;       /* cluster count / embedding rank            */
  double xi;        /* accuracy parameter for threshold formulas */
  uint32_t t;       /* walk length                               */
  uint32_t s;       /* landmark count (>= k)                     */
  uint64_t r_init;  /* walks per endpoint per Gram entry         */
  uint32_t m_init;  /* batch size during construction            */
  uint64_t r_query; /* walks per endpoint per query alpha entry  */
  uint32_t m_query; /* batch size during queries                 */
  uint32_t reps;    /* median repetitions                        */
  uint64_t seed;    /* master seed                               */
} sco_params;

SCO_API const char* sco_last_error(void);

/* 0 = use all hardware threads; estimates are identical either way. */
SCO_API void sco_set_threads(uint32_t n);

SCO_API void sco_params_default(sco_params* params);

/* ---- graphs ---------------------------------------------------------- */

SCO_API int sco_graph_gen_sbm(uint32_t n, uint32_t k, double p, double q,
                              uint64_t seed, sco_graph** out);
/* `copies` >= 1 disjoint copies of a random d-regular graph (independent
 * samples); ground truth labels each copy as its own cluster. */
SCO_API int sco_graph_gen_expander(uint32_t n, uint32_t d, uint64_t seed,
                                   uint32_t copies, sco_graph** out);
SCO_API int sco_graph_load(const char* path, sco_graph** out);
SCO_API int sco_graph_save(const sco_graph* g, const char* path);
SCO_API void sco_graph_free(sco_graph* g);

/* Any out-pointer may be NULL when the caller does not need that field.
 * has_truth is 0/1; k is 0 when the graph carries no ground truth. */
SCO_API int sco_graph_info(const sco_graph* g, uint32_t* n, uint64_t* m,
                           uint32_t* k, int* has_truth);
/* labels_out must hold n entries. Fails when the graph has no truth. */
SCO_API int sco_graph_truth(const sco_graph* g, uint32_t* labels_out);

/* ---- clustering oracle ------------------------------------------------ */

/* Builds the membership data structure: dot-product sketch + sampled
 * similarity graph with exactly params->k components. Returns SCO_EFAIL
 * (with detail in sco_last_error) when construction declines. */
SCO_API int sco_build_state(const sco_graph* g, const sco_params* params,
                            uint32_t s_cluster, double theta, sco_state** out);
SCO_API int sco_state_save(const sco_state* state, const char* path);
SCO_API int sco_state_load(const char* path, sco_state** out);
SCO_API void sco_state_free(sco_state* state);

/* words: persistent footprint; peak_words: construction high-water mark;
 * walks_per_query: random walks charged by one membership query. */
SCO_API int sco_state_stats(const sco_state* state, uint64_t* words,
                            uint64_t* peak_words, uint64_t* walks_per_query,
                            uint32_t* k, uint32_t* s_cluster);

/* label: index in [0, k). outlier = 1 when the answer fell back to the
 * seeded random index. walks_used: walks charged by this call. */
SCO_API int sco_which_cluster(const sco_graph* g, const sco_state* state,
                              uint32_t vertex, uint32_t* label, int* outlier,
                              uint64_t* walks_used);
/* labels_out must hold n entries. */
SCO_API int sco_label_all(const sco_graph* g, const sco_state* state,
                          uint32_t* labels_out, uint64_t* walks_used);

/* Best label agreement over global relabelings; labels must be < k. */
SCO_API int sco_accuracy(const uint32_t* pred, const uint32_t* truth,
                         uint64_t len, uint32_t k, double* out);

/* ---- distinguisher ---------------------------------------------------- */

/* One-cluster vs two-cluster verdict from batched collision estimates:
 * two_cluster = 1 iff the second eigenvalue statistic v2^2 >= 0.6. */
SCO_API int sco_distinguish(const sco_graph* g, uint32_t m, uint32_t t,
                            uint64_t r, uint32_t s, uint32_t reps,
                            uint64_t seed, int* two_cluster, double* v2_squared,
                            uint64_t* walks_used, uint64_t* words_peak);

/* ---- experiments ------------------------------------------------------ */

/* Space/time trade-off sweep at fixed R*M budget. Writes a malloc'd CSV
 * (header M,seed,words,walks_per_query,accuracy,success,wall_ms) to
 * *csv_out; release it with sco_string_free. Two calls with identical
 * arguments and timing disabled produce byte-identical CSV. */
SCO_API int sco_sweep_csv(const sco_graph* g, const sco_params* base,
                          uint64_t budget, const uint32_t* ms, uint64_t n_ms,
                          uint32_t s_cluster, double theta,
                          const uint64_t* seeds, uint64_t n_seeds, int timing,
                          char** csv_out);
SCO_API void sco_string_free(char* text);

/* ---- exact reference (dense; small graphs only) ----------------------- */

/* Rank-k spectral-embedding dot product <f_x, f_y> by dense
 * eigendecomposition. degenerate = 1 when the k-th eigenvalue gap is
 * numerically indistinct (value still returned). */
SCO_API int sco_exact_dot(const sco_graph* g, uint32_t k, uint32_t x,
                          uint32_t y, double* out, int* degenerate);
/* Exact t-step lazy-walk collision probability <M^t 1_x, M^t 1_y>. */
SCO_API int sco_exact_collision(const sco_graph* g, uint32_t x, uint32_t y,
                                uint32_t t, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SCORACLE_H */
