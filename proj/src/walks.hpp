#pragma once
// Lazy random walks under the degree-bound regularization, and the batched
// walk-collision dot-product estimator. The batch size M caps live storage:
// each batch runs M fresh walks from each endpoint, takes the inner product of
// the two endpoint histograms, and discards them — so peak live storage is
// <= 2M endpoint records no matter how large the total walk budget R is.
#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace sco {

struct WalkParams {
  uint32_t t = 1;    // walk length in steps
  uint64_t r = 1;    // total walks per endpoint (rounded up to a multiple of m)
  uint32_t m = 1;    // batch size: walks per batch per endpoint
  uint64_t seed = 0;

  // Realized budget after rounding R up to the next multiple of M.
  uint64_t batches() const { return (r + m - 1) / m; }
  uint64_t realized_r() const { return batches() * m; }
};

// One lazy step: stay with probability 1 - deg(v)/(2d), else move to a uniform
// neighbor (probability 1/(2d) each). Counts the step, and the adjacency access
// when the walk moves.
inline uint32_t lazy_walk_step(const Graph& g, uint32_t v, Rng& rng,
                               QueryCounter& ctr) {
  ++ctr.walk_steps;
  const uint32_t u = rng.next_below(2 * g.degree_bound());
  if (u < g.degree(v)) {
    ++ctr.neighbor_queries;
    return g.neighbors(v)[u];
  }
  return v;
}

// Endpoint histogram of one batch of walks: sparse counts, sorted by vertex.
struct EndpointHistogram {
  std::vector<std::pair<uint32_t, uint32_t>> counts;  // (vertex, walks ending there)
  uint64_t total = 0;

  size_t entries() const { return counts.size(); }
};

// Runs `count` t-step walks from x and histograms the endpoints.
EndpointHistogram run_walk_batch(const Graph& g, uint32_t x, uint32_t t,
                                 uint32_t count, uint64_t seed, QueryCounter& ctr);

// <p_hat, q_hat> where p_hat(v) = counts[v]/total: the per-batch statistic.
double histogram_dot(const EndpointHistogram& hx, const EndpointHistogram& hy);

// Batched estimator of the collision probability <M^t 1_x, M^t 1_y>: mean of
// the per-batch histogram dots over B = R/M batches (unbiased for any M).
// Charges 2*realized_r walks of t steps to ctr; adds the call's peak live
// endpoint-record count (<= 2M) into ctr.words_stored_peak.
double est_rw_dot(const Graph& g, const WalkParams& params, uint32_t x,
                  uint32_t y, QueryCounter& ctr);

// Single-batch value Z_b (test hook: batch seeds depend only on
// (seed, x, y, b), so any execution order yields the same multiset of values).
double est_rw_dot_batch(const Graph& g, const WalkParams& params, uint32_t x,
                        uint32_t y, uint64_t batch, QueryCounter& ctr);

}  // namespace sco
