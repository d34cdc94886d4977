#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"
#include "sketch.hpp"

namespace sco {

// Fraction of vertices whose predicted label matches the reference labeling
// under the best global relabeling: max over permutations pi of
// (1/n) * |{ i : pi(pred[i]) == truth[i] }|. Exhaustive search over
// permutations for k <= 8, optimal-assignment (Hungarian) solver above.
// Both labelings must have the same length and entries < k.
double clustering_accuracy(const std::vector<uint32_t>& pred,
                           const std::vector<uint32_t>& truth, uint32_t k);

// One experiment outcome: a clustering oracle built at batch size `m` with
// construction seed `seed`, then queried for every evaluation vertex.
//   words           peak construction footprint in machine words (0 on fail)
//   walks_per_query random walks charged by one membership query
//   accuracy        label agreement with ground truth under best relabeling
//   success         construction produced the required component count
//   wall_ms         wall-clock build+label time; 0.0 unless timing requested
struct ExperimentRow {
  uint32_t m = 0;
  uint64_t seed = 0;
  uint64_t words = 0;
  uint64_t walks_per_query = 0;
  double accuracy = 0.0;
  bool success = false;
  double wall_ms = 0.0;
};

// Builds one oracle from `params` and labels `eval_vertices` (every vertex
// when empty), scoring against the graph's ground truth. The row's `m` and
// `seed` columns are taken from `params.m_query` and `row_seed` (the sweep's
// per-run seed label; `params.seed` holds the already-derived stream seed).
ExperimentRow run_config(const Graph& g, const SketchParams& params,
                         uint32_t s_cluster, double theta, uint64_t row_seed,
                         const std::vector<uint32_t>& eval_vertices = {},
                         bool timing = false);

// Space/time trade-off sweep: for each M in `ms` the per-estimate walk
// budget R is held at ceil(budget / M) for both construction and queries,
// so R*M stays (up to rounding) constant while the live-storage bound 2M
// moves. Each M runs once per entry of `seeds`; the stream seed of row
// (M, seed) is derive_seed(base.seed, "sweep", {seed}), so a row's walks
// depend on its seed label and the master seed only.
struct SweepConfig {
  SketchParams base;          // k, xi, t, s, reps, seed; r/m set per row
  uint64_t budget = 6400;     // fixed R*M
  std::vector<uint32_t> ms;   // batch sizes, at least two
  uint32_t s_cluster = 21;
  double theta = 0.0005;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  bool timing = false;
};

// Runs the whole grid in (M, seed) order and returns rows in that order.
// Requires ground truth on the graph and at least two M values.
std::vector<ExperimentRow> run_tradeoff_sweep(const Graph& g,
                                              const SweepConfig& cfg);

// Renders rows as CSV with header `M,seed,words,walks_per_query,accuracy,
// success,wall_ms`; accuracy uses 6 decimals and wall_ms 3, so two runs with
// identical configuration and timing disabled are byte-identical.
std::string sweep_csv(const std::vector<ExperimentRow>& rows);

}  // namespace sco
