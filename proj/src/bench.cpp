#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "oracle.hpp"
#include "rng.hpp"
#include "walks.hpp"

namespace sco {

namespace {

// Largest total assignment on a k x k agreement matrix via the Hungarian
// algorithm with potentials (O(k^3)); counts are turned into costs so the
// usual minimization form applies.
uint64_t best_assignment(const std::vector<std::vector<uint64_t>>& counts,
                         uint32_t k) {
  const double kInf = std::numeric_limits<double>::infinity();
  uint64_t max_entry = 0;
  for (uint32_t a = 0; a < k; ++a)
    for (uint32_t b = 0; b < k; ++b) max_entry = std::max(max_entry, counts[a][b]);

  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<uint32_t> p(k + 1, 0), way(k + 1, 0);
  for (uint32_t i = 1; i <= k; ++i) {
    p[0] = i;
    uint32_t j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const uint32_t i0 = p[j0];
      uint32_t j1 = 0;
      double delta = kInf;
      for (uint32_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cost = static_cast<double>(max_entry) -
                            static_cast<double>(counts[i0 - 1][j - 1]);
        const double cur = cost - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (uint32_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const uint32_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  uint64_t matched = 0;
  for (uint32_t j = 1; j <= k; ++j) matched += counts[p[j] - 1][j - 1];
  return matched;
}

uint64_t best_exhaustive(const std::vector<std::vector<uint64_t>>& counts,
                         uint32_t k) {
  std::vector<uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  uint64_t best = 0;
  do {
    uint64_t matched = 0;
    for (uint32_t a = 0; a < k; ++a) matched += counts[a][perm[a]];
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

double clustering_accuracy(const std::vector<uint32_t>& pred,
                           const std::vector<uint32_t>& truth, uint32_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (pred.size() != truth.size())
    throw std::invalid_argument("labelings must have equal length");
  if (pred.empty()) throw std::invalid_argument("labelings must be non-empty");

  std::vector<std::vector<uint64_t>> counts(k, std::vector<uint64_t>(k, 0));
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] >= k || truth[i] >= k)
      throw std::invalid_argument("label out of range");
    ++counts[pred[i]][truth[i]];
  }

  const uint64_t matched =
      k <= 8 ? best_exhaustive(counts, k) : best_assignment(counts, k);
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

ExperimentRow run_config(const Graph& g, const SketchParams& params,
                         uint32_t s_cluster, double theta, uint64_t row_seed,
                         const std::vector<uint32_t>& eval_vertices,
                         bool timing) {
  if (!g.has_ground_truth())
    throw std::invalid_argument("experiment graph needs ground-truth labels");

  ExperimentRow row;
  row.m = params.m_query;
  row.seed = row_seed;
  WalkParams query_walks;
  query_walks.t = params.t;
  query_walks.r = params.r_query;
  query_walks.m = params.m_query;
  row.walks_per_query = 2ull * params.s * params.reps *
                        query_walks.realized_r();

  const auto start = std::chrono::steady_clock::now();
  QueryCounter ctr;
  const ConstructResult built =
      construct_oracle(g, params, s_cluster, theta, ctr);
  if (built.ok()) {
    const ClusterOracleState& state = *built.state;
    row.words = state.peak_build_words;
    row.success = true;

    std::vector<uint32_t> pred, ref;
    if (eval_vertices.empty()) {
      pred = label_all(g, state, ctr);
      ref = g.ground_truth();
    } else {
      pred.reserve(eval_vertices.size());
      ref.reserve(eval_vertices.size());
      for (uint32_t x : eval_vertices) {
        pred.push_back(which_cluster(g, state, x, ctr).index);
        ref.push_back(g.ground_truth()[x]);
      }
    }
    row.accuracy = clustering_accuracy(pred, ref, params.k);
  }
  if (timing) {
    const auto stop = std::chrono::steady_clock::now();
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return row;
}

std::vector<ExperimentRow> run_tradeoff_sweep(const Graph& g,
                                              const SweepConfig& cfg) {
  if (cfg.ms.size() < 2)
    throw std::invalid_argument("sweep needs at least two M values");
  if (cfg.seeds.empty()) throw std::invalid_argument("sweep needs seeds");
  if (cfg.budget == 0) throw std::invalid_argument("budget must be >= 1");

  std::vector<uint32_t> ms = cfg.ms;
  std::sort(ms.begin(), ms.end());
  std::vector<uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());

  std::vector<ExperimentRow> rows;
  rows.reserve(ms.size() * seeds.size());
  for (uint32_t m : ms) {
    if (m == 0) throw std::invalid_argument("M must be >= 1");
    SketchParams params = cfg.base;
    params.m_init = m;
    params.m_query = m;
    params.r_init = (cfg.budget + m - 1) / m;
    params.r_query = params.r_init;
    for (uint64_t seed : seeds) {
      params.seed = derive_seed(cfg.base.seed, "sweep", {seed});
      rows.push_back(run_config(g, params, cfg.s_cluster, cfg.theta, seed, {},
                                cfg.timing));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "M,seed,words,walks_per_query,accuracy,success,wall_ms\n";
  char buf[160];
  for (const ExperimentRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%u,%llu,%llu,%llu,%.6f,%d,%.3f\n", row.m,
                  static_cast<unsigned long long>(row.seed),
                  static_cast<unsigned long long>(row.words),
                  static_cast<unsigned long long>(row.walks_per_query),
                  row.accuracy, row.success ? 1 : 0, row.wall_ms);
    out += buf;
  }
  return out;
}

}  // namespace sco
