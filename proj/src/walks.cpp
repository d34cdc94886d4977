#include "walks.hpp"

#include <algorithm>
#include <stdexcept>

namespace sco {

namespace {

// Walk endpoints for one batch, reusing the caller's scratch buffer.
// Walks are advanced in interleaved groups of 8 so their (random) adjacency
// loads overlap instead of serializing on memory latency; the law is unchanged
// (each step consumes one uniform draw in a fixed walker order), but the
// interleaving is part of the determinism convention.
void batch_endpoints(const Graph& g, uint32_t x, uint32_t t, uint32_t count,
                     uint64_t seed, QueryCounter& ctr,
                     std::vector<uint32_t>& endpoints) {
  endpoints.clear();
  endpoints.reserve(count);
  Rng rng(seed);
  const uint32_t two_d = 2 * g.degree_bound();
  const uint64_t* offsets = g.offsets_data();
  const uint32_t* nbrs = g.neighbors_data();
  uint64_t moves = 0;
  constexpr uint32_t kLanes = 8;
  uint32_t w = 0;
  for (; w + kLanes <= count; w += kLanes) {
    uint32_t v[kLanes];
    for (uint32_t j = 0; j < kLanes; ++j) v[j] = x;
    for (uint32_t step = 0; step < t; ++step) {
      for (uint32_t j = 0; j < kLanes; ++j) {
        const uint32_t u = rng.next_below(two_d);
        const uint64_t off = offsets[v[j]];
        const bool move = u < static_cast<uint32_t>(offsets[v[j] + 1] - off);
        // Branchless select; the sentinel slot makes the load safe when !move.
        const uint32_t cand = nbrs[off + (move ? u : 0)];
        v[j] = move ? cand : v[j];
        moves += move;
      }
    }
    for (uint32_t j = 0; j < kLanes; ++j) endpoints.push_back(v[j]);
  }
  for (; w < count; ++w) {
    uint32_t v = x;
    for (uint32_t step = 0; step < t; ++step) {
      const uint32_t u = rng.next_below(two_d);
      const uint64_t off = offsets[v];
      const bool move = u < static_cast<uint32_t>(offsets[v + 1] - off);
      const uint32_t cand = nbrs[off + (move ? u : 0)];
      v = move ? cand : v;
      moves += move;
    }
    endpoints.push_back(v);
  }
  ctr.walks_started += count;
  ctr.walk_steps += static_cast<uint64_t>(count) * t;
  ctr.neighbor_queries += moves;
}

EndpointHistogram histogram_of(std::vector<uint32_t>& endpoints) {
  std::sort(endpoints.begin(), endpoints.end());
  EndpointHistogram h;
  h.total = endpoints.size();
  for (size_t i = 0; i < endpoints.size();) {
    size_t j = i;
    while (j < endpoints.size() && endpoints[j] == endpoints[i]) ++j;
    h.counts.emplace_back(endpoints[i], static_cast<uint32_t>(j - i));
    i = j;
  }
  return h;
}

void validate(const Graph& g, const WalkParams& params, uint32_t x, uint32_t y) {
  if (x >= g.n() || y >= g.n()) throw std::invalid_argument("vertex out of range");
  if (params.m == 0 || params.r == 0 || params.t == 0)
    throw std::invalid_argument("walk parameters must be positive");
}

}  // namespace

EndpointHistogram run_walk_batch(const Graph& g, uint32_t x, uint32_t t,
                                 uint32_t count, uint64_t seed,
                                 QueryCounter& ctr) {
  std::vector<uint32_t> endpoints;
  batch_endpoints(g, x, t, count, seed, ctr, endpoints);
  return histogram_of(endpoints);
}

double histogram_dot(const EndpointHistogram& hx, const EndpointHistogram& hy) {
  // Two-pointer merge over the sorted supports: O(|hx| + |hy|).
  double acc = 0.0;
  size_t i = 0, j = 0;
  while (i < hx.counts.size() && j < hy.counts.size()) {
    const uint32_t vx = hx.counts[i].first, vy = hy.counts[j].first;
    if (vx == vy) {
      acc += static_cast<double>(hx.counts[i].second) *
             static_cast<double>(hy.counts[j].second);
      ++i;
      ++j;
    } else if (vx < vy) {
      ++i;
    } else {
      ++j;
    }
  }
  return acc / (static_cast<double>(hx.total) * static_cast<double>(hy.total));
}

double est_rw_dot_batch(const Graph& g, const WalkParams& params, uint32_t x,
                        uint32_t y, uint64_t batch, QueryCounter& ctr) {
  validate(g, params, x, y);
  const uint64_t batch_seed = derive_seed(params.seed, {x, y, batch});
  auto hx = run_walk_batch(g, x, params.t, params.m,
                           seed_fold(batch_seed, 0), ctr);
  auto hy = run_walk_batch(g, y, params.t, params.m,
                           seed_fold(batch_seed, 1), ctr);
  const uint64_t live = hx.entries() + hy.entries();
  ctr.words_stored_peak += live;  // single batch: its live set is the peak
  return histogram_dot(hx, hy);
}

namespace {

size_t distinct_runs(const std::vector<uint32_t>& sorted) {
  size_t runs = 0;
  for (size_t i = 0; i < sorted.size(); ++i)
    if (i == 0 || sorted[i] != sorted[i - 1]) ++runs;
  return runs;
}

// Histogram dot straight off two sorted endpoint arrays — same value as
// building the histograms, no allocation.
double sorted_endpoint_dot(const std::vector<uint32_t>& a,
                           const std::vector<uint32_t>& b) {
  double acc = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      const uint32_t v = a[i];
      size_t ci = i, cj = j;
      while (i < a.size() && a[i] == v) ++i;
      while (j < b.size() && b[j] == v) ++j;
      acc += static_cast<double>(i - ci) * static_cast<double>(j - cj);
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return acc / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace

double est_rw_dot(const Graph& g, const WalkParams& params, uint32_t x,
                  uint32_t y, QueryCounter& ctr) {
  validate(g, params, x, y);
  const uint64_t batches = params.batches();
  std::vector<uint32_t> scratch_x, scratch_y;
  double acc = 0.0;
  size_t peak_live = 0;
  for (uint64_t b = 0; b < batches; ++b) {
    const uint64_t batch_seed = derive_seed(params.seed, {x, y, b});
    batch_endpoints(g, x, params.t, params.m, seed_fold(batch_seed, 0), ctr,
                    scratch_x);
    batch_endpoints(g, y, params.t, params.m, seed_fold(batch_seed, 1), ctr,
                    scratch_y);
    std::sort(scratch_x.begin(), scratch_x.end());
    std::sort(scratch_y.begin(), scratch_y.end());
    peak_live = std::max(peak_live, distinct_runs(scratch_x) + distinct_runs(scratch_y));
    acc += sorted_endpoint_dot(scratch_x, scratch_y);
    // Endpoint buffers are overwritten next batch: nothing carries over.
  }
  ctr.words_stored_peak += peak_live;
  return acc / static_cast<double>(batches);
}

}  // namespace sco
