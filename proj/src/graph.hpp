#pragma once
// Graph representation and instance generators. Graphs are simple, undirected,
// degree-bounded, stored in CSR form, and immutable after construction.
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sco {

// Access/space/time accounting shared by every randomized routine.
// words_stored_peak accumulates the per-call peak of live endpoint records:
// each estimator call adds its own peak, so after a sequence of calls the
// counter reads the sum of per-call peaks. Merging counters is plain addition.
struct QueryCounter {
  uint64_t neighbor_queries = 0;
  uint64_t walk_steps = 0;
  uint64_t walks_started = 0;
  uint64_t words_stored_peak = 0;

  QueryCounter& operator+=(const QueryCounter& o) {
    neighbor_queries += o.neighbor_queries;
    walk_steps += o.walk_steps;
    walks_started += o.walks_started;
    words_stored_peak += o.words_stored_peak;
    return *this;
  }
};

class Graph {
 public:
  // Builds from a symmetric edge set; throws std::invalid_argument on
  // self-loops, duplicate edges, out-of-range endpoints, or bad labels.
  // degree_bound = 0 means "use the realized max degree"; an explicit value
  // must dominate every degree (it parametrizes the lazy-walk law).
  Graph(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges,
        std::vector<uint32_t> ground_truth = {}, uint32_t k = 0,
        uint32_t degree_bound = 0);

  uint32_t n() const { return n_; }
  // Max degree d: the lazy-walk regularization bound (stay probability
  // 1 - deg(v)/(2d)). At least 1 so the walk is defined on edgeless graphs.
  uint32_t degree_bound() const { return degree_bound_; }
  uint64_t edge_count() const { return m_; }

  uint32_t degree(uint32_t v) const {
    return static_cast<uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const uint32_t> neighbors(uint32_t v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }
  // Counted adjacency access: the query model's primitive. Throws
  // std::out_of_range on a bad vertex or index.
  uint32_t neighbor_query(uint32_t v, uint32_t i, QueryCounter& ctr) const;

  bool has_ground_truth() const { return !ground_truth_.empty(); }
  uint32_t k() const { return k_; }
  const std::vector<uint32_t>& ground_truth() const { return ground_truth_; }

  // Edges as (u, v) with u < v, sorted — the serialization order.
  std::vector<std::pair<uint32_t, uint32_t>> edge_list() const;

  // Raw CSR views for hot loops (offsets has n+1 entries; the neighbor array
  // carries one sentinel slot past the end so branchless readers may issue an
  // unconditional load at offsets[v] even for degree-0 tail vertices).
  const uint64_t* offsets_data() const { return offsets_.data(); }
  const uint32_t* neighbors_data() const { return neighbors_.data(); }

 private:
  uint32_t n_;
  uint32_t degree_bound_;
  uint32_t k_;
  uint64_t m_;
  std::vector<uint64_t> offsets_;
  std::vector<uint32_t> neighbors_;  // CSR payload + 1 sentinel slot
  std::vector<uint32_t> ground_truth_;
};

// Stochastic block model: k equal blocks of n/k contiguous vertices; intra-pair
// edge probability p, inter-pair q; ground truth = block ids; degree_bound =
// realized max degree. Throws std::invalid_argument on bad parameters.
Graph generate_sbm(uint32_t n, uint32_t k, double p, double q, uint64_t seed);

// Uniform simple d-regular graph via the configuration model, rejecting
// pairings with self-loops or multi-edges. Throws std::runtime_error after
// max_rounds rejections (generation-failure), std::invalid_argument on bad
// n·d parity or d < 2 (d = 2 yields a uniform cycle cover, not an expander).
Graph generate_regular_expander(uint32_t n, uint32_t d, uint64_t seed,
                                uint32_t max_rounds = 10000);

// Disjoint union; g2's vertex ids shifted by g1.n, labels offset so the copies
// carry distinct labels. Requires equal degree_bound (taking the max would
// silently change g1's walk law). Empty graphs unify with anything.
Graph disjoint_union(const Graph& g1, const Graph& g2);

// Edge-list text format: "n d k" header, one "u v" line per edge (u < v,
// ascending), optional trailing "labels:" section with n label lines.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);
void save_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

}  // namespace sco
