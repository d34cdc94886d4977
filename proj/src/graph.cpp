#include "graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rng.hpp"

namespace sco {

Graph::Graph(uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges,
             std::vector<uint32_t> ground_truth, uint32_t k,
             uint32_t degree_bound)
    : n_(n), k_(k), ground_truth_(std::move(ground_truth)) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");

  m_ = edges.size();
  std::vector<uint32_t> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (uint32_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  neighbors_.resize(offsets_[n] + 1, 0);  // +1: sentinel for branchless readers
  std::vector<uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges) {
    neighbors_[cursor[u]++] = v;
    neighbors_[cursor[v]++] = u;
  }
  for (uint32_t v = 0; v < n; ++v)
    std::sort(neighbors_.begin() + static_cast<ptrdiff_t>(offsets_[v]),
              neighbors_.begin() + static_cast<ptrdiff_t>(offsets_[v + 1]));

  const uint32_t realized =
      std::max(1u, deg.empty() ? 0u : *std::max_element(deg.begin(), deg.end()));
  if (degree_bound == 0) {
    degree_bound_ = realized;
  } else {
    if (degree_bound < realized)
      throw std::invalid_argument("degree bound below realized max degree");
    degree_bound_ = degree_bound;
  }

  if (!ground_truth_.empty()) {
    if (ground_truth_.size() != n)
      throw std::invalid_argument("ground_truth size must equal n");
    if (k_ == 0) throw std::invalid_argument("labeled graph needs k >= 1");
    for (uint32_t label : ground_truth_)
      if (label >= k_) throw std::invalid_argument("ground-truth label out of range");
  }
}

uint32_t Graph::neighbor_query(uint32_t v, uint32_t i, QueryCounter& ctr) const {
  if (v >= n_) throw std::out_of_range("vertex id out of range");
  if (i >= degree(v)) throw std::out_of_range("neighbor index out of range");
  ++ctr.neighbor_queries;
  return neighbors_[offsets_[v] + i];
}

std::vector<std::pair<uint32_t, uint32_t>> Graph::edge_list() const {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(edge_count());
  for (uint32_t u = 0; u < n_; ++u)
    for (uint32_t v : neighbors(u))
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

Graph generate_sbm(uint32_t n, uint32_t k, double p, double q, uint64_t seed) {
  if (k == 0 || n % k != 0) throw std::invalid_argument("n must be divisible by k");
  if (!(0.0 <= q && q < p && p <= 1.0))
    throw std::invalid_argument("need 0 <= q < p <= 1");
  const uint32_t block = n / k;
  std::vector<uint32_t> labels(n);
  for (uint32_t v = 0; v < n; ++v) labels[v] = v / block;

  Rng rng(derive_seed(seed, "sbm", {n, k}));
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = u + 1; v < n; ++v)
      if (rng.next_unit() < (labels[u] == labels[v] ? p : q))
        edges.emplace_back(u, v);
  return Graph(n, std::move(edges), std::move(labels), k);
}

Graph generate_regular_expander(uint32_t n, uint32_t d, uint64_t seed,
                                uint32_t max_rounds) {
  if (d < 2) throw std::invalid_argument("need d >= 2");
  if (static_cast<uint64_t>(n) * d % 2 != 0)
    throw std::invalid_argument("n*d must be even");
  if (d >= n) throw std::invalid_argument("need d < n for a simple graph");

  // Configuration model: pair up n·d half-edge stubs uniformly; reject the
  // whole pairing on any self-loop or duplicate edge. Acceptance probability
  // tends to e^{-(d-1)/2 - (d-1)^2/4} (≈ e^-2 at d=3), so the round bound is
  // generous rather than tight.
  Rng rng(derive_seed(seed, "expander", {n, d}));
  std::vector<uint32_t> stubs(static_cast<size_t>(n) * d);
  for (size_t i = 0; i < stubs.size(); ++i)
    stubs[i] = static_cast<uint32_t>(i / d);

  for (uint32_t round = 0; round < max_rounds; ++round) {
    // Fisher-Yates over stubs; consecutive pairs become edges.
    for (size_t i = stubs.size() - 1; i > 0; --i) {
      size_t j = rng.next_below(static_cast<uint32_t>(i + 1));
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(stubs.size() / 2);
    bool ok = true;
    for (size_t i = 0; i < stubs.size() && ok; i += 2) {
      uint32_t u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(n, std::move(edges), std::vector<uint32_t>(n, 0), 1);
  }
  throw std::runtime_error("regular-graph generation failed: rejection rounds exhausted");
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
  if (g1.n() == 0) return g2;
  if (g2.n() == 0) return g1;
  if (g1.degree_bound() != g2.degree_bound())
    throw std::invalid_argument("disjoint_union requires equal degree bounds");

  auto edges = g1.edge_list();
  for (auto [u, v] : g2.edge_list())
    edges.emplace_back(u + g1.n(), v + g1.n());

  // Offset g2's labels past g1's so the two copies carry distinct labels.
  // Unlabeled on either side => unlabeled union.
  std::vector<uint32_t> labels;
  uint32_t k = 0;
  if (g1.has_ground_truth() && g2.has_ground_truth()) {
    labels = g1.ground_truth();
    labels.reserve(g1.n() + g2.n());
    for (uint32_t label : g2.ground_truth()) labels.push_back(label + g1.k());
    k = g1.k() + g2.k();
  }
  return Graph(g1.n() + g2.n(), std::move(edges), std::move(labels), k,
               g1.degree_bound());
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.degree_bound() << ' ' << g.k() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  if (g.has_ground_truth()) {
    out << "labels:\n";
    for (uint32_t label : g.ground_truth()) out << label << '\n';
  }
  return out.str();
}

Graph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  uint32_t n, d, k;
  if (!(in >> n >> d >> k)) throw std::invalid_argument("bad edge-list header");
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::string tok;
  bool in_labels = false;
  std::vector<uint32_t> labels;
  while (in >> tok) {
    if (tok == "labels:") {
      in_labels = true;
      continue;
    }
    if (!in_labels) {
      uint32_t u = 0, v = 0;
      try {
        u = static_cast<uint32_t>(std::stoul(tok));
      } catch (...) {
        throw std::invalid_argument("bad edge-list token: " + tok);
      }
      if (!(in >> v)) throw std::invalid_argument("dangling edge endpoint");
      edges.emplace_back(u, v);
    } else {
      labels.push_back(static_cast<uint32_t>(std::stoul(tok)));
    }
  }
  if (in_labels && labels.size() != n)
    throw std::invalid_argument("labels section must list n labels");
  // The header's d is the walk-law bound; the constructor validates it
  // dominates the realized degrees.
  return Graph(n, std::move(edges), std::move(labels), in_labels ? k : 0, d);
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_edge_list(g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_edge_list(buf.str());
}

}  // namespace sco
