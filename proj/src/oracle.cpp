#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "exact.hpp"
#include "rng.hpp"

namespace sco {

ThetaResult compute_theta(uint32_t n, uint32_t k, double phi, double eps,
                          double gamma, double xi) {
  if (n == 0 || k == 0) throw std::invalid_argument("n and k must be >= 1");
  if (!(gamma > 0.001 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in (0.001, 1]");
  if (!(phi > 0.0 && phi < 1.0))
    throw std::invalid_argument("phi must lie in (0, 1)");
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("eps must lie in [0, 1)");
  if (!(xi >= 0.0 && xi < 1.0))
    throw std::invalid_argument("xi must lie in [0, 1)");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double value =
      0.96 * (1.0 - 4.0 * std::sqrt(eps) / phi) * (gamma * kk / nn) -
      (std::sqrt(kk) / nn) * std::pow(eps / (phi * phi), 1.0 / 6.0) - xi / nn;
  return ThetaResult{value, value <= 0.0};
}

namespace {

// Union-find with path halving.
uint32_t uf_find(std::vector<uint32_t>& parent, uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

SimilarityResult build_similarity(
    const std::vector<uint32_t>& sample, double theta,
    const std::function<double(uint32_t, uint32_t)>& dot) {
  const uint32_t sc = static_cast<uint32_t>(sample.size());
  SimilarityResult out;
  std::vector<uint32_t> parent(sc);
  std::iota(parent.begin(), parent.end(), 0u);
  for (uint32_t i = 0; i < sc; ++i)
    for (uint32_t j = i + 1; j < sc; ++j)
      if (dot(i, j) >= theta) {
        out.edges.emplace_back(i, j);
        parent[uf_find(parent, i)] = uf_find(parent, j);
      }

  // Component key: (smallest original vertex id, smallest position). Ties on
  // vertex id across components can only come from duplicate sample entries.
  struct Key {
    uint32_t min_vertex, min_pos, root;
  };
  std::vector<Key> keys;
  std::vector<uint32_t> root_of(sc);
  for (uint32_t p = 0; p < sc; ++p) {
    root_of[p] = uf_find(parent, p);
    auto it = std::find_if(keys.begin(), keys.end(),
                           [&](const Key& k) { return k.root == root_of[p]; });
    if (it == keys.end()) {
      keys.push_back(Key{sample[p], p, root_of[p]});
    } else {
      it->min_vertex = std::min(it->min_vertex, sample[p]);
      it->min_pos = std::min(it->min_pos, p);
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return a.min_vertex != b.min_vertex ? a.min_vertex < b.min_vertex
                                        : a.min_pos < b.min_pos;
  });
  out.components = static_cast<uint32_t>(keys.size());
  std::vector<uint32_t> label_of_root(sc, 0);
  for (uint32_t l = 0; l < keys.size(); ++l) label_of_root[keys[l].root] = l;
  out.labels.resize(sc);
  for (uint32_t p = 0; p < sc; ++p) out.labels[p] = label_of_root[root_of[p]];
  return out;
}

std::optional<uint32_t> search_among(const SimilarityResult& sim, double theta,
                                     const std::vector<double>& vals) {
  if (vals.size() != sim.labels.size())
    throw std::invalid_argument("one similarity value per sample position required");
  uint32_t qualifying = 0;
  uint32_t found = 0;
  for (uint32_t label = 0; label < sim.components; ++label) {
    bool all = true;
    for (size_t p = 0; p < vals.size(); ++p)
      if (sim.labels[p] == label && !(vals[p] >= theta)) {
        all = false;
        break;
      }
    if (all) {
      ++qualifying;
      found = label;
    }
  }
  if (qualifying == 1) return found;
  return std::nullopt;  // no qualifying component, or ambiguity
}

namespace {

double dist_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t v = 0; v < a.size(); ++v) acc += a[v] * b[v];
  return acc;
}

// Exact alpha against the cached landmark distributions.
Eigen::VectorXd alpha_from_dists(const Graph& g, uint32_t t,
                                 const std::vector<std::vector<double>>& dists,
                                 uint32_t x) {
  const std::vector<double> px = exact_walk_distribution(g, x, t);
  Eigen::VectorXd alpha(static_cast<Eigen::Index>(dists.size()));
  for (size_t i = 0; i < dists.size(); ++i)
    alpha(static_cast<Eigen::Index>(i)) = dist_dot(px, dists[i]);
  return alpha;
}

}  // namespace

ConstructResult construct_oracle(const Graph& g, const SketchParams& params,
                                 uint32_t s_cluster, double theta,
                                 QueryCounter& ctr,
                                 const ConstructOptions& options) {
  if (s_cluster < params.k)
    throw std::invalid_argument("s_cluster must be >= k");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");

  InitResult init;
  std::vector<std::vector<double>> landmark_dists;
  if (options.exact) {
    std::vector<uint32_t> landmarks;
    if (options.landmarks) {
      landmarks = *options.landmarks;
    } else {
      landmarks.resize(params.s);
      for (uint32_t i = 0; i < params.s; ++i) {
        Rng rng(derive_seed(params.seed, "landmark", {i}));
        landmarks[i] = static_cast<uint32_t>(rng.next_below(g.n()));
      }
    }
    init = init_oracle_from_gram(g.n(), params, landmarks,
                                 exact_gram(g, landmarks, params.t));
  } else if (options.landmarks) {
    init = init_oracle_with_landmarks(g, params, *options.landmarks, ctr);
  } else {
    init = init_oracle(g, params, ctr);
  }
  if (!init.ok()) {
    ConstructResult out;
    out.failure.reason = ConstructFailure::Reason::init_failure;
    out.failure.init_failure = init.failure;
    return out;
  }
  OracleSketch sketch = std::move(*init.sketch);
  if (options.exact) {
    landmark_dists.reserve(sketch.landmarks.size());
    for (uint32_t l : sketch.landmarks)
      landmark_dists.push_back(exact_walk_distribution(g, l, params.t));
  }

  std::vector<uint32_t> sample(s_cluster);
  for (uint32_t j = 0; j < s_cluster; ++j) {
    Rng rng(derive_seed(params.seed, "sample", {j}));
    sample[j] = static_cast<uint32_t>(rng.next_below(g.n()));
  }

  std::vector<Eigen::VectorXd> alphas;
  alphas.reserve(s_cluster);
  for (uint32_t j = 0; j < s_cluster; ++j) {
    alphas.push_back(
        options.exact
            ? alpha_from_dists(g, params.t, landmark_dists, sample[j])
            : estimate_alpha(g, sketch, sample[j],
                             derive_seed(params.seed, "alpha", {sample[j]}),
                             ctr));
  }

  SimilarityResult sim =
      build_similarity(sample, theta, [&](uint32_t i, uint32_t j) {
        return bilinear_psi(sketch.psi, alphas[i], alphas[j]);
      });
  if (sim.components != params.k) {
    ConstructResult out;
    out.failure.reason = ConstructFailure::Reason::wrong_component_count;
    out.failure.components_found = sim.components;
    return out;
  }

  ClusterOracleState state;
  state.sketch = std::move(sketch);
  state.sample = std::move(sample);
  state.sample_alphas = std::move(alphas);
  state.similarity = std::move(sim);
  state.theta = theta;
  state.k = params.k;
  state.seed = params.seed;
  state.exact = options.exact;
  state.exact_landmark_dists = std::move(landmark_dists);
  state.peak_build_words =
      state.sketch.peak_build_words +
      (state.measure_space_words() - state.sketch.measure_space_words());
  ConstructResult out;
  out.state = std::move(state);
  return out;
}

std::optional<uint32_t> search_index(const Graph& g,
                                     const ClusterOracleState& state,
                                     uint32_t x, QueryCounter& ctr) {
  if (x >= g.n()) throw std::invalid_argument("vertex out of range");
  const Eigen::VectorXd alpha_x =
      state.exact
          ? alpha_from_dists(g, state.sketch.params.t,
                             state.exact_landmark_dists, x)
          : estimate_alpha(g, state.sketch, x,
                           derive_seed(state.seed, "alpha", {x}), ctr);
  std::vector<double> vals(state.sample.size());
  for (size_t i = 0; i < state.sample.size(); ++i)
    vals[i] = bilinear_psi(state.sketch.psi, state.sample_alphas[i], alpha_x);
  return search_among(state.similarity, state.theta, vals);
}

MembershipAnswer which_cluster(const Graph& g, const ClusterOracleState& state,
                               uint32_t x, QueryCounter& ctr) {
  const std::optional<uint32_t> idx = search_index(g, state, x, ctr);
  if (idx) return MembershipAnswer{MembershipAnswer::Kind::index, *idx};
  // Outlier: a per-vertex derandomized draw from [0, k), stable across calls.
  const uint32_t r = static_cast<uint32_t>(
      derive_seed(state.seed, "outlier", {x}) % state.k);
  return MembershipAnswer{MembershipAnswer::Kind::outlier_randomized, r};
}

MembershipAnswer which_cluster(const Graph& g, const ConstructResult& result,
                               uint32_t x, QueryCounter& ctr) {
  if (!result.ok()) return MembershipAnswer{MembershipAnswer::Kind::fail, 0};
  return which_cluster(g, *result.state, x, ctr);
}

std::vector<uint32_t> label_all(const Graph& g,
                                const ClusterOracleState& state,
                                QueryCounter& ctr) {
  std::vector<uint32_t> labels(g.n());
  for (uint32_t x = 0; x < g.n(); ++x)
    labels[x] = which_cluster(g, state, x, ctr).index;
  return labels;
}

}  // namespace sco
