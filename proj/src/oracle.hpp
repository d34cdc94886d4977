#pragma once
// Cluster-membership oracle on top of the dot-product sketch. Construction
// samples a small vertex set S, links pairs whose estimated embedding dot
// product clears a threshold theta into a similarity graph H, and succeeds
// only when H has exactly k connected components (the cluster skeleton).
// Membership queries estimate the dot product of the query vertex against all
// of S and return the unique component that is similar across the board.
#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "sketch.hpp"

namespace sco {

// theta(n, k, phi, eps, gamma, xi) =
//   0.96 * (1 - 4*sqrt(eps)/phi) * gamma*k/n - (sqrt(k)/n)*(eps/phi^2)^(1/6)
//   - xi/n.
// warning is set when the value is <= 0: the parameters sit outside the
// regime where the threshold separates clusters, and the caller should
// override theta empirically.
struct ThetaResult {
  double value = 0.0;
  bool warning = false;
};
// Preconditions: gamma in (0.001, 1], phi in (0, 1), eps and xi in [0, 1).
ThetaResult compute_theta(uint32_t n, uint32_t k, double phi, double eps,
                          double gamma, double xi);

// Similarity-graph core over sample positions (the seam that lets tests drive
// the exact same component/labeling logic with an exact dot function).
struct SimilarityResult {
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // position pairs, i < j
  std::vector<uint32_t> labels;  // per position: component label in [0, components)
  uint32_t components = 0;
};
// dot(i, j) is the similarity of sample positions i < j; an edge is added when
// dot >= theta. Components are labeled 0, 1, ... by ascending smallest
// original vertex id (ties by smallest position — possible only when the
// multiset sample repeats a vertex across components).
SimilarityResult build_similarity(
    const std::vector<uint32_t>& sample, double theta,
    const std::function<double(uint32_t, uint32_t)>& dot);

// The unique label whose entire component has vals[position] >= theta;
// nullopt (outlier) when no label or more than one label qualifies.
std::optional<uint32_t> search_among(const SimilarityResult& sim, double theta,
                                     const std::vector<double>& vals);

struct ClusterOracleState {
  OracleSketch sketch;
  std::vector<uint32_t> sample;  // S: s_cluster ids, i.u.r. with replacement
  std::vector<Eigen::VectorXd> sample_alphas;  // cached alpha_u for u in S
  SimilarityResult similarity;                 // H edges + component labels
  double theta = 0.0;
  uint32_t k = 0;
  uint64_t seed = 0;
  bool exact = false;  // reference mode: exact Gram / exact alphas, no walks

  // Exact-mode cache of the landmark walk distributions (reference path
  // scratch; not part of the space-accounting model, which describes the
  // sampled estimator).
  std::vector<std::vector<double>> exact_landmark_dists;

  // Transient high-water mark of the canonical build: the sketch's peak plus
  // the state's own persistent additions.
  uint64_t peak_build_words = 0;

  // Persistent stored words: sketch + sample + cached alphas (s_cluster * s)
  // + edge endpoints (2|E_H|) + labels + 4 scalars (theta, k, seed, s_cluster).
  uint64_t measure_space_words() const {
    const uint64_t sc = sample.size();
    const uint64_t s = sketch.landmarks.size();
    return sketch.measure_space_words() + sc + sc * s +
           2ull * similarity.edges.size() + sc + 4;
  }
};

struct ConstructFailure {
  enum class Reason { none, init_failure, wrong_component_count };
  Reason reason = Reason::none;
  uint32_t components_found = 0;   // for wrong_component_count
  InitFailureInfo init_failure{};  // for init_failure
};

struct ConstructResult {
  std::optional<ClusterOracleState> state;
  ConstructFailure failure{};
  bool ok() const { return state.has_value(); }
};

struct ConstructOptions {
  // Reference mode: exact dense Gram and exact alpha vectors instead of walk
  // estimates. Charges no walks; subject to the dense-path size cap.
  bool exact = false;
  // Override the i.u.r. landmark sampling (e.g. a stratified landmark set).
  std::optional<std::vector<uint32_t>> landmarks;
};

// Builds the full state: dot-product sketch (params.k is the cluster count),
// S of size s_cluster sampled i.u.r. with replacement keyed by params.seed,
// one cached alpha per sample position (duplicates recompute the identical
// vector so walk charges depend only on s_cluster), similarity graph H at
// threshold theta, and component labels. Fails — as a value, not an
// exception — when the sketch init fails or H does not have exactly
// params.k components. Throws std::invalid_argument on s_cluster < k or
// theta <= 0.
ConstructResult construct_oracle(const Graph& g, const SketchParams& params,
                                 uint32_t s_cluster, double theta,
                                 QueryCounter& ctr,
                                 const ConstructOptions& options = {});

// Estimates alpha_x (seed derived from (state.seed, "alpha", x): repeated
// queries are identical, and x in S reuses the exact stream of its cached
// alpha), then returns the unique all-similar component label, or nullopt for
// outlier. Charges one alpha budget: 2 * s * reps * realized R_query walks
// (zero in exact mode).
std::optional<uint32_t> search_index(const Graph& g,
                                     const ClusterOracleState& state,
                                     uint32_t x, QueryCounter& ctr);

struct MembershipAnswer {
  enum class Kind { index, outlier_randomized, fail };
  Kind kind = Kind::fail;
  uint32_t index = 0;  // valid for index and outlier_randomized
};

// search_index with the outlier branch derandomized: an outlier gets an index
// drawn from [0, k) by a seed derived from (state.seed, "outlier", x), so the
// full map x -> answer is a pure function of the master seed.
MembershipAnswer which_cluster(const Graph& g, const ClusterOracleState& state,
                               uint32_t x, QueryCounter& ctr);
// Convenience over a possibly-failed construction: kind == fail for every x.
MembershipAnswer which_cluster(const Graph& g, const ConstructResult& result,
                               uint32_t x, QueryCounter& ctr);

// which_cluster for every vertex: the induced total labeling V -> [0, k).
std::vector<uint32_t> label_all(const Graph& g, const ClusterOracleState& state,
                                QueryCounter& ctr);

}  // namespace sco
