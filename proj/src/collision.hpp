#pragma once
// Landmark Gram-matrix estimation: every pairwise walk-collision probability
// over a landmark set, estimated by est_rw_dot and amplified entrywise by the
// median trick. The s x s result is the raw material for both the dot-product
// oracle (eigendecomposition of (n/s)*Gram) and the cluster-count distinguisher.
#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "walks.hpp"

namespace sco {

struct GramEstimate {
  std::vector<uint32_t> landmarks;  // ordered multiset I_S; duplicates allowed
  Eigen::MatrixXd matrix;           // s x s, exactly symmetric by construction
  uint32_t reps = 0;                // median repetitions used
};

// Estimates the Gram matrix of pairwise collision probabilities among the
// landmarks: for each repetition, fills entry (i, j) for i <= j with an
// independent est_rw_dot estimate (mirrored to (j, i)), then takes the
// entrywise median across repetitions (lower median when reps is even).
//
// Randomness is keyed by (params.seed, repetition, i, j) over landmark
// *positions*, so duplicate landmarks still get independent estimates. The
// reps * s(s+1)/2 estimator calls are independent and run on the global worker
// pool; results land in slots keyed by task index and counters merge by
// commutative addition, so the outcome is identical at any thread count.
//
// Charges reps * s(s+1)/2 * 2 * realized_R walks of t steps to ctr.
// Throws std::invalid_argument on reps = 0, empty landmarks, or an
// out-of-range landmark id.
GramEstimate est_colli_prob(const Graph& g, const WalkParams& params,
                            const std::vector<uint32_t>& landmarks,
                            uint32_t reps, QueryCounter& ctr);

}  // namespace sco
