#pragma once
// One-cluster vs two-cluster decision procedure: estimate the landmark Gram
// matrix under a space budget of M live walk endpoints, eigendecompose
// (n/s)*Gram, and read the verdict off the second-largest eigenvalue. A single
// expander drives v2^2 toward 0; two disconnected (or barely connected)
// expander-like clusters force v2 toward 1. The cut is at v2^2 = 0.6.
#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace sco {

inline constexpr double kDistinguishThreshold = 0.6;

struct DistinguishVerdict {
  bool two_cluster = false;  // = (v2_squared >= kDistinguishThreshold)
  double v2_squared = 0.0;   // the test statistic
  uint64_t walks_used = 0;   // reps * s(s+1) * realized R
  uint64_t words_peak = 0;   // estimator live-endpoint peaks + Gram + medians
};

// Second-largest eigenvalue (by algebraic value) of a symmetric matrix;
// 0 when the matrix is 1 x 1. The verdict squares it, so the sign convention
// is immaterial, but it is fixed for determinism.
double v2_of_symmetric(const Eigen::MatrixXd& m);

// Default parameter surrogates for the asymptotic prescriptions:
// t = 20 * ceil(log2 n), s = ceil(4 * log2 n), R = ceil(4n / M), reps = 9.
uint32_t default_distinguish_t(uint32_t n);
uint32_t default_distinguish_s(uint32_t n);
uint64_t default_distinguish_r(uint32_t n, uint32_t m);

// Samples s landmarks i.u.r. with replacement (seed streams "landmark"),
// estimates their Gram matrix with batch size M and reps-median amplification,
// and returns the verdict plus the exact accounting:
//   walks_used  = reps * s(s+1) * realized R (each of t steps);
//   words_peak  = sum of per-call live endpoint peaks (<= 2M each)
//                 + s^2 (the Gram) + reps * s(s+1)/2 (median buffers).
DistinguishVerdict distinguish(const Graph& g, uint32_t m, uint32_t t,
                               uint64_t r, uint32_t s, uint32_t reps,
                               uint64_t seed);

// Same decision and accounting model evaluated on a caller-supplied Gram
// matrix over explicit landmarks (e.g. the exact dense Gram): no walks.
DistinguishVerdict distinguish_from_gram(uint32_t n,
                                         const Eigen::MatrixXd& gram);

}  // namespace sco
