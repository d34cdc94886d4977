#pragma once
// Exact dense/linear-algebra ground truth for small graphs: walk distributions,
// collision probabilities, spectral embeddings, Gram matrices, TV distance.
// Test support and CLI debug paths only — hard size cap, no sampling.
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace sco {

inline constexpr uint32_t kExactSizeCap = 4096;

// Eigendecomposition of the regularized Laplacian L = (D - A)/d, so the lazy
// walk matrix is M = I - L/2. Eigenvalues ascending; eigenvectors orthonormal
// columns in matching order. For d-regular graphs L = I - A/d, the normalized
// Laplacian.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};
SpectralDecomposition decompose_laplacian(const Graph& g);

// One exact lazy-walk multiply p <- M p via the adjacency lists: O(n + m),
// no dense matrix. Exposed for tests of the walk law itself.
void lazy_walk_multiply(const Graph& g, std::vector<double>& p);

// M^t 1_x as a probability vector (t dense-free multiplies).
std::vector<double> exact_walk_distribution(const Graph& g, uint32_t x, uint32_t t);

// <M^t 1_x, M^t 1_y>.
double exact_collision(const Graph& g, uint32_t x, uint32_t y, uint32_t t);

// <f_x, f_y> from the bottom-k Laplacian eigenvectors. The value is basis
// independent (it is the rank-k projector entry) unless lambda_k ~ lambda_{k+1};
// ties within 1e-9 are flagged degenerate rather than resolved.
struct ExactDot {
  double value = 0.0;
  bool degenerate = false;
};
ExactDot exact_dot(const Graph& g, uint32_t k, uint32_t x, uint32_t y);

// Total variation distance (1/2)*||p - q||_1. Throws std::invalid_argument on
// length mismatch or if either input is off probability-normalization by more
// than 1e-6.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Exact landmark Gram matrix (M^t S)^T (M^t S), entry (i,j) = the exact
// collision probability of landmarks i and j.
Eigen::MatrixXd exact_gram(const Graph& g, const std::vector<uint32_t>& landmarks,
                           uint32_t t);

// Exact alpha vector for vertex x against a landmark set:
// alpha(i) = <M^t 1_x, M^t 1_{s_i}>.
Eigen::VectorXd exact_alpha(const Graph& g, const std::vector<uint32_t>& landmarks,
                            uint32_t x, uint32_t t);

}  // namespace sco
