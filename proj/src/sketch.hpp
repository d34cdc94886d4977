#pragma once
// Memory-bounded spectral dot-product oracle. init_oracle estimates the
// landmark Gram matrix, eigendecomposes (n/s)*Gram, and keeps only the s x s
// matrix Psi = (n/s) * W_[k] Sigma_[k]^-2 W_[k]^T plus the landmark list —
// the entire persistent footprint. query_dot then estimates <f_x, f_y> (the
// rank-k spectral-embedding dot product) as alpha_x^T Psi alpha_y, where
// alpha_z(i) is the estimated walk-collision probability of z with landmark i.
#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace sco {

struct SketchParams {
  uint32_t k = 1;          // clusters / embedding rank
  double xi = 0.5;         // accuracy parameter, carried for threshold formulas
  uint32_t t = 20;         // walk length
  uint32_t s = 20;         // landmark count (>= k)
  uint64_t r_init = 80;    // walks per endpoint per Gram entry estimate
  uint32_t m_init = 80;    // batch size during init
  uint64_t r_query = 80;   // walks per endpoint per alpha entry estimate
  uint32_t m_query = 80;   // batch size during queries
  uint32_t reps = 20;      // median repetitions (init and query)
  uint64_t seed = 0;
};

// Eigenvalue floor for "Sigma_[k]^-1 exists": the k-th largest eigenvalue of
// (n/s)*Gram must exceed this fraction of the largest (and be positive).
inline constexpr double kInitTolerance = 1e-12;

struct OracleSketch {
  SketchParams params;
  std::vector<uint32_t> landmarks;  // I_S, size s, sampled i.u.r. with replacement
  Eigen::MatrixXd psi;              // s x s, exactly symmetric

  // Transient high-water mark of the canonical build, in words: persistent
  // footprint + reps per-repetition s x s estimate matrices + the assembled
  // Gram + the eigendecomposition output + 2*M_init live walk endpoints.
  uint64_t peak_build_words = 0;

  // Persistent stored words: Psi (s^2) + landmarks (s) + parameter block (10).
  // Independent of R and M: batching discards walk endpoints.
  uint64_t measure_space_words() const {
    const uint64_t s = landmarks.size();
    return s * s + s + 10;
  }
};

// Failure detail when the k-th eigenvalue does not clear the tolerance —
// the instance/parameters do not expose k clusters.
struct InitFailureInfo {
  double kth_eigenvalue = 0.0;
  double tolerance = 0.0;
};

struct InitResult {
  std::optional<OracleSketch> sketch;
  InitFailureInfo failure{};  // meaningful only when !ok()
  bool ok() const { return sketch.has_value(); }
};

// Samples s landmarks i.u.r. with replacement, estimates their Gram matrix
// (reps-median batched walk estimates), and builds Psi from the top-k
// eigenpairs of (n/s)*Gram. Returns failure (not an exception) when the k-th
// largest eigenvalue is <= max(0, kInitTolerance * largest).
// Charges reps * s(s+1)/2 * 2 * realized R_init walks of t steps to ctr.
// Throws std::invalid_argument on malformed params.
InitResult init_oracle(const Graph& g, const SketchParams& params,
                       QueryCounter& ctr);

// init_oracle with a caller-chosen landmark multiset (size params.s) instead
// of i.u.r. sampling; estimation and assembly are identical.
InitResult init_oracle_with_landmarks(const Graph& g, const SketchParams& params,
                                      const std::vector<uint32_t>& landmarks,
                                      QueryCounter& ctr);

// Same eigendecomposition pipeline on a caller-supplied Gram matrix over the
// given landmarks (e.g. the exact dense Gram) — no walks, no sampling. The
// peak-words accounting still reports the canonical build formula.
InitResult init_oracle_from_gram(uint32_t n, const SketchParams& params,
                                 const std::vector<uint32_t>& landmarks,
                                 const Eigen::MatrixXd& gram);

// Entrywise lower-median estimate of alpha_x: alpha(i) = collision probability
// of x with landmark i, median over params.reps independent estimates keyed by
// (alpha_seed, repetition, i). Charges 2 * s * reps * realized R_query walks —
// the budget of one marginal membership query.
Eigen::VectorXd estimate_alpha(const Graph& g, const OracleSketch& sketch,
                               uint32_t x, uint64_t alpha_seed,
                               QueryCounter& ctr);

// alpha_a^T Psi alpha_b with a fixed evaluation order; callers pass the
// canonical (e.g. smaller-id) side first so symmetric call patterns produce
// bit-identical values.
inline double bilinear_psi(const Eigen::MatrixXd& psi, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) {
  return a.dot(psi * b);
}

// Estimated <f_x, f_y> = alpha_x^T Psi alpha_y. Alpha seeds derive from the
// unordered pair (min, max), the alpha for the smaller id is computed first,
// and x == y computes its alpha once — so query_dot(x, y) == query_dot(y, x)
// bitwise and repeated calls are identical. Charges 2 * (2 * s * reps *
// realized R_query) walks when x != y, half that when x == y.
double query_dot(const Graph& g, const OracleSketch& sketch, uint32_t x,
                 uint32_t y, QueryCounter& ctr);

}  // namespace sco
