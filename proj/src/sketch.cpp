#include "sketch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "collision.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "walks.hpp"

namespace sco {

namespace {

void validate_params(const SketchParams& p) {
  if (p.k == 0) throw std::invalid_argument("k must be >= 1");
  if (p.s < p.k) throw std::invalid_argument("landmark count s must be >= k");
  if (p.t == 0 || p.reps == 0 || p.r_init == 0 || p.m_init == 0 ||
      p.r_query == 0 || p.m_query == 0)
    throw std::invalid_argument("all walk/rep counts must be >= 1");
  if (!(p.xi > 0.0 && p.xi < 1.0))
    throw std::invalid_argument("xi must lie in (0, 1)");
}

// Peak transient words of the canonical build: persistent footprint, reps
// per-repetition s x s estimate matrices (the algorithm stores full mirrored
// matrices even though our assembly packs the upper triangle), the assembled
// Gram, the eigendecomposition output (W and the eigenvalues), and the 2*M
// live walk endpoints of the estimator.
uint64_t peak_words(const SketchParams& p) {
  const uint64_t s = p.s;
  const uint64_t persistent = s * s + s + 10;
  return persistent + static_cast<uint64_t>(p.reps) * s * s + s * s +
         (s * s + s) + 2ull * p.m_init;
}

// Shared back half of init: eigendecompose (n/s)*Gram, check invertibility of
// the top-k spectrum, assemble Psi.
InitResult finish_init(uint32_t n, const SketchParams& params,
                       std::vector<uint32_t> landmarks,
                       const Eigen::MatrixXd& gram) {
  const Eigen::Index s = gram.rows();
  const double scale = static_cast<double>(n) / static_cast<double>(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scale * gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");

  // Descending eigenvalue order; exact ties broken by lexicographic
  // comparison of the eigenvector columns so the top-k cut is deterministic.
  std::vector<Eigen::Index> order(static_cast<size_t>(s));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ea = es.eigenvalues()(a), eb = es.eigenvalues()(b);
    if (ea != eb) return ea > eb;
    for (Eigen::Index r = 0; r < s; ++r) {
      const double va = es.eigenvectors()(r, a), vb = es.eigenvectors()(r, b);
      if (va != vb) return va < vb;
    }
    return false;
  });

  const double sigma_max = es.eigenvalues()(order[0]);
  const double sigma_k = es.eigenvalues()(order[params.k - 1]);
  const double tolerance = std::max(0.0, kInitTolerance * sigma_max);
  if (!(sigma_k > tolerance)) {
    InitResult out;
    out.failure = InitFailureInfo{sigma_k, tolerance};
    return out;
  }

  // Psi as a sum of scaled outer products, accumulated mirrored so (i,j) and
  // (j,i) receive the identical computed value: exact symmetry by
  // construction. (An Eigen product expression would fold the scalar into one
  // factor and break bitwise symmetry.)
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(s, s);
  for (uint32_t r = 0; r < params.k; ++r) {
    const Eigen::Index idx = order[r];
    const double sigma = es.eigenvalues()(idx);
    const double coeff = scale / (sigma * sigma);
    const Eigen::VectorXd w = es.eigenvectors().col(idx);
    for (Eigen::Index i = 0; i < s; ++i)
      for (Eigen::Index j = i; j < s; ++j) {
        const double v = coeff * (w(i) * w(j));
        psi(i, j) += v;
        if (j != i) psi(j, i) += v;
      }
  }

  InitResult out;
  out.sketch = OracleSketch{params, std::move(landmarks), std::move(psi),
                            peak_words(params)};
  return out;
}

}  // namespace

InitResult init_oracle(const Graph& g, const SketchParams& params,
                       QueryCounter& ctr) {
  validate_params(params);
  std::vector<uint32_t> landmarks(params.s);
  for (uint32_t i = 0; i < params.s; ++i) {
    Rng rng(derive_seed(params.seed, "landmark", {i}));
    landmarks[i] = static_cast<uint32_t>(rng.next_below(g.n()));
  }
  return init_oracle_with_landmarks(g, params, landmarks, ctr);
}

InitResult init_oracle_with_landmarks(const Graph& g, const SketchParams& params,
                                      const std::vector<uint32_t>& landmarks,
                                      QueryCounter& ctr) {
  validate_params(params);
  if (landmarks.size() != params.s)
    throw std::invalid_argument("landmark count does not match params.s");
  WalkParams wp;
  wp.t = params.t;
  wp.r = params.r_init;
  wp.m = params.m_init;
  wp.seed = derive_seed(params.seed, "init", {});
  const GramEstimate gram = est_colli_prob(g, wp, landmarks, params.reps, ctr);
  return finish_init(g.n(), params, landmarks, gram.matrix);
}

InitResult init_oracle_from_gram(uint32_t n, const SketchParams& params,
                                 const std::vector<uint32_t>& landmarks,
                                 const Eigen::MatrixXd& gram) {
  validate_params(params);
  if (landmarks.size() != params.s)
    throw std::invalid_argument("landmark count does not match params.s");
  for (uint32_t v : landmarks)
    if (v >= n) throw std::invalid_argument("landmark id out of range");
  if (gram.rows() != static_cast<Eigen::Index>(params.s) ||
      gram.cols() != static_cast<Eigen::Index>(params.s))
    throw std::invalid_argument("gram matrix must be s x s");
  return finish_init(n, params, landmarks, gram);
}

Eigen::VectorXd estimate_alpha(const Graph& g, const OracleSketch& sketch,
                               uint32_t x, uint64_t alpha_seed,
                               QueryCounter& ctr) {
  if (x >= g.n()) throw std::invalid_argument("vertex out of range");
  const SketchParams& p = sketch.params;
  const size_t s = sketch.landmarks.size();
  const size_t n_tasks = static_cast<size_t>(p.reps) * s;
  std::vector<double> estimates(n_tasks);

  const int workers = std::max(1, thread_count());
  std::vector<QueryCounter> worker_ctrs(static_cast<size_t>(workers));
  parallel_for(n_tasks, workers, [&](size_t task, int worker) {
    const uint64_t rep = task / s;
    const uint64_t i = task % s;
    WalkParams wp;
    wp.t = p.t;
    wp.r = p.r_query;
    wp.m = p.m_query;
    wp.seed = derive_seed(alpha_seed, {rep, i});
    estimates[task] =
        est_rw_dot(g, wp, x, sketch.landmarks[i],
                   worker_ctrs[static_cast<size_t>(worker)]);
  });
  for (const auto& wc : worker_ctrs) ctr += wc;

  Eigen::VectorXd alpha(static_cast<Eigen::Index>(s));
  std::vector<double> column(p.reps);
  for (size_t i = 0; i < s; ++i) {
    for (uint32_t rep = 0; rep < p.reps; ++rep)
      column[rep] = estimates[static_cast<size_t>(rep) * s + i];
    auto mid = column.begin() + (p.reps - 1) / 2;  // lower median
    std::nth_element(column.begin(), mid, column.end());
    alpha(static_cast<Eigen::Index>(i)) = *mid;
  }
  return alpha;
}

double query_dot(const Graph& g, const OracleSketch& sketch, uint32_t x,
                 uint32_t y, QueryCounter& ctr) {
  const uint32_t lo = std::min(x, y), hi = std::max(x, y);
  const Eigen::VectorXd alpha_lo = estimate_alpha(
      g, sketch, lo, derive_seed(sketch.params.seed, "query", {lo, hi, lo}),
      ctr);
  if (lo == hi) return bilinear_psi(sketch.psi, alpha_lo, alpha_lo);
  const Eigen::VectorXd alpha_hi = estimate_alpha(
      g, sketch, hi, derive_seed(sketch.params.seed, "query", {lo, hi, hi}),
      ctr);
  return bilinear_psi(sketch.psi, alpha_lo, alpha_hi);
}

}  // namespace sco
