#include "distinguish.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "collision.hpp"
#include "rng.hpp"
#include "walks.hpp"

namespace sco {

double v2_of_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (m.rows() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(m.rows() - 2);  // ascending order: second largest
}

namespace {

uint32_t ceil_log2(uint32_t n) {
  uint32_t l = 0;
  while ((1ull << l) < n) ++l;
  return l;
}

DistinguishVerdict verdict_of(uint32_t n, const Eigen::MatrixXd& gram) {
  const double scale =
      static_cast<double>(n) / static_cast<double>(gram.rows());
  const double v2 = v2_of_symmetric(scale * gram);
  DistinguishVerdict out;
  out.v2_squared = v2 * v2;
  out.two_cluster = out.v2_squared >= kDistinguishThreshold;
  return out;
}

}  // namespace

uint32_t default_distinguish_t(uint32_t n) {
  return std::max(1u, 20 * ceil_log2(n));
}

uint32_t default_distinguish_s(uint32_t n) {
  const double v = 4.0 * std::log2(static_cast<double>(n));
  return std::max(1u, static_cast<uint32_t>(std::ceil(v)));
}

uint64_t default_distinguish_r(uint32_t n, uint32_t m) {
  if (m == 0) throw std::invalid_argument("M must be >= 1");
  return (4ull * n + m - 1) / m;
}

DistinguishVerdict distinguish(const Graph& g, uint32_t m, uint32_t t,
                               uint64_t r, uint32_t s, uint32_t reps,
                               uint64_t seed) {
  if (s == 0) throw std::invalid_argument("landmark count s must be >= 1");
  std::vector<uint32_t> landmarks(s);
  for (uint32_t i = 0; i < s; ++i) {
    Rng rng(derive_seed(seed, "landmark", {i}));
    landmarks[i] = static_cast<uint32_t>(rng.next_below(g.n()));
  }
  WalkParams wp;
  wp.t = t;
  wp.r = r;
  wp.m = m;
  wp.seed = derive_seed(seed, "distinguish", {});
  QueryCounter ctr;
  const GramEstimate gram = est_colli_prob(g, wp, landmarks, reps, ctr);

  DistinguishVerdict out = verdict_of(g.n(), gram.matrix);
  out.walks_used = ctr.walks_started;
  out.words_peak = ctr.words_stored_peak +
                   static_cast<uint64_t>(s) * s +
                   static_cast<uint64_t>(reps) * s * (s + 1) / 2;
  return out;
}

DistinguishVerdict distinguish_from_gram(uint32_t n,
                                         const Eigen::MatrixXd& gram) {
  DistinguishVerdict out = verdict_of(n, gram);
  out.walks_used = 0;
  out.words_peak = static_cast<uint64_t>(gram.rows()) * gram.rows();
  return out;
}

}  // namespace sco
