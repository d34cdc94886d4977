#include "collision.hpp"

#include <algorithm>
#include <stdexcept>

#include "parallel.hpp"
#include "rng.hpp"

namespace sco {

GramEstimate est_colli_prob(const Graph& g, const WalkParams& params,
                            const std::vector<uint32_t>& landmarks,
                            uint32_t reps, QueryCounter& ctr) {
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  if (landmarks.empty()) throw std::invalid_argument("landmarks must be non-empty");
  for (uint32_t v : landmarks)
    if (v >= g.n()) throw std::invalid_argument("landmark id out of range");

  const size_t s = landmarks.size();
  std::vector<std::pair<uint32_t, uint32_t>> pairs;  // upper triangle, i <= j
  pairs.reserve(s * (s + 1) / 2);
  for (uint32_t i = 0; i < s; ++i)
    for (uint32_t j = i; j < s; ++j) pairs.emplace_back(i, j);

  const size_t n_pairs = pairs.size();
  const size_t n_tasks = static_cast<size_t>(reps) * n_pairs;
  std::vector<double> estimates(n_tasks);

  const int workers = std::max(1, thread_count());
  std::vector<QueryCounter> worker_ctrs(static_cast<size_t>(workers));
  parallel_for(n_tasks, workers, [&](size_t task, int worker) {
    const uint32_t rep = static_cast<uint32_t>(task / n_pairs);
    const auto [i, j] = pairs[task % n_pairs];
    WalkParams task_params = params;
    task_params.seed = derive_seed(params.seed, "gram", {rep, i, j});
    estimates[task] = est_rw_dot(g, task_params, landmarks[i], landmarks[j],
                                 worker_ctrs[static_cast<size_t>(worker)]);
  });
  for (const auto& wc : worker_ctrs) ctr += wc;

  GramEstimate out;
  out.landmarks = landmarks;
  out.reps = reps;
  out.matrix.resize(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
  std::vector<double> column(reps);
  for (size_t p = 0; p < n_pairs; ++p) {
    for (uint32_t rep = 0; rep < reps; ++rep)
      column[rep] = estimates[static_cast<size_t>(rep) * n_pairs + p];
    auto mid = column.begin() + (reps - 1) / 2;  // lower median for even reps
    std::nth_element(column.begin(), mid, column.end());
    const auto [i, j] = pairs[p];
    out.matrix(i, j) = *mid;
    out.matrix(j, i) = *mid;
  }
  return out;
}

}  // namespace sco
