#include "exact.hpp"

#include <cmath>
#include <stdexcept>

namespace sco {

namespace {

void check_cap(const Graph& g) {
  if (g.n() > kExactSizeCap)
    throw std::invalid_argument("exact computation size cap exceeded");
  if (g.n() == 0) throw std::invalid_argument("empty graph");
}

}  // namespace

SpectralDecomposition decompose_laplacian(const Graph& g) {
  check_cap(g);
  const uint32_t n = g.n();
  const double d = g.degree_bound();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (uint32_t v = 0; v < n; ++v) {
    lap(v, v) = g.degree(v) / d;
    for (uint32_t u : g.neighbors(v)) lap(v, u) -= 1.0 / d;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void lazy_walk_multiply(const Graph& g, std::vector<double>& p) {
  // (Mp)(v) = (1 - deg(v)/(2d)) p(v) + sum_{u ~ v} p(u)/(2d).
  const double inv2d = 1.0 / (2.0 * g.degree_bound());
  std::vector<double> next(p.size());
  for (uint32_t v = 0; v < g.n(); ++v) {
    double acc = (1.0 - g.degree(v) * inv2d) * p[v];
    for (uint32_t u : g.neighbors(v)) acc += p[u] * inv2d;
    next[v] = acc;
  }
  p.swap(next);
}

std::vector<double> exact_walk_distribution(const Graph& g, uint32_t x, uint32_t t) {
  check_cap(g);
  if (x >= g.n()) throw std::invalid_argument("vertex out of range");
  std::vector<double> p(g.n(), 0.0);
  p[x] = 1.0;
  for (uint32_t step = 0; step < t; ++step) lazy_walk_multiply(g, p);
  return p;
}

double exact_collision(const Graph& g, uint32_t x, uint32_t y, uint32_t t) {
  auto px = exact_walk_distribution(g, x, t);
  auto py = exact_walk_distribution(g, y, t);
  double acc = 0.0;
  for (size_t i = 0; i < px.size(); ++i) acc += px[i] * py[i];
  return acc;
}

ExactDot exact_dot(const Graph& g, uint32_t k, uint32_t x, uint32_t y) {
  check_cap(g);
  if (x >= g.n() || y >= g.n()) throw std::invalid_argument("vertex out of range");
  if (k == 0 || k > g.n()) throw std::invalid_argument("k out of range");
  auto dec = decompose_laplacian(g);
  ExactDot result;
  if (k < g.n() &&
      std::abs(dec.eigenvalues(k) - dec.eigenvalues(k - 1)) < 1e-9)
    result.degenerate = true;
  // <f_x, f_y> = sum_{i<k} u_i(x) u_i(y): the (x,y) entry of the rank-k
  // spectral projector, invariant under basis rotation within eigenspaces
  // whenever the k-th gap is nonzero.
  double acc = 0.0;
  for (uint32_t i = 0; i < k; ++i)
    acc += dec.eigenvectors(x, i) * dec.eigenvectors(y, i);
  result.value = acc;
  return result;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("length mismatch");
  double sum_p = 0.0, sum_q = 0.0, acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    sum_p += p[i];
    sum_q += q[i];
    acc += std::abs(p[i] - q[i]);
  }
  if (std::abs(sum_p - 1.0) > 1e-6 || std::abs(sum_q - 1.0) > 1e-6)
    throw std::invalid_argument("input is not a probability distribution");
  return 0.5 * acc;
}

Eigen::MatrixXd exact_gram(const Graph& g, const std::vector<uint32_t>& landmarks,
                           uint32_t t) {
  check_cap(g);
  const auto s = static_cast<Eigen::Index>(landmarks.size());
  std::vector<std::vector<double>> dists;
  dists.reserve(landmarks.size());
  for (uint32_t v : landmarks) dists.push_back(exact_walk_distribution(g, v, t));
  Eigen::MatrixXd gram(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i; j < s; ++j) {
      double acc = 0.0;
      for (uint32_t v = 0; v < g.n(); ++v) acc += dists[i][v] * dists[j][v];
      gram(i, j) = gram(j, i) = acc;
    }
  return gram;
}

Eigen::VectorXd exact_alpha(const Graph& g, const std::vector<uint32_t>& landmarks,
                            uint32_t x, uint32_t t) {
  check_cap(g);
  auto px = exact_walk_distribution(g, x, t);
  Eigen::VectorXd alpha(static_cast<Eigen::Index>(landmarks.size()));
  for (size_t i = 0; i < landmarks.size(); ++i) {
    auto pl = exact_walk_distribution(g, landmarks[i], t);
    double acc = 0.0;
    for (uint32_t v = 0; v < g.n(); ++v) acc += px[v] * pl[v];
    alpha(static_cast<Eigen::Index>(i)) = acc;
  }
  return alpha;
}

}  // namespace sco
