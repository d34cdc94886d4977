#include <doctest.h>

#include <cmath>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "rng.hpp"

using namespace sco;

namespace {

Graph c4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

}  // namespace

TEST_CASE("laplacian decomposition invariants") {
  for (uint64_t seed : {1ull, 2ull}) {
    Graph g = generate_sbm(48, 2, 0.4, 0.05, seed);
    auto dec = decompose_laplacian(g);
    const auto n = static_cast<Eigen::Index>(g.n());
    REQUIRE(dec.eigenvalues.size() == n);
    CHECK(std::abs(dec.eigenvalues(0)) < 1e-9);
    CHECK(dec.eigenvalues(0) > -1e-9);
    CHECK(dec.eigenvalues(n - 1) < 2.0 + 1e-9);
    // Orthonormality in max-norm.
    Eigen::MatrixXd gram = dec.eigenvectors.transpose() * dec.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("uniform distribution is the lazy-walk fixed point") {
  Graph g = generate_sbm(40, 2, 0.5, 0.1, 3);
  std::vector<double> p(g.n(), 1.0 / g.n());
  lazy_walk_multiply(g, p);
  for (double v : p) CHECK(v == doctest::Approx(1.0 / g.n()).epsilon(1e-9));
}

TEST_CASE("exact walk distribution: identity, hand value, normalization") {
  Graph g = c4();
  auto p0 = exact_walk_distribution(g, 2, 0);
  CHECK(p0 == std::vector<double>{0, 0, 1, 0});

  // One step from vertex 0: stay 1/2, each neighbor 1/4.
  auto p1 = exact_walk_distribution(g, 0, 1);
  CHECK(p1[0] == doctest::Approx(0.5));
  CHECK(p1[1] == doctest::Approx(0.25));
  CHECK(p1[2] == doctest::Approx(0.0));
  CHECK(p1[3] == doctest::Approx(0.25));

  // Two steps from vertex 0: (3/8, 1/4, 1/8, 1/4).
  auto p2 = exact_walk_distribution(g, 0, 2);
  CHECK(p2[0] == doctest::Approx(3.0 / 8).epsilon(1e-12));
  CHECK(p2[1] == doctest::Approx(1.0 / 4).epsilon(1e-12));
  CHECK(p2[2] == doctest::Approx(1.0 / 8).epsilon(1e-12));
  CHECK(p2[3] == doctest::Approx(1.0 / 4).epsilon(1e-12));

  Graph h = generate_sbm(30, 3, 0.5, 0.2, 5);
  auto p = exact_walk_distribution(h, 7, 13);
  double sum = 0.0, l2 = 0.0, l4 = 0.0;
  for (double v : p) {
    sum += v;
    l2 += v * v;
    l4 += v * v * v * v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  // ||p||_4^2 <= ||p||_2^2 for probability vectors.
  CHECK(std::sqrt(l4) <= l2 + 1e-15);
}

TEST_CASE("exact collision: frozen C4 values and symmetry") {
  Graph g = c4();
  CHECK(exact_collision(g, 0, 0, 2) == doctest::Approx(9.0 / 32).epsilon(1e-12));
  CHECK(exact_collision(g, 0, 2, 2) == doctest::Approx(7.0 / 32).epsilon(1e-12));
  CHECK(exact_collision(g, 1, 3, 2) == exact_collision(g, 3, 1, 2));

  Graph u = disjoint_union(c4(), c4());
  CHECK(exact_collision(u, 0, 5, 3) == 0.0);
}

TEST_CASE("two disjoint components force v2(M) = 1 and c small eigenvalues") {
  Graph ex = generate_regular_expander(64, 3, 17);
  Graph u = disjoint_union(ex, ex);
  auto dec = decompose_laplacian(u);
  // lambda_2(L) = 0 <=> v2(M) = 1 - lambda_2/2 = 1.
  CHECK(std::abs(dec.eigenvalues(1)) < 1e-9);
  CHECK(dec.eigenvalues(2) > 1e-3);  // spectral gap inside each expander

  Graph three = disjoint_union(u, ex);
  auto dec3 = decompose_laplacian(three);
  int tiny = 0;
  for (Eigen::Index i = 0; i < dec3.eigenvalues.size(); ++i)
    if (dec3.eigenvalues(i) < 1e-8) ++tiny;
  CHECK(tiny == 3);
}

TEST_CASE("exact_dot: orthonormality, two-cluster dichotomy, degeneracy flag") {
  Graph k4 = generate_regular_expander(4, 3, 1);

  // Full basis: <f_x, f_x> = 1.
  auto full = exact_dot(k4, 4, 2, 2);
  CHECK(full.value == doctest::Approx(1.0).epsilon(1e-9));

  // K4's non-zero Laplacian eigenvalues are all 4/3: k=2 hits a tie.
  CHECK(exact_dot(k4, 2, 0, 1).degenerate);

  Graph u = disjoint_union(k4, k4);
  auto same = exact_dot(u, 2, 0, 1);
  CHECK_FALSE(same.degenerate);
  CHECK(same.value == doctest::Approx(2.0 / 8).epsilon(1e-9));
  auto cross = exact_dot(u, 2, 0, 5);
  CHECK(cross.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("exact_dot separates a random 2-block graph") {
  Graph g = generate_sbm(100, 2, 0.3, 0.01, 21);
  Rng rng(99);
  double intra = 0.0, inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (int i = 0; i < 50; ++i) {
    uint32_t x = rng.next_below(100), y = rng.next_below(100);
    if (x == y) continue;
    double v = exact_dot(g, 2, x, y).value;
    if ((x < 50) == (y < 50)) {
      intra += v;
      ++n_intra;
    } else {
      inter += v;
      ++n_inter;
    }
  }
  REQUIRE(n_intra > 5);
  REQUIRE(n_inter > 5);
  intra /= n_intra;
  inter /= n_inter;
  CHECK(intra > 0.0);
  CHECK(intra >= 5.0 * inter);
}

TEST_CASE("tv_distance") {
  std::vector<double> p{1.0, 0.0}, q{0.5, 0.5};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == doctest::Approx(0.5));
  CHECK(tv_distance({1, 0, 0}, {0, 0.5, 0.5}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tv_distance({1.0}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(tv_distance({0.7, 0.2}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("exact gram and alpha agree with pairwise collisions") {
  Graph g = c4();
  std::vector<uint32_t> landmarks{0, 2};
  auto gram = exact_gram(g, landmarks, 2);
  CHECK(gram(0, 0) == doctest::Approx(9.0 / 32).epsilon(1e-12));
  CHECK(gram(0, 1) == doctest::Approx(7.0 / 32).epsilon(1e-12));
  CHECK(gram(1, 0) == gram(0, 1));
  CHECK(gram(1, 1) == doctest::Approx(9.0 / 32).epsilon(1e-12));

  auto alpha = exact_alpha(g, landmarks, 0, 2);
  CHECK(alpha(0) == doctest::Approx(9.0 / 32).epsilon(1e-12));
  CHECK(alpha(1) == doctest::Approx(7.0 / 32).epsilon(1e-12));
}

TEST_CASE("size cap enforced") {
  Graph big(kExactSizeCap + 1, {});
  CHECK_THROWS_AS(exact_walk_distribution(big, 0, 1), std::invalid_argument);
}

TEST_CASE("lazy walks on a sparse expander mix to uniform at deep horizons") {
  // On a random 3-regular graph the lazy-walk contraction per step is only
  // ~0.97 (the nontrivial adjacency eigenvalues cannot beat 2*sqrt(2)/3), so
  // uniformity to 1e-4 total variation needs hundreds of steps — measured
  // max TV over these starts: 7.8e-2 at t=80, 1.7e-3 at t=200, 1.1e-7 at
  // t=500.
  Graph g = generate_regular_expander(256, 3, 9);
  const std::vector<double> uniform(256, 1.0 / 256);
  Rng pick(derive_seed(77, "mix", {}));
  std::vector<uint32_t> starts;
  for (int i = 0; i < 10; ++i) starts.push_back(pick.next_below(256));

  double tv80 = 0.0, tv200 = 0.0, tv500 = 0.0;
  for (uint32_t x : starts) {
    tv80 = std::max(tv80, tv_distance(exact_walk_distribution(g, x, 80), uniform));
    tv200 =
        std::max(tv200, tv_distance(exact_walk_distribution(g, x, 200), uniform));
    tv500 =
        std::max(tv500, tv_distance(exact_walk_distribution(g, x, 500), uniform));
  }
  CHECK(tv500 <= 1e-4);
  CHECK(tv500 < tv200);
  CHECK(tv200 < tv80);
  CHECK(tv80 > 1e-3);  // the shallow horizon genuinely is far from uniform
}
