// Always-on acceptance checks. Each invocation runs one numbered criterion
// (argv[1] = c1..c9), prints exactly one [PASS]/[FAIL] line carrying the
// measured quantities, and exits 0/1. These are release-mode measurements
// against hard numeric gates, not unit fixtures: a failing line reports the
// real measured value so the gap is visible, never a silenced expectation.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bench.hpp"
#include "collision.hpp"
#include "distinguish.hpp"
#include "exact.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "sketch.hpp"
#include "walks.hpp"

namespace {

using namespace sco;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Graph cycle4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

// ---------------------------------------------------------------------------
// c1: the batched walk estimator is unbiased. On the 4-cycle with t = 2 the
// exact self-collision probability of vertex 0 is 9/32; the mean of 10^4
// independent estimates (R = 100, M = 10) must sit within 4 standard errors.
Outcome c1_unbiasedness() {
  const Graph g = cycle4();
  const double exact = exact_collision(g, 0, 0, 2);
  const int runs = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < runs; ++i) {
    WalkParams p;
    p.t = 2;
    p.r = 100;
    p.m = 10;
    p.seed = derive_seed(4242, "c1", {static_cast<uint64_t>(i)});
    QueryCounter ctr;
    const double v = est_rw_dot(g, p, 0, 0, ctr);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / runs;
  const double var = (sumsq - runs * mean * mean) / (runs - 1);
  const double se = std::sqrt(var / runs);
  const double diff = std::abs(mean - exact);
  return {diff <= 4.0 * se,
          fmt("estimator mean over %d runs = %.6f vs exact %.6f "
              "(|diff| = %.2e, 4*SE = %.2e)",
              runs, mean, exact, diff, 4.0 * se)};
}

// ---------------------------------------------------------------------------
// c2: the memory contract of batching. Peak live endpoint storage during one
// estimator call never exceeds 2M records, for R/M in {10, 100, 1000}, over a
// spread of graphs with n <= 256 and batch sizes.
Outcome c2_memory_contract() {
  std::vector<Graph> graphs;
  graphs.push_back(cycle4());
  graphs.push_back(generate_regular_expander(64, 3, 101));
  graphs.push_back(generate_regular_expander(256, 3, 102));
  graphs.push_back(generate_sbm(128, 2, 0.3, 0.05, 103));
  graphs.push_back(generate_sbm(256, 4, 0.25, 0.02, 104));

  Rng rng(derive_seed(4242, "c2", {}));
  uint64_t checks = 0;
  double worst_fill = 0.0;
  for (const Graph& g : graphs) {
    for (uint32_t m : {1u, 7u, 16u, 33u}) {
      for (uint64_t ratio : {10ull, 100ull, 1000ull}) {
        for (int pair = 0; pair < 3; ++pair) {
          WalkParams p;
          p.t = 8;
          p.m = m;
          p.r = ratio * m;
          p.seed = rng.next();
          const uint32_t x = rng.next_below(g.n());
          const uint32_t y = rng.next_below(g.n());
          QueryCounter ctr;  // fresh: reads this single call's peak
          est_rw_dot(g, p, x, y, ctr);
          ++checks;
          const double fill =
              static_cast<double>(ctr.words_stored_peak) / (2.0 * m);
          worst_fill = std::max(worst_fill, fill);
          if (ctr.words_stored_peak > 2ull * m)
            return {false,
                    fmt("peak %llu exceeds 2M = %u (n = %u, R/M = %llu)",
                        static_cast<unsigned long long>(ctr.words_stored_peak),
                        2 * m, g.n(), static_cast<unsigned long long>(ratio))};
        }
      }
    }
  }
  return {true, fmt("peak live storage <= 2M in all %llu estimator calls "
                    "(max observed fill %.2f of bound)",
                    static_cast<unsigned long long>(checks), worst_fill)};
}

// ---------------------------------------------------------------------------
// c3: Gram-estimate convergence in the walk budget. On a fixed 16-vertex
// graph with 4 landmarks, the median spectral-norm error over 20 trials at
// R*M = 10^6 must be at most half its value at R*M = 10^4.
Outcome c3_gram_convergence() {
  const Graph g = generate_sbm(16, 2, 0.9, 0.2, 3);
  const std::vector<uint32_t> landmarks{1, 6, 11, 14};
  const uint32_t t = 3, reps = 3, m = 10;
  const Eigen::MatrixXd exact = exact_gram(g, landmarks, t);

  auto median_err = [&](uint64_t r) {
    std::vector<double> errs;
    for (uint64_t trial = 0; trial < 20; ++trial) {
      WalkParams p;
      p.t = t;
      p.r = r;
      p.m = m;
      p.seed = derive_seed(55, "c3", {r, trial});
      QueryCounter ctr;
      const GramEstimate est = est_colli_prob(g, p, landmarks, reps, ctr);
      errs.push_back((est.matrix - exact).operatorNorm());
    }
    std::nth_element(errs.begin(), errs.begin() + 9, errs.end());
    return errs[9];  // lower median of 20
  };

  const double err_small = median_err(1000);    // R*M = 10^4
  const double err_large = median_err(100000);  // R*M = 10^6
  return {err_large <= 0.5 * err_small,
          fmt("median ||Gram_est - Gram_exact||_2: %.3e at R*M = 1e4, "
              "%.3e at R*M = 1e6 (ratio %.3f, need <= 0.5)",
              err_small, err_large, err_large / err_small)};
}

// ---------------------------------------------------------------------------
// c4: distinguisher correctness at fixed parameters t = 60, s = 24, reps = 9,
// R = ceil(4n/M), M in {8, 64}: at least 19/20 correct verdicts per case, on
// (a) one 3-regular expander n = 512 and (b) two disjoint n = 256 copies.
// Additionally the same decision rule on the exact dense Gram must give
// v2^2 < 0.001 for (a) and > 0.95 for (b).
//
// Note the two-cluster verdict is a function of the landmark draw: with s
// landmarks split s1 + s2 across the copies, the exact statistic is
// v2 = 2*min(s1, s2)/s, so a draw more lopsided than 10/14 decides "one
// cluster" no matter how many walks are spent. Under uniform sampling that
// happens with probability ~0.31 per trial, which caps case (b) far below
// 19/20; the measured count is reported as-is.
Outcome c4_distinguisher() {
  std::string detail;
  bool pass = true;

  for (uint32_t m : {8u, 64u}) {
    for (int two = 0; two < 2; ++two) {
      int correct = 0;
      for (uint64_t trial = 0; trial < 20; ++trial) {
        const Graph g =
            two ? disjoint_union(generate_regular_expander(
                                     256, 3, derive_seed(2026, "c4-two-a",
                                                         {m, trial})),
                                 generate_regular_expander(
                                     256, 3, derive_seed(2026, "c4-two-b",
                                                         {m, trial})))
                : generate_regular_expander(
                      512, 3, derive_seed(2026, "c4-one", {m, trial}));
        const uint64_t r = (4ull * 512 + m - 1) / m;
        const DistinguishVerdict v =
            distinguish(g, m, 60, r, 24, 9, derive_seed(2026, "c4-run", {m, trial}));
        correct += (v.two_cluster == (two == 1));
      }
      pass = pass && correct >= 19;
      detail += fmt("%s/M=%u %d/20 ", two ? "two" : "one", m, correct);
    }
  }

  double worst_one = 0.0, worst_two = 2.0;
  for (uint64_t i = 0; i < 5; ++i) {
    const Graph g1 = generate_regular_expander(
        512, 3, derive_seed(9, "c4-exact-one", {i}));
    Rng lm1(derive_seed(9, "c4-exact-one-lm", {i}));
    std::vector<uint32_t> lm;
    for (int j = 0; j < 24; ++j) lm.push_back(lm1.next_below(512));
    worst_one = std::max(
        worst_one,
        distinguish_from_gram(512, exact_gram(g1, lm, 60)).v2_squared);

    const Graph g2 = disjoint_union(
        generate_regular_expander(256, 3, derive_seed(9, "c4-exact-two-a", {i})),
        generate_regular_expander(256, 3, derive_seed(9, "c4-exact-two-b", {i})));
    Rng lm2(derive_seed(9, "c4-exact-two-lm", {i}));
    std::vector<uint32_t> balanced;  // 12 + 12 stratified across the copies
    for (int j = 0; j < 12; ++j) balanced.push_back(lm2.next_below(256));
    for (int j = 0; j < 12; ++j) balanced.push_back(256 + lm2.next_below(256));
    worst_two = std::min(
        worst_two,
        distinguish_from_gram(512, exact_gram(g2, balanced, 60)).v2_squared);
  }
  pass = pass && worst_one < 0.001 && worst_two > 0.95;
  detail += fmt("| exact Gram: max one-cluster v2^2 = %.2e (need < 1e-3), "
                "min two-cluster v2^2 = %.3f (need > 0.95)",
                worst_one, worst_two);
  return {pass, "verdicts " + detail};
}

// ---------------------------------------------------------------------------
// c5: full-pipeline benchmark at desk scale. SBM(3000, 3, 0.07, 0.002) with
// s = 20, t = 20, reps = 20, s_cluster = 21, theta = 0.0005. Scanning the
// batch-size grid upward at fixed budget R*M = 6400, the smallest M whose
// construction succeeds on all 5 seeds must land near 10400 stored words
// (+-15%) with mean full-labeling accuracy >= 0.97. The unbatched
// configuration M = R = 17000 is the baseline: at comparable accuracy it
// must cost at least 3x the words.
Outcome c5_benchmark_scale() {
  const Graph g = generate_sbm(3000, 3, 0.07, 0.002, 1);
  SketchParams base;
  base.k = 3;
  base.t = 20;
  base.s = 20;
  base.reps = 20;
  base.seed = 0;

  const std::vector<uint32_t> grid{32, 40, 50, 64, 80};
  uint32_t chosen_m = 0;
  double ours_words = 0.0;
  int ours_success = 0;
  double ours_acc = 0.0;
  std::string scan;
  for (uint32_t m : grid) {
    SketchParams ours = base;
    ours.m_init = ours.m_query = m;
    ours.r_init = ours.r_query = (6400 + m - 1) / m;
    int succ = 0;
    double acc = 0.0, words = 0.0;
    for (uint64_t label = 1; label <= 5; ++label) {
      SketchParams p = ours;
      p.seed = derive_seed(base.seed, "sweep", {label});
      const ExperimentRow row = run_config(g, p, 21, 0.0005, label);
      succ += row.success ? 1 : 0;
      acc += row.accuracy;
      words += static_cast<double>(row.words);
    }
    scan += fmt("M=%u %d/5 ", m, succ);
    if (succ == 5) {
      chosen_m = m;
      ours_success = succ;
      ours_acc = acc / 5.0;
      ours_words = words / 5.0;
      break;
    }
  }
  if (chosen_m == 0)
    return {false, "no batched grid point succeeded on all 5 seeds: " + scan};

  SketchParams prev = base;
  prev.m_init = prev.m_query = 17000;
  prev.r_init = prev.r_query = 17000;
  std::vector<uint32_t> eval;  // fixed 100-vertex subsample: full labeling at
  for (uint32_t v = 0; v < g.n(); v += 30) eval.push_back(v);  // R = 17000
  uint64_t prev_words = 0;     // would cost ~7e11 walk steps
  int prev_success = 0;
  double prev_acc = 0.0;
  for (uint64_t label = 1; label <= 2; ++label) {
    SketchParams p = prev;
    p.seed = derive_seed(base.seed, "baseline", {label});
    const ExperimentRow row = run_config(g, p, 21, 0.0005, label, eval);
    prev_success += row.success ? 1 : 0;
    prev_acc += row.accuracy;
    if (row.success) prev_words = row.words;
  }
  prev_acc /= 2.0;

  const bool words_near = ours_words >= 8840.0 && ours_words <= 11960.0;
  const bool pass = ours_success == 5 && ours_acc >= 0.97 && words_near &&
                    prev_success == 2 &&
                    static_cast<double>(prev_words) >= 3.0 * ours_words &&
                    prev_acc >= ours_acc - 0.02;
  return {pass,
          fmt("scan %s-> smallest all-seed M=%u: mean accuracy %.4f, %.0f "
              "words (target 10400 +-15%%); unbatched M=R=17000: %d/2 "
              "success, accuracy %.4f on 100-vertex subsample, %llu words "
              "(%.2fx)",
              scan.c_str(), chosen_m, ours_acc, ours_words, prev_success,
              prev_acc, static_cast<unsigned long long>(prev_words),
              ours_words > 0.0 ? static_cast<double>(prev_words) / ours_words
                               : 0.0)};
}

// ---------------------------------------------------------------------------
// c6: the space/time frontier. Sweeping M over {32, 40, 50, 64, 80} at fixed
// budget R*M = 6400 on the same SBM: stored words strictly increase with M,
// walks per query strictly decrease, and the S*T product stays within 4x
// across the sweep.
Outcome c6_tradeoff_frontier() {
  const Graph g = generate_sbm(3000, 3, 0.07, 0.002, 1);
  SweepConfig cfg;
  cfg.base.k = 3;
  cfg.base.t = 20;
  cfg.base.s = 20;
  cfg.base.reps = 20;
  cfg.base.seed = 0;
  cfg.budget = 6400;
  cfg.ms = {32, 40, 50, 64, 80};
  cfg.s_cluster = 21;
  cfg.theta = 0.0005;
  cfg.seeds = {1, 2, 3, 4, 5};
  const std::vector<ExperimentRow> rows = run_tradeoff_sweep(g, cfg);

  // Per-M storage is averaged over the successful seeds: the stream seed is
  // shared across M for a given seed label, so the sampled similarity graph
  // (and with it a few dozen words) varies by label but not by M, and the
  // label-to-label spread would otherwise alias the 2-words-per-unit-M step.
  std::vector<double> words;
  std::vector<uint64_t> walks;
  std::string successes;
  for (uint32_t m : cfg.ms) {
    double w = 0.0;
    uint64_t q = 0;
    int ok = 0;
    for (const ExperimentRow& row : rows)
      if (row.m == m && row.success) {
        w += static_cast<double>(row.words);
        q = row.walks_per_query;
        ++ok;
      }
    successes += fmt("%d", ok);
    if (ok == 0)
      return {false, fmt("no successful run at M = %u", m)};
    words.push_back(w / ok);
    walks.push_back(q);
  }

  bool monotone = true;
  for (size_t i = 1; i < words.size(); ++i)
    monotone = monotone && words[i] > words[i - 1] && walks[i] < walks[i - 1];
  double st_min = 1e300, st_max = 0.0;
  for (size_t i = 0; i < words.size(); ++i) {
    const double st = words[i] * static_cast<double>(walks[i]);
    st_min = std::min(st_min, st);
    st_max = std::max(st_max, st);
  }
  const double ratio = st_max / st_min;
  return {monotone && ratio <= 4.0,
          fmt("mean words %.0f..%.0f %s, walks/query %llu..%llu %s over M = "
              "32..80; S*T spread %.2fx (need <= 4); successes per M: %s",
              words.front(), words.back(),
              monotone ? "increasing" : "NOT MONOTONE",
              static_cast<unsigned long long>(walks.front()),
              static_cast<unsigned long long>(walks.back()),
              monotone ? "decreasing" : "NOT MONOTONE", ratio,
              successes.c_str())};
}

// ---------------------------------------------------------------------------
// c7: exact-pipeline correctness. Two disjoint 100-vertex 3-regular
// expanders, the dot-product sketch built from the exact dense Gram over a
// balanced 10 + 10 landmark set at t = 1000, exact alpha vectors: the
// bilinear form must reproduce the rank-2 projector entries (2/n on the same
// side, 0 across) to 1e-9, and the constructed oracle must label all 200
// vertices perfectly.
Outcome c7_exact_pipeline() {
  const Graph g = disjoint_union(generate_regular_expander(100, 3, 71),
                                 generate_regular_expander(100, 3, 72));
  std::vector<uint32_t> landmarks;
  for (uint32_t i = 0; i < 10; ++i) {
    landmarks.push_back(10 * i);
    landmarks.push_back(100 + 10 * i);
  }
  SketchParams p;
  p.k = 2;
  p.t = 1000;
  p.s = 20;
  p.seed = 77;
  ConstructOptions opt;
  opt.exact = true;
  opt.landmarks = landmarks;
  QueryCounter ctr;
  const ConstructResult res = construct_oracle(g, p, 20, 0.005, ctr, opt);
  if (!res.ok())
    return {false, fmt("exact construction declined (%d components found)",
                       res.failure.components_found)};

  const std::vector<uint32_t> probes{3, 27, 55, 84, 103, 127, 155, 184};
  double worst = 0.0;
  for (size_t a = 0; a < probes.size(); ++a)
    for (size_t b = a; b < probes.size(); ++b) {
      const uint32_t x = probes[a], y = probes[b];
      const Eigen::VectorXd ax = exact_alpha(g, landmarks, x, p.t);
      const Eigen::VectorXd ay = exact_alpha(g, landmarks, y, p.t);
      const double dot = bilinear_psi(res.state->sketch.psi, ax, ay);
      const bool same_side = (x < 100) == (y < 100);
      const double want = same_side ? 2.0 / g.n() : 0.0;
      worst = std::max(worst, std::abs(dot - want));
      const ExactDot ref = exact_dot(g, 2, x, y);
      if (!ref.degenerate) worst = std::max(worst, std::abs(dot - ref.value));
    }

  QueryCounter qctr;
  const std::vector<uint32_t> labels = label_all(g, *res.state, qctr);
  const double acc = clustering_accuracy(labels, g.ground_truth(), 2);
  const bool pass = worst <= 1e-9 && acc == 1.0 && qctr.walks_started == 0;
  return {pass, fmt("max |dot - projector entry| = %.2e over %zu pairs "
                    "(need <= 1e-9); full-labeling accuracy %.4f; %llu walks",
                    worst, probes.size() * (probes.size() + 1) / 2, acc,
                    static_cast<unsigned long long>(qctr.walks_started))};
}

// ---------------------------------------------------------------------------
// c8: determinism. The same master seed must give a byte-identical sweep CSV
// and identical membership answers on repeated queries and on a rebuilt
// oracle.
Outcome c8_determinism() {
  const Graph g = generate_sbm(120, 3, 0.7, 0.005, 11);
  SweepConfig cfg;
  cfg.base.k = 3;
  cfg.base.s = 8;
  cfg.base.t = 10;
  cfg.base.reps = 3;
  cfg.base.seed = 33;
  cfg.budget = 6400;
  cfg.ms = {10, 20, 40};
  cfg.s_cluster = 9;
  cfg.theta = 0.01;
  cfg.seeds = {1, 2};
  const std::string csv1 = sweep_csv(run_tradeoff_sweep(g, cfg));
  const std::string csv2 = sweep_csv(run_tradeoff_sweep(g, cfg));
  if (csv1 != csv2) return {false, "sweep CSV differs between identical runs"};

  const Graph h = generate_sbm(90, 3, 0.6, 0.02, 5);
  SketchParams p;
  p.k = 3;
  p.s = 8;
  p.t = 10;
  p.r_init = p.r_query = 400;
  p.m_init = p.m_query = 20;
  p.reps = 3;
  p.seed = 33;
  QueryCounter ctr;
  const ConstructResult r1 = construct_oracle(h, p, 9, 0.012, ctr);
  const ConstructResult r2 = construct_oracle(h, p, 9, 0.012, ctr);
  if (!r1.ok() || !r2.ok()) return {false, "pinned construction declined"};
  uint64_t walks1 = 0, walks2 = 0;
  for (uint32_t v = 0; v < h.n(); ++v) {
    QueryCounter c1, c2, c3;
    const MembershipAnswer a1 = which_cluster(h, *r1.state, v, c1);
    const MembershipAnswer a2 = which_cluster(h, *r1.state, v, c2);
    const MembershipAnswer a3 = which_cluster(h, *r2.state, v, c3);
    walks1 = c1.walks_started;
    walks2 = c2.walks_started;
    if (a1.kind != a2.kind || a1.index != a2.index ||
        c1.walks_started != c2.walks_started)
      return {false, fmt("repeated query on vertex %u differs", v)};
    if (a1.kind != a3.kind || a1.index != a3.index)
      return {false, fmt("rebuilt oracle answers vertex %u differently", v)};
  }
  (void)walks2;
  return {true, fmt("sweep CSV byte-identical (%zu bytes) and all %u "
                    "membership answers identical across repeats and a "
                    "rebuild (%llu walks per query)",
                    csv1.size(), h.n(),
                    static_cast<unsigned long long>(walks1))};
}

// ---------------------------------------------------------------------------
// c9: shallow-horizon mixing. On a random 3-regular n = 256 expander the
// exact lazy-walk distribution at t = 10*log2(n) = 80 must be within 1e-4
// total variation of uniform for 10 random starts. The lazy walk on a
// 3-regular graph contracts by at most ~0.97 per step (no 3-regular graph
// has a smaller nontrivial adjacency eigenvalue than ~2*sqrt(2)), so this
// horizon is structurally too shallow; the measured distance is reported
// as-is, and the deep-horizon behavior (TV ~ 1e-7 at t = 500) is pinned by a
// unit test.
Outcome c9_mixing() {
  const Graph g = generate_regular_expander(256, 3, 9);
  const std::vector<double> uniform(256, 1.0 / 256);
  Rng pick(derive_seed(77, "mix", {}));
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const uint32_t x = pick.next_below(256);
    worst = std::max(
        worst, tv_distance(exact_walk_distribution(g, x, 80), uniform));
  }
  return {worst <= 1e-4,
          fmt("max TV(walk^80 from x, uniform) over 10 starts = %.3e "
              "(need <= 1e-4; t = 80 is 10*log2 n)",
              worst)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance c1..c9\n");
    return 2;
  }
  const std::string which = argv[1];
  Outcome outcome;
  if (which == "c1")
    outcome = c1_unbiasedness();
  else if (which == "c2")
    outcome = c2_memory_contract();
  else if (which == "c3")
    outcome = c3_gram_convergence();
  else if (which == "c4")
    outcome = c4_distinguisher();
  else if (which == "c5")
    outcome = c5_benchmark_scale();
  else if (which == "c6")
    outcome = c6_tradeoff_frontier();
  else if (which == "c7")
    outcome = c7_exact_pipeline();
  else if (which == "c8")
    outcome = c8_determinism();
  else if (which == "c9")
    outcome = c9_mixing();
  else {
    std::fprintf(stderr, "unknown criterion %s (expected c1..c9)\n",
                 which.c_str());
    return 2;
  }
  std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", which.c_str(),
              outcome.detail.c_str());
  return outcome.pass ? 0 : 1;
}
