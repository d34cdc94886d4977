#include "scoracle.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "bench.hpp"
#include "distinguish.hpp"
#include "exact.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "sketch.hpp"
#include "walks.hpp"

struct sco_graph {
  sco::Graph g;
};

struct sco_state {
  sco::ClusterOracleState st;
};

namespace {

thread_local std::string t_error;

int set_error(int code, std::string msg) {
  t_error = std::move(msg);
  return code;
}

// Runs the body, translating C++ failures into status codes + messages.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    return set_error(SCO_EINVAL, e.what());
  } catch (const std::out_of_range& e) {
    return set_error(SCO_EINVAL, e.what());
  } catch (const std::runtime_error& e) {
    return set_error(SCO_EIO, e.what());
  } catch (const std::exception& e) {
    return set_error(SCO_EINTERNAL, e.what());
  }
}

int require(bool ok, const char* what) {
  return ok ? SCO_OK : set_error(SCO_EINVAL, what);
}

sco::SketchParams to_cpp(const sco_params& p) {
  sco::SketchParams out;
  out.k = p.k;
  out.xi = p.xi;
  out.t = p.t;
  out.s = p.s;
  out.r_init = p.r_init;
  out.m_init = p.m_init;
  out.r_query = p.r_query;
  out.m_query = p.m_query;
  out.reps = p.reps;
  out.seed = p.seed;
  return out;
}

// The state stores vertex ids; using it against a different (smaller) graph
// would walk from nonexistent vertices. Cheap containment check at the
// boundary.
int check_pairing(const sco::Graph& g, const sco::ClusterOracleState& st) {
  uint32_t max_id = 0;
  for (uint32_t v : st.sketch.landmarks) max_id = std::max(max_id, v);
  for (uint32_t v : st.sample) max_id = std::max(max_id, v);
  if (max_id >= g.n())
    return set_error(SCO_EINVAL, "state references vertices beyond this graph");
  if (st.exact && !st.exact_landmark_dists.empty() &&
      st.exact_landmark_dists.front().size() != g.n())
    return set_error(SCO_EINVAL, "exact-mode state built for a different n");
  return SCO_OK;
}

}  // namespace

const char* sco_last_error(void) { return t_error.c_str(); }

void sco_set_threads(uint32_t n) { sco::set_thread_count(n); }

void sco_params_default(sco_params* params) {
  if (!params) return;
  const sco::SketchParams d;
  params->k = d.k;
  params->xi = d.xi;
  params->t = d.t;
  params->s = d.s;
  params->r_init = d.r_init;
  params->m_init = d.m_init;
  params->r_query = d.r_query;
  params->m_query = d.m_query;
  params->reps = d.reps;
  params->seed = d.seed;
}

int sco_graph_gen_sbm(uint32_t n, uint32_t k, double p, double q,
                      uint64_t seed, sco_graph** out) {
  if (int rc = require(out != nullptr, "null out-pointer")) return rc;
  return guarded([&]() -> int {
    *out = new sco_graph{sco::generate_sbm(n, k, p, q, seed)};
    return SCO_OK;
  });
}

int sco_graph_gen_expander(uint32_t n, uint32_t d, uint64_t seed,
                           uint32_t copies, sco_graph** out) {
  if (int rc = require(out != nullptr, "null out-pointer")) return rc;
  if (int rc = require(copies >= 1, "copies must be >= 1")) return rc;
  return guarded([&]() -> int {
    sco::Graph g =
        sco::generate_regular_expander(n, d, sco::derive_seed(seed, "copy", {0}));
    for (uint32_t i = 1; i < copies; ++i) {
      sco::Graph next = sco::generate_regular_expander(
          n, d, sco::derive_seed(seed, "copy", {i}));
      g = sco::disjoint_union(g, next);
    }
    *out = new sco_graph{std::move(g)};
    return SCO_OK;
  });
}

int sco_graph_load(const char* path, sco_graph** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&]() -> int {
    *out = new sco_graph{sco::load_graph(path)};
    return SCO_OK;
  });
}

int sco_graph_save(const sco_graph* g, const char* path) {
  if (int rc = require(g && path, "null argument")) return rc;
  return guarded([&]() -> int {
    sco::save_graph(g->g, path);
    return SCO_OK;
  });
}

void sco_graph_free(sco_graph* g) { delete g; }

int sco_graph_info(const sco_graph* g, uint32_t* n, uint64_t* m, uint32_t* k,
                   int* has_truth) {
  if (int rc = require(g != nullptr, "null graph")) return rc;
  if (n) *n = g->g.n();
  if (m) *m = g->g.edge_count();
  if (k) *k = g->g.k();
  if (has_truth) *has_truth = g->g.has_ground_truth() ? 1 : 0;
  return SCO_OK;
}

int sco_graph_truth(const sco_graph* g, uint32_t* labels_out) {
  if (int rc = require(g && labels_out, "null argument")) return rc;
  if (int rc = require(g->g.has_ground_truth(), "graph has no ground truth"))
    return rc;
  const std::vector<uint32_t>& truth = g->g.ground_truth();
  std::copy(truth.begin(), truth.end(), labels_out);
  return SCO_OK;
}

int sco_build_state(const sco_graph* g, const sco_params* params,
                    uint32_t s_cluster, double theta, sco_state** out) {
  if (int rc = require(g && params && out, "null argument")) return rc;
  return guarded([&]() -> int {
    sco::QueryCounter ctr;
    sco::ConstructResult built =
        sco::construct_oracle(g->g, to_cpp(*params), s_cluster, theta, ctr);
    if (!built.ok()) {
      using Reason = sco::ConstructFailure::Reason;
      if (built.failure.reason == Reason::init_failure)
        return set_error(
            SCO_EFAIL,
            "construction failed: sketch init found no usable k-th eigenvalue "
            "(got " +
                std::to_string(built.failure.init_failure.kth_eigenvalue) +
                ")");
      return set_error(
          SCO_EFAIL,
          "construction failed: similarity graph has " +
              std::to_string(built.failure.components_found) +
              " components, need " + std::to_string(params->k));
    }
    *out = new sco_state{std::move(*built.state)};
    return SCO_OK;
  });
}

int sco_state_save(const sco_state* state, const char* path) {
  if (int rc = require(state && path, "null argument")) return rc;
  return guarded([&]() -> int {
    sco::save_state(state->st, path);
    return SCO_OK;
  });
}

int sco_state_load(const char* path, sco_state** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&]() -> int {
    *out = new sco_state{sco::load_state(path)};
    return SCO_OK;
  });
}

void sco_state_free(sco_state* state) { delete state; }

int sco_state_stats(const sco_state* state, uint64_t* words,
                    uint64_t* peak_words, uint64_t* walks_per_query,
                    uint32_t* k, uint32_t* s_cluster) {
  if (int rc = require(state != nullptr, "null state")) return rc;
  const sco::ClusterOracleState& st = state->st;
  if (words) *words = st.measure_space_words();
  if (peak_words) *peak_words = st.peak_build_words;
  if (walks_per_query) {
    if (st.exact) {
      *walks_per_query = 0;
    } else {
      sco::WalkParams wp;
      wp.t = st.sketch.params.t;
      wp.r = st.sketch.params.r_query;
      wp.m = st.sketch.params.m_query;
      *walks_per_query = 2ull * st.sketch.params.s * st.sketch.params.reps *
                         wp.realized_r();
    }
  }
  if (k) *k = st.k;
  if (s_cluster) *s_cluster = static_cast<uint32_t>(st.sample.size());
  return SCO_OK;
}

int sco_which_cluster(const sco_graph* g, const sco_state* state,
                      uint32_t vertex, uint32_t* label, int* outlier,
                      uint64_t* walks_used) {
  if (int rc = require(g && state, "null argument")) return rc;
  if (int rc = require(vertex < g->g.n(), "vertex out of range")) return rc;
  if (int rc = check_pairing(g->g, state->st)) return rc;
  return guarded([&]() -> int {
    sco::QueryCounter ctr;
    const sco::MembershipAnswer ans =
        sco::which_cluster(g->g, state->st, vertex, ctr);
    if (label) *label = ans.index;
    if (outlier)
      *outlier =
          ans.kind == sco::MembershipAnswer::Kind::outlier_randomized ? 1 : 0;
    if (walks_used) *walks_used = ctr.walks_started;
    return SCO_OK;
  });
}

int sco_label_all(const sco_graph* g, const sco_state* state,
                  uint32_t* labels_out, uint64_t* walks_used) {
  if (int rc = require(g && state && labels_out, "null argument")) return rc;
  if (int rc = check_pairing(g->g, state->st)) return rc;
  return guarded([&]() -> int {
    sco::QueryCounter ctr;
    const std::vector<uint32_t> labels = sco::label_all(g->g, state->st, ctr);
    std::copy(labels.begin(), labels.end(), labels_out);
    if (walks_used) *walks_used = ctr.walks_started;
    return SCO_OK;
  });
}

int sco_accuracy(const uint32_t* pred, const uint32_t* truth, uint64_t len,
                 uint32_t k, double* out) {
  if (int rc = require(pred && truth && out, "null argument")) return rc;
  return guarded([&]() -> int {
    const std::vector<uint32_t> p(pred, pred + len);
    const std::vector<uint32_t> t(truth, truth + len);
    *out = sco::clustering_accuracy(p, t, k);
    return SCO_OK;
  });
}

int sco_distinguish(const sco_graph* g, uint32_t m, uint32_t t, uint64_t r,
                    uint32_t s, uint32_t reps, uint64_t seed, int* two_cluster,
                    double* v2_squared, uint64_t* walks_used,
                    uint64_t* words_peak) {
  if (int rc = require(g != nullptr, "null graph")) return rc;
  return guarded([&]() -> int {
    const sco::DistinguishVerdict v =
        sco::distinguish(g->g, m, t, r, s, reps, seed);
    if (two_cluster) *two_cluster = v.two_cluster ? 1 : 0;
    if (v2_squared) *v2_squared = v.v2_squared;
    if (walks_used) *walks_used = v.walks_used;
    if (words_peak) *words_peak = v.words_peak;
    return SCO_OK;
  });
}

int sco_sweep_csv(const sco_graph* g, const sco_params* base, uint64_t budget,
                  const uint32_t* ms, uint64_t n_ms, uint32_t s_cluster,
                  double theta, const uint64_t* seeds, uint64_t n_seeds,
                  int timing, char** csv_out) {
  if (int rc = require(g && base && ms && seeds && csv_out, "null argument"))
    return rc;
  return guarded([&]() -> int {
    sco::SweepConfig cfg;
    cfg.base = to_cpp(*base);
    cfg.budget = budget;
    cfg.ms.assign(ms, ms + n_ms);
    cfg.s_cluster = s_cluster;
    cfg.theta = theta;
    cfg.seeds.assign(seeds, seeds + n_seeds);
    cfg.timing = timing != 0;
    const std::string csv = sco::sweep_csv(sco::run_tradeoff_sweep(g->g, cfg));
    char* buf = static_cast<char*>(std::malloc(csv.size() + 1));
    if (!buf) return set_error(SCO_EINTERNAL, "out of memory");
    std::memcpy(buf, csv.c_str(), csv.size() + 1);
    *csv_out = buf;
    return SCO_OK;
  });
}

void sco_string_free(char* text) { std::free(text); }

int sco_exact_dot(const sco_graph* g, uint32_t k, uint32_t x, uint32_t y,
                  double* out, int* degenerate) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&]() -> int {
    const sco::ExactDot d = sco::exact_dot(g->g, k, x, y);
    *out = d.value;
    if (degenerate) *degenerate = d.degenerate ? 1 : 0;
    return SCO_OK;
  });
}

int sco_exact_collision(const sco_graph* g, uint32_t x, uint32_t y, uint32_t t,
                        double* out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&]() -> int {
    *out = sco::exact_collision(g->g, x, y, t);
    return SCO_OK;
  });
}
