// Command-line front end for the clustering-oracle shared library.
// Talks to the library exclusively through the C API in scoracle.h.
//
// Exit codes: 0 success, 2 when oracle construction declines the graph,
// 1 for usage errors and any other failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scoracle.h"

namespace {

struct GraphHandle {
  sco_graph* g = nullptr;
  ~GraphHandle() { sco_graph_free(g); }
};

struct StateHandle {
  sco_state* st = nullptr;
  ~StateHandle() { sco_state_free(st); }
};

// Print the library's error message and translate its code to an exit code.
int report(int rc) {
  std::fprintf(stderr, "error: %s\n", sco_last_error());
  return rc == SCO_EFAIL ? 2 : 1;
}

int load_graph(const std::string& path, GraphHandle& h) {
  return sco_graph_load(path.c_str(), &h.g);
}

// Mirrors the library defaults for the distinguisher: walk length
// 20*ceil(log2 n), 4*log2 n landmarks, and R chosen so R*M = 4n.
uint32_t auto_distinguish_t(uint32_t n) {
  uint32_t bits = 0;
  while ((1ull << bits) < n) ++bits;
  return bits == 0 ? 1 : 20 * bits;
}

uint32_t auto_distinguish_s(uint32_t n) {
  if (n <= 1) return 1;
  const auto s =
      static_cast<uint32_t>(std::ceil(4.0 * std::log2(static_cast<double>(n))));
  return s == 0 ? 1 : s;
}

int write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral clustering oracle experiments"};
  app.require_subcommand(1);

  // ---- gen-sbm ----------------------------------------------------------
  struct {
    uint32_t n = 0, k = 0;
    double p = 0.0, q = 0.0;
    uint64_t seed = 0;
    std::string out;
  } sbm;
  CLI::App* cmd_sbm = app.add_subcommand(
      "gen-sbm", "generate a stochastic block model graph with ground truth");
  cmd_sbm->add_option("--n", sbm.n, "vertex count")->required();
  cmd_sbm->add_option("--k", sbm.k, "cluster count (divides n)")->required();
  cmd_sbm->add_option("--p", sbm.p, "intra-cluster edge probability")
      ->required();
  cmd_sbm->add_option("--q", sbm.q, "inter-cluster edge probability")
      ->required();
  cmd_sbm->add_option("--seed", sbm.seed, "generator seed");
  cmd_sbm->add_option("--out", sbm.out, "output graph file")->required();

  // ---- gen-expander -----------------------------------------------------
  struct {
    uint32_t n = 0, d = 0, copies = 1;
    uint64_t seed = 0;
    std::string out;
  } expander;
  CLI::App* cmd_exp = app.add_subcommand(
      "gen-expander",
      "generate disjoint copies of a random d-regular expander");
  cmd_exp->add_option("--n", expander.n, "vertices per copy")->required();
  cmd_exp->add_option("--d", expander.d, "degree")->required();
  cmd_exp->add_option("--seed", expander.seed, "generator seed");
  cmd_exp->add_option("--copies", expander.copies,
                      "number of disjoint copies (default 1)");
  cmd_exp->add_option("--out", expander.out, "output graph file")->required();

  // ---- build-oracle -----------------------------------------------------
  struct {
    std::string graph, out_state;
    uint32_t k = 0, s_cluster = 0;
    double theta = 0.0;
    sco_params p;
    uint64_t r = 0;
    uint32_t m = 0;
  } build;
  sco_params_default(&build.p);
  CLI::App* cmd_build = app.add_subcommand(
      "build-oracle", "construct a cluster-membership oracle state file");
  cmd_build->add_option("--graph", build.graph, "input graph file")
      ->required();
  cmd_build->add_option("--k", build.k, "cluster count")->required();
  cmd_build->add_option("--theta", build.theta, "similarity threshold")
      ->required();
  cmd_build->add_option("--s-cluster", build.s_cluster,
                        "sample size for the similarity graph")
      ->required();
  cmd_build->add_option("--m", build.m, "batch size M (init and query)");
  cmd_build->add_option("--r", build.r, "walks per endpoint R (init and query)");
  cmd_build->add_option("--s", build.p.s, "landmark count");
  cmd_build->add_option("--t", build.p.t, "walk length");
  cmd_build->add_option("--reps", build.p.reps, "median repetitions");
  cmd_build->add_option("--xi", build.p.xi, "accuracy parameter");
  cmd_build->add_option("--seed", build.p.seed, "master seed");
  cmd_build->add_option("--out-state", build.out_state, "output state file")
      ->required();

  // ---- query ------------------------------------------------------------
  struct {
    std::string graph, state;
    std::vector<uint32_t> vertices;
  } query;
  CLI::App* cmd_query = app.add_subcommand(
      "query", "answer cluster-membership queries; prints vertex,label,walks_used");
  cmd_query->add_option("--graph", query.graph, "graph the state was built on")
      ->required();
  cmd_query->add_option("--state", query.state, "oracle state file")
      ->required();
  cmd_query
      ->add_option("--vertex", query.vertices, "vertex to classify (repeatable)")
      ->required();

  // ---- label-all --------------------------------------------------------
  struct {
    std::string graph, state, out;
  } label;
  CLI::App* cmd_label = app.add_subcommand(
      "label-all", "classify every vertex and write a vertex,label CSV");
  cmd_label->add_option("--graph", label.graph, "graph the state was built on")
      ->required();
  cmd_label->add_option("--state", label.state, "oracle state file")
      ->required();
  cmd_label->add_option("--out", label.out, "output CSV file ('-' = stdout)")
      ->required();

  // ---- distinguish ------------------------------------------------------
  struct {
    std::string graph;
    uint32_t m = 0, t = 0, s = 0, reps = 3;
    uint64_t r = 0, seed = 0;
  } dist;
  CLI::App* cmd_dist = app.add_subcommand(
      "distinguish",
      "one-cluster vs two-cluster test; prints verdict,v2sq,walks,words");
  cmd_dist->add_option("--graph", dist.graph, "input graph file")->required();
  cmd_dist->add_option("--m", dist.m, "batch size M")->required();
  cmd_dist->add_option("--t", dist.t, "walk length (0 = 20*ceil(log2 n))");
  cmd_dist->add_option("--r", dist.r, "walks per endpoint (0 = ceil(4n/M))");
  cmd_dist->add_option("--s", dist.s, "landmark count (0 = ceil(4*log2 n))");
  cmd_dist->add_option("--reps", dist.reps, "median repetitions");
  cmd_dist->add_option("--seed", dist.seed, "seed");

  // ---- sweep ------------------------------------------------------------
  struct {
    std::string graph, out = "-";
    std::vector<uint32_t> ms;
    std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
    uint64_t budget = 6400;
    uint32_t s_cluster = 0;
    double theta = 0.0;
    sco_params base;
    bool timing = false;
  } sweep;
  sco_params_default(&sweep.base);
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "space/time trade-off sweep at fixed R*M budget; emits CSV");
  cmd_sweep->add_option("--graph", sweep.graph, "input graph file")
      ->required();
  cmd_sweep->add_option("--k", sweep.base.k, "cluster count")->required();
  cmd_sweep
      ->add_option("--m", sweep.ms, "batch size M (repeat for each grid point)")
      ->required();
  cmd_sweep->add_option("--budget", sweep.budget, "R*M walk budget per entry");
  cmd_sweep->add_option("--theta", sweep.theta, "similarity threshold")
      ->required();
  cmd_sweep->add_option("--s-cluster", sweep.s_cluster,
                        "sample size for the similarity graph")
      ->required();
  cmd_sweep->add_option("--seeds", sweep.seeds,
                        "per-run seed labels (default 1..5)");
  cmd_sweep->add_option("--s", sweep.base.s, "landmark count");
  cmd_sweep->add_option("--t", sweep.base.t, "walk length");
  cmd_sweep->add_option("--reps", sweep.base.reps, "median repetitions");
  cmd_sweep->add_option("--xi", sweep.base.xi, "accuracy parameter");
  cmd_sweep->add_option("--seed", sweep.base.seed, "master seed");
  cmd_sweep->add_flag("--timing", sweep.timing,
                      "record wall time (breaks byte determinism)");
  cmd_sweep->add_option("--out", sweep.out, "output CSV file ('-' = stdout)");

  // ---- exact-dot --------------------------------------------------------
  struct {
    std::string graph;
    uint32_t k = 0, x = 0, y = 0;
  } edot;
  CLI::App* cmd_edot = app.add_subcommand(
      "exact-dot", "dense-reference spectral dot product of two vertices");
  cmd_edot->add_option("--graph", edot.graph, "input graph file")->required();
  cmd_edot->add_option("--k", edot.k, "embedding rank")->required();
  cmd_edot->add_option("--x", edot.x, "first vertex")->required();
  cmd_edot->add_option("--y", edot.y, "second vertex")->required();

  // ---- exact-collision --------------------------------------------------
  struct {
    std::string graph;
    uint32_t x = 0, y = 0, t = 0;
  } ecol;
  CLI::App* cmd_ecol = app.add_subcommand(
      "exact-collision", "dense-reference t-step walk collision probability");
  cmd_ecol->add_option("--graph", ecol.graph, "input graph file")->required();
  cmd_ecol->add_option("--x", ecol.x, "first vertex")->required();
  cmd_ecol->add_option("--y", ecol.y, "second vertex")->required();
  cmd_ecol->add_option("--t", ecol.t, "walk length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors exit 1; --help exits 0
  }

  if (cmd_sbm->parsed()) {
    GraphHandle g;
    if (int rc = sco_graph_gen_sbm(sbm.n, sbm.k, sbm.p, sbm.q, sbm.seed, &g.g))
      return report(rc);
    if (int rc = sco_graph_save(g.g, sbm.out.c_str())) return report(rc);
    return 0;
  }

  if (cmd_exp->parsed()) {
    GraphHandle g;
    if (int rc = sco_graph_gen_expander(expander.n, expander.d, expander.seed,
                                        expander.copies, &g.g))
      return report(rc);
    if (int rc = sco_graph_save(g.g, expander.out.c_str())) return report(rc);
    return 0;
  }

  if (cmd_build->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(build.graph, g)) return report(rc);
    sco_params p = build.p;
    p.k = build.k;
    if (build.m != 0) p.m_init = p.m_query = build.m;
    if (build.r != 0) p.r_init = p.r_query = build.r;
    StateHandle st;
    if (int rc =
            sco_build_state(g.g, &p, build.s_cluster, build.theta, &st.st))
      return report(rc);
    if (int rc = sco_state_save(st.st, build.out_state.c_str()))
      return report(rc);
    return 0;
  }

  if (cmd_query->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(query.graph, g)) return report(rc);
    StateHandle st;
    if (int rc = sco_state_load(query.state.c_str(), &st.st))
      return report(rc);
    for (uint32_t v : query.vertices) {
      uint32_t lbl = 0;
      uint64_t walks = 0;
      if (int rc = sco_which_cluster(g.g, st.st, v, &lbl, nullptr, &walks))
        return report(rc);
      std::printf("%u,%u,%llu\n", v, lbl,
                  static_cast<unsigned long long>(walks));
    }
    return 0;
  }

  if (cmd_label->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(label.graph, g)) return report(rc);
    StateHandle st;
    if (int rc = sco_state_load(label.state.c_str(), &st.st))
      return report(rc);
    uint32_t n = 0;
    if (int rc = sco_graph_info(g.g, &n, nullptr, nullptr, nullptr))
      return report(rc);
    std::vector<uint32_t> labels(n);
    if (int rc = sco_label_all(g.g, st.st, labels.data(), nullptr))
      return report(rc);
    std::string csv = "vertex,label\n";
    char row[64];
    for (uint32_t v = 0; v < n; ++v) {
      std::snprintf(row, sizeof row, "%u,%u\n", v, labels[v]);
      csv += row;
    }
    return write_text(label.out, csv);
  }

  if (cmd_dist->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(dist.graph, g)) return report(rc);
    uint32_t n = 0;
    if (int rc = sco_graph_info(g.g, &n, nullptr, nullptr, nullptr))
      return report(rc);
    if (dist.m == 0) {
      std::fprintf(stderr, "error: --m must be positive\n");
      return 1;
    }
    const uint32_t t = dist.t ? dist.t : auto_distinguish_t(n);
    const uint32_t s = dist.s ? dist.s : auto_distinguish_s(n);
    const uint64_t r = dist.r ? dist.r : (4ull * n + dist.m - 1) / dist.m;
    int verdict = 0;
    double v2sq = 0.0;
    uint64_t walks = 0, words = 0;
    if (int rc = sco_distinguish(g.g, dist.m, t, r, s, dist.reps, dist.seed,
                                 &verdict, &v2sq, &walks, &words))
      return report(rc);
    std::printf("%d,%.9g,%llu,%llu\n", verdict, v2sq,
                static_cast<unsigned long long>(walks),
                static_cast<unsigned long long>(words));
    return 0;
  }

  if (cmd_sweep->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(sweep.graph, g)) return report(rc);
    char* csv = nullptr;
    if (int rc = sco_sweep_csv(g.g, &sweep.base, sweep.budget, sweep.ms.data(),
                               sweep.ms.size(), sweep.s_cluster, sweep.theta,
                               sweep.seeds.data(), sweep.seeds.size(),
                               sweep.timing ? 1 : 0, &csv))
      return report(rc);
    const std::string text(csv);
    sco_string_free(csv);
    return write_text(sweep.out, text);
  }

  if (cmd_edot->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(edot.graph, g)) return report(rc);
    double value = 0.0;
    int degenerate = 0;
    if (int rc =
            sco_exact_dot(g.g, edot.k, edot.x, edot.y, &value, &degenerate))
      return report(rc);
    if (degenerate)
      std::fprintf(stderr,
                   "warning: k-th spectral gap is degenerate; value depends "
                   "on eigenvector basis choice\n");
    std::printf("%.17g\n", value);
    return 0;
  }

  if (cmd_ecol->parsed()) {
    GraphHandle g;
    if (int rc = load_graph(ecol.graph, g)) return report(rc);
    double value = 0.0;
    if (int rc = sco_exact_collision(g.g, ecol.x, ecol.y, ecol.t, &value))
      return report(rc);
    std::printf("%.17g\n", value);
    return 0;
  }

  return 1;  // unreachable: require_subcommand(1) guarantees one branch
}
