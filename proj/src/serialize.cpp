#include "serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sco {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_u64(std::string& out, uint64_t v) {
  out += std::to_string(v);
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw std::runtime_error("malformed oracle dump: " + what);
}

void expect(std::istream& in, const char* token) {
  std::string got;
  if (!(in >> got) || got != token)
    parse_fail("expected '" + std::string(token) + "', got '" + got + "'");
}

uint64_t read_u64(std::istream& in, const char* what) {
  uint64_t v = 0;
  if (!(in >> v)) parse_fail(std::string("bad integer for ") + what);
  return v;
}

uint32_t read_u32(std::istream& in, const char* what) {
  const uint64_t v = read_u64(in, what);
  if (v > UINT32_MAX) parse_fail(std::string("out-of-range ") + what);
  return static_cast<uint32_t>(v);
}

double read_double(std::istream& in, const char* what) {
  double v = 0.0;
  if (!(in >> v)) parse_fail(std::string("bad number for ") + what);
  return v;
}

void write_sketch_block(std::string& out, const OracleSketch& sketch) {
  const SketchParams& p = sketch.params;
  out += "scoracle-sketch v1\nparams ";
  append_u64(out, p.k);
  out += ' ';
  append_double(out, p.xi);
  out += ' ';
  append_u64(out, p.t);
  out += ' ';
  append_u64(out, p.s);
  out += ' ';
  append_u64(out, p.r_init);
  out += ' ';
  append_u64(out, p.m_init);
  out += ' ';
  append_u64(out, p.r_query);
  out += ' ';
  append_u64(out, p.m_query);
  out += ' ';
  append_u64(out, p.reps);
  out += ' ';
  append_u64(out, p.seed);
  out += "\nlandmarks";
  for (uint32_t v : sketch.landmarks) {
    out += ' ';
    append_u64(out, v);
  }
  out += "\npsi\n";
  for (Eigen::Index i = 0; i < sketch.psi.rows(); ++i) {
    for (Eigen::Index j = 0; j < sketch.psi.cols(); ++j) {
      if (j) out += ' ';
      append_double(out, sketch.psi(i, j));
    }
    out += '\n';
  }
  out += "peak ";
  append_u64(out, sketch.peak_build_words);
  out += "\nend-sketch\n";
}

OracleSketch read_sketch_block(std::istream& in) {
  expect(in, "scoracle-sketch");
  expect(in, "v1");
  expect(in, "params");
  OracleSketch sketch;
  SketchParams& p = sketch.params;
  p.k = read_u32(in, "k");
  p.xi = read_double(in, "xi");
  p.t = read_u32(in, "t");
  p.s = read_u32(in, "s");
  p.r_init = read_u64(in, "r_init");
  p.m_init = read_u32(in, "m_init");
  p.r_query = read_u64(in, "r_query");
  p.m_query = read_u32(in, "m_query");
  p.reps = read_u32(in, "reps");
  p.seed = read_u64(in, "seed");
  expect(in, "landmarks");
  sketch.landmarks.resize(p.s);
  for (uint32_t& v : sketch.landmarks) v = read_u32(in, "landmark id");
  expect(in, "psi");
  sketch.psi.resize(p.s, p.s);
  for (uint32_t i = 0; i < p.s; ++i)
    for (uint32_t j = 0; j < p.s; ++j)
      sketch.psi(i, j) = read_double(in, "psi entry");
  expect(in, "peak");
  sketch.peak_build_words = read_u64(in, "peak");
  expect(in, "end-sketch");
  return sketch;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace

std::string sketch_to_text(const OracleSketch& sketch) {
  std::string out;
  write_sketch_block(out, sketch);
  return out;
}

OracleSketch sketch_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_sketch_block(in);
}

void save_sketch(const OracleSketch& sketch, const std::string& path) {
  write_file(path, sketch_to_text(sketch));
}

OracleSketch load_sketch(const std::string& path) {
  return sketch_from_text(read_file(path));
}

std::string state_to_text(const ClusterOracleState& state) {
  std::string out = "scoracle-state v1\n";
  write_sketch_block(out, state.sketch);

  out += "sample ";
  append_u64(out, state.sample.size());
  for (uint32_t v : state.sample) {
    out += ' ';
    append_u64(out, v);
  }
  out += "\nalphas\n";
  for (const Eigen::VectorXd& a : state.sample_alphas) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (i) out += ' ';
      append_double(out, a(i));
    }
    out += '\n';
  }
  out += "edges ";
  append_u64(out, state.similarity.edges.size());
  out += '\n';
  for (const auto& [a, b] : state.similarity.edges) {
    append_u64(out, a);
    out += ' ';
    append_u64(out, b);
    out += '\n';
  }
  out += "labels";
  for (uint32_t v : state.similarity.labels) {
    out += ' ';
    append_u64(out, v);
  }
  out += "\ncomponents ";
  append_u64(out, state.similarity.components);
  out += "\ntheta ";
  append_double(out, state.theta);
  out += "\nk ";
  append_u64(out, state.k);
  out += "\nseed ";
  append_u64(out, state.seed);
  out += "\nexact ";
  out += state.exact ? '1' : '0';
  out += '\n';
  if (state.exact) {
    out += "dists ";
    append_u64(out,
               state.exact_landmark_dists.empty()
                   ? 0
                   : state.exact_landmark_dists.front().size());
    out += '\n';
    for (const std::vector<double>& dist : state.exact_landmark_dists) {
      for (size_t i = 0; i < dist.size(); ++i) {
        if (i) out += ' ';
        append_double(out, dist[i]);
      }
      out += '\n';
    }
  }
  out += "peak ";
  append_u64(out, state.peak_build_words);
  out += "\nend-state\n";
  return out;
}

ClusterOracleState state_from_text(const std::string& text) {
  std::istringstream in(text);
  expect(in, "scoracle-state");
  expect(in, "v1");
  ClusterOracleState state;
  state.sketch = read_sketch_block(in);
  const uint32_t s = state.sketch.params.s;

  expect(in, "sample");
  const uint64_t sc = read_u64(in, "sample size");
  state.sample.resize(sc);
  for (uint32_t& v : state.sample) v = read_u32(in, "sample id");
  expect(in, "alphas");
  state.sample_alphas.resize(sc);
  for (Eigen::VectorXd& a : state.sample_alphas) {
    a.resize(s);
    for (uint32_t i = 0; i < s; ++i) a(i) = read_double(in, "alpha entry");
  }
  expect(in, "edges");
  const uint64_t n_edges = read_u64(in, "edge count");
  state.similarity.edges.resize(n_edges);
  for (auto& [a, b] : state.similarity.edges) {
    a = read_u32(in, "edge endpoint");
    b = read_u32(in, "edge endpoint");
    if (a >= b || b >= sc) parse_fail("edge endpoints out of order or range");
  }
  expect(in, "labels");
  state.similarity.labels.resize(sc);
  for (uint32_t& v : state.similarity.labels) v = read_u32(in, "label");
  expect(in, "components");
  state.similarity.components = read_u32(in, "components");
  expect(in, "theta");
  state.theta = read_double(in, "theta");
  expect(in, "k");
  state.k = read_u32(in, "k");
  expect(in, "seed");
  state.seed = read_u64(in, "seed");
  expect(in, "exact");
  const uint64_t exact_flag = read_u64(in, "exact flag");
  if (exact_flag > 1) parse_fail("exact flag must be 0 or 1");
  state.exact = exact_flag == 1;
  if (state.exact) {
    expect(in, "dists");
    const uint64_t n = read_u64(in, "dist length");
    state.exact_landmark_dists.assign(s, std::vector<double>(n));
    for (std::vector<double>& dist : state.exact_landmark_dists)
      for (double& v : dist) v = read_double(in, "dist entry");
  }
  expect(in, "peak");
  state.peak_build_words = read_u64(in, "peak");
  expect(in, "end-state");
  return state;
}

void save_state(const ClusterOracleState& state, const std::string& path) {
  write_file(path, state_to_text(state));
}

ClusterOracleState load_state(const std::string& path) {
  return state_from_text(read_file(path));
}

}  // namespace sco
