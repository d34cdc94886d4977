#pragma once

#include <string>

#include "oracle.hpp"
#include "sketch.hpp"

namespace sco {

// Text serialization for the dot-product sketch and the full oracle state,
// so build and query phases can run as separate processes. Doubles are
// written with 17 significant digits, which round-trips every finite value
// bit for bit; loading a dump therefore reproduces identical query answers.
// Malformed or truncated input raises std::runtime_error.

std::string sketch_to_text(const OracleSketch& sketch);
OracleSketch sketch_from_text(const std::string& text);
void save_sketch(const OracleSketch& sketch, const std::string& path);
OracleSketch load_sketch(const std::string& path);

std::string state_to_text(const ClusterOracleState& state);
ClusterOracleState state_from_text(const std::string& text);
void save_state(const ClusterOracleState& state, const std::string& path);
ClusterOracleState load_state(const std::string& path);

}  // namespace sco
