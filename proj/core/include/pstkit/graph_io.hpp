#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pstkit/graph.hpp"

namespace pst {

// Line-oriented text format:
//
//   pstgraph 1
//   n <count>
//   label <i> <string>        (optional, any number)
//   edge <u> <v> <weight>     (u <= v when written; u == v is a loop)
//
// Weights are written with 17 significant digits so a write/read cycle is
// lossless. Blank lines and lines starting with '#' are ignored on input.

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

Graph read_graph_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form of `x` (printf "%.17g").
std::string format_real(double x);

}  // namespace pst
