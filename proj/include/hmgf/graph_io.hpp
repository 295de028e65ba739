#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hmgf/graph.hpp"

namespace hmgf {

// Line-oriented graph format:
//
//   # comment
//   F <u> <v>        friend edge
//   P <u> <v> <w>    potential edge, w in (0,1]
//
// Vertex tokens are arbitrary non-whitespace strings, indexed in first-seen
// order. A token starting with '#' after a complete record begins a trailing
// comment. Errors are reported as GraphError carrying the line number.
HeteroGraph parse_graph(std::istream& in);
HeteroGraph parse_graph(std::string_view text);
HeteroGraph read_graph_file(const std::filesystem::path& path);

// Writes F records, then P records, each sorted by their (lexicographically
// ordered) endpoint labels, so parse/write round-trips are byte-stable.
// Vertices without any edge have no record and are not written.
void write_graph(const HeteroGraph& g, std::ostream& out);
std::string write_graph(const HeteroGraph& g);
void write_graph_file(const HeteroGraph& g, const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `w`.
std::string format_weight(double w);

}  // namespace hmgf
