#pragma once

#include <kklab/graph.hpp>

#include <string>
#include <string_view>

namespace kklab {

/// Header-free graph6. Errors report the byte offset.
Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph & g);

/// Lines "u v"; '#' starts a comment; an optional first line "n=<k>"
/// declares the vertex count (otherwise max id + 1). Errors report the line.
Graph parse_edge_list(std::string_view text);
/// Canonical edge ordering; emits "n=<k>" only when the vertex count is not
/// implied by the edges.
std::string to_edge_list(const Graph & g);

/// Dispatches on content: graph6 uses only bytes 63..126, while an edge list
/// always contains digits.
Graph parse_graph(std::string_view text);

/// Reads a file ("-" is stdin) and parses it with parse_graph.
Graph read_graph(const std::string & path);

} // namespace kklab
