#pragma once

// Small-graph catalogs by vertex augmentation: every graph on v vertices
// arises from one on v - 1 vertices plus a new vertex with some
// neighbourhood, and canonical forms remove the duplicates.

#include <kklab/graph.hpp>

#include <string>
#include <vector>

namespace kklab {

/// One representative (in canonical labeling) of each isomorphism class of
/// graphs on exactly v vertices, ordered by edge count, then canonical key.
/// Limited to v <= 9.
std::vector<Graph> graph_catalog(std::size_t v);

/// graph6 of the canonical form after dropping isolated vertices; equal
/// exactly for graphs that agree up to isomorphism and isolated vertices.
std::string canonical_signature(const Graph & g);

} // namespace kklab
