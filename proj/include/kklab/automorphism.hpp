#pragma once

#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace kklab {

/// |Aut(J)| by orbit-stabilizer: each base vertex's orbit under the
/// pointwise stabilizer of the earlier base vertices is found with
/// individualization-refinement searches. The base is ordered by
/// (degree, sorted neighbour degrees, id).
BigInt automorphism_count(const Graph & g);

/// True iff v -> perm[v] maps edges onto edges.
bool is_automorphism(const Graph & g, std::span<const Vertex> perm);

/// A canonical relabeling: isomorphic graphs receive identical `graph`
/// and `key`. `labeling[v]` is the new name of vertex v.
struct CanonicalForm {
    Graph graph;
    std::vector<Vertex> labeling;
    /// Upper-triangle adjacency bits of `graph`, packed row-major.
    std::vector<std::uint64_t> key;
};

CanonicalForm canonical_form(const Graph & g);

} // namespace kklab
