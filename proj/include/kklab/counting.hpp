#pragma once

#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <span>
#include <utility>
#include <vector>

namespace kklab {

struct CountOptions {
    /// Search-tree nodes allowed before ResourceGuardError.
    std::uint64_t node_budget = 4'000'000'000ULL;
};

/// Ñ(G,J): injections V(J) -> V(G) taking edges to edges. Backtracks over
/// J in BFS order from a maximum-degree root, intersecting neighbour
/// bitsets and pruning by degree; parallel over the root's image.
BigInt count_labeled(const Graph & host, const Graph & pattern, const CountOptions & opts = {});

/// N(G,J) = Ñ(G,J) / aut(J). Requires v_J >= 1.
BigInt count_copies(const Graph & host, const Graph & pattern, const CountOptions & opts = {});

/// Calls visit(map) for each labeled copy, map[pattern vertex] = host
/// vertex; stops early when visit returns false. Sequential.
void for_each_embedding(const Graph & host, const Graph & pattern,
                        const std::function<bool(std::span<const Vertex>)> & visit, const CountOptions & opts = {});

/// One copy as a subgraph of the host.
struct Copy {
    std::vector<Vertex> vertices;    // sorted
    std::vector<std::size_t> edges;  // sorted indices into host.edges()
    std::vector<Vertex> embedding;   // one labeled copy realizing it

    friend bool operator<(const Copy & a, const Copy & b)
    {
        return std::tie(a.edges, a.vertices) < std::tie(b.edges, b.vertices);
    }
};

/// Distinct copies of J in G, sorted. Throws ResourceGuardError beyond `copy_cap`.
std::vector<Copy> enumerate_copies(const Graph & host, const Graph & pattern, std::size_t copy_cap = 200000,
                                   const CountOptions & opts = {});

/// N(H, K_r) via degeneracy ordering and forward-neighbourhood intersection.
BigInt count_cliques(const Graph & host, std::size_t r);

/// N(H, C_k): DFS from each vertex s as the cycle minimum through larger
/// vertices only; a closed path is counted when its second vertex is
/// smaller than its last, which fixes one of the two orientations.
BigInt count_cycles(const Graph & host, std::size_t k, const CountOptions & opts = {});

/// Number of simple paths with exactly `length` edges from x to y.
BigInt count_xy_paths(const Graph & host, Vertex x, Vertex y, std::size_t length, const CountOptions & opts = {});

struct GammaResult {
    BigInt value;
    /// Lexicographically smallest maximizing pair; absent when v_H < 2.
    std::optional<std::pair<Vertex, Vertex>> pair;
};

/// max over x != y of count_xy_paths(H, x, y, length).
GammaResult gamma(const Graph & host, std::size_t length, const CountOptions & opts = {});

enum class PackingMode { exact, greedy };

struct PackingOptions {
    std::size_t copy_cap = 20000;
    std::uint64_t node_budget = 50'000'000ULL;
};

struct PackingResult {
    std::size_t value = 0;
    /// Indices into the sorted copy list of one optimal (or greedy) packing.
    std::vector<Copy> chosen;
};

/// ν(H,J): largest edge-disjoint family of copies. Exact mode branches on
/// the smallest usable edge (use it in some copy, or discard it) with the
/// bound count + free_edges / e_J; greedy mode scans copies in order.
PackingResult packing(const Graph & host, const Graph & pattern, PackingMode mode, const PackingOptions & opts = {});

inline BigInt packing_number(const Graph & host, const Graph & pattern, PackingMode mode,
                             const PackingOptions & opts = {})
{
    return static_cast<unsigned long>(packing(host, pattern, mode, opts).value);
}

} // namespace kklab
