#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library kernels they check.

#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using kklab::Graph;
using kklab::Vertex;

/// Permutations of V(g) that preserve adjacency, by trying all v! of them.
inline std::uint64_t automorphisms(const Graph & g)
{
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (const auto & e : g.edges())
            if (! g.adjacent(perm[e.u], perm[e.v])) {
                ok = false;
                break;
            }
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// Injections V(pattern) -> V(host) preserving edges, by odometer over all
/// k-tuples of host vertices.
inline std::uint64_t labeled_copies(const Graph & host, const Graph & pattern)
{
    const std::size_t k = pattern.order(), n = host.order();
    if (k > n)
        return 0;
    std::vector<Vertex> map(k, 0);
    std::uint64_t count = 0;
    while (true) {
        bool injective = true;
        for (std::size_t i = 0; i < k && injective; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (map[i] == map[j]) {
                    injective = false;
                    break;
                }
        if (injective) {
            bool ok = true;
            for (const auto & e : pattern.edges())
                if (! host.adjacent(map[e.u], map[e.v])) {
                    ok = false;
                    break;
                }
            count += ok;
        }
        std::size_t i = 0;
        while (i < k && ++map[i] == n)
            map[i++] = 0;
        if (i == k)
            break;
    }
    return count;
}

/// Maximum e(U)/|U| over nonempty vertex subsets, as (edges, vertices).
inline std::pair<std::size_t, std::size_t> max_density(const Graph & g)
{
    std::pair<std::size_t, std::size_t> best{0, 1};
    for (std::uint32_t mask = 1; mask < (1U << g.order()); ++mask) {
        std::size_t e = 0;
        for (const auto & ed : g.edges())
            if ((mask >> ed.u & 1U) && (mask >> ed.v & 1U))
                ++e;
        std::size_t v = static_cast<std::size_t>(std::popcount(mask));
        if (e * best.second > best.first * v)
            best = {e, v};
    }
    return best;
}

/// Every graph on n labeled vertices (n <= 6), one per edge subset.
inline std::vector<Graph> all_labeled_graphs(std::size_t n)
{
    std::vector<kklab::Edge> pairs;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            pairs.push_back({a, b});
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<kklab::Edge> es;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1U)
                es.push_back(pairs[i]);
        out.push_back(Graph::from_edges(n, es));
    }
    return out;
}

/// Deterministic pseudo-random graph for property tests.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    std::vector<kklab::Edge> es;
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL + 1;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            if (static_cast<double>(s >> 11) * 0x1.0p-53 < p)
                es.push_back({a, b});
        }
    return Graph::from_edges(n, es);
}

/// Deterministic random tree: vertex v attaches to an earlier vertex whose
/// degree is still below max_degree.
inline Graph random_tree(std::size_t vertices, std::size_t max_degree, std::uint64_t seed)
{
    std::vector<kklab::Edge> es;
    std::vector<std::size_t> deg(vertices, 0);
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL + 7;
    for (Vertex v = 1; v < vertices; ++v) {
        while (true) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            Vertex p = static_cast<Vertex>(s % v);
            if (deg[p] < max_degree) {
                ++deg[p];
                ++deg[v];
                es.push_back({p, v});
                break;
            }
        }
    }
    return Graph::from_edges(vertices, es);
}

} // namespace oracle
