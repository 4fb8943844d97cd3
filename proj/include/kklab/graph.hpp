#pragma once

#include <kklab/vertex_set.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kklab {

/// Undirected edge, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge &) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on vertices 0..order()-1. Immutable once built;
/// the sorted edge list and the adjacency bitsets describe the same relation.
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count);

    /// Validates: endpoints in range, no loops, no repeated edges. Throws Error.
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }

    const std::vector<Edge> & edges() const noexcept { return edges_; }
    const VertexSet & neighbors(Vertex v) const { return adj_[v]; }
    bool adjacent(Vertex a, Vertex b) const { return adj_[a].test(b); }
    std::size_t degree(Vertex v) const { return adj_[v].count(); }
    std::size_t max_degree() const;
    std::size_t min_degree() const;
    std::vector<std::size_t> degrees() const;

    /// Position of edge {a,b} in edges(), if present.
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;

    /// Subgraph induced by `vertices`; vertex vertices[i] becomes i.
    Graph induced(std::span<const Vertex> vertices) const;

    /// Subgraph formed by the given edges (indices into edges()). With
    /// drop_isolated the vertex set is the spanned vertices, relabeled in
    /// increasing order; `vertex_map` then receives the old ids.
    Graph edge_subgraph(std::span<const std::size_t> edge_ids, bool drop_isolated,
                        std::vector<Vertex> * vertex_map = nullptr) const;

    Graph with_edge(Edge e) const;
    Graph without_edge(Edge e) const;

    /// New graph where vertex v is renamed to perm[v].
    Graph relabeled(std::span<const Vertex> perm) const;

    bool is_connected() const;
    bool is_tree() const { return n_ >= 1 && edges_.size() + 1 == n_ && is_connected(); }
    std::size_t isolated_count() const;

    friend bool operator==(const Graph & a, const Graph & b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

  private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> adj_;
};

/// Named graphs and parameterized families.
namespace families {

Graph empty(std::size_t n);
Graph complete(std::size_t n);
Graph cycle(std::size_t n);
/// Path with `edges` edges (edges + 1 vertices).
Graph path(std::size_t edges);
/// K_{1,leaves}; vertex 0 is the center.
Graph star(std::size_t leaves);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen();
/// Two triangles sharing vertex 2.
Graph bowtie();
Graph disjoint_union(const Graph & a, const Graph & b);
/// Disjoint union of cliques of the given sizes.
Graph clique_union(std::span<const std::size_t> sizes);
/// Two poles joined by `paths` internally disjoint paths of `length` edges.
Graph theta(std::size_t paths, std::size_t length);
/// Center vertex 0 with pendant paths of the given lengths.
Graph spider(std::span<const std::size_t> legs);
/// r-th power of the path on k vertices: i ~ j iff 0 < |i-j| <= r.
Graph path_power(std::size_t k, std::size_t r);

} // namespace families

} // namespace kklab
