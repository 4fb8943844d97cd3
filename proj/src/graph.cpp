#include <kklab/graph.hpp>

#include <kklab/errors.hpp>

#include <algorithm>
#include <string>

namespace kklab {

Graph::Graph(std::size_t vertex_count) : n_(vertex_count), adj_(vertex_count, VertexSet(vertex_count)) {}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges)
{
    Graph g(vertex_count);
    g.edges_.reserve(edges.size());
    for (const auto & raw : edges) {
        if (raw.u == raw.v)
            throw Error("loop at vertex " + std::to_string(raw.u));
        if (raw.u >= vertex_count || raw.v >= vertex_count)
            throw Error("edge {" + std::to_string(raw.u) + "," + std::to_string(raw.v) + "} out of range for " +
                        std::to_string(vertex_count) + " vertices");
        Edge e = make_edge(raw.u, raw.v);
        if (g.adj_[e.u].test(e.v))
            throw Error("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
        g.adj_[e.u].set(e.v);
        g.adj_[e.v].set(e.u);
        g.edges_.push_back(e);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    return g;
}

std::size_t Graph::max_degree() const
{
    std::size_t m = 0;
    for (const auto & a : adj_)
        m = std::max(m, a.count());
    return m;
}

std::size_t Graph::min_degree() const
{
    if (n_ == 0)
        return 0;
    std::size_t m = n_;
    for (const auto & a : adj_)
        m = std::min(m, a.count());
    return m;
}

std::vector<std::size_t> Graph::degrees() const
{
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v)
        d[v] = adj_[v].count();
    return d;
}

std::optional<std::size_t> Graph::edge_index(Vertex a, Vertex b) const
{
    Edge e = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

Graph Graph::induced(std::span<const Vertex> vertices) const
{
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (adjacent(vertices[i], vertices[j]))
                es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return from_edges(vertices.size(), es);
}

Graph Graph::edge_subgraph(std::span<const std::size_t> edge_ids, bool drop_isolated,
                           std::vector<Vertex> * vertex_map) const
{
    if (! drop_isolated) {
        std::vector<Edge> es;
        for (auto id : edge_ids)
            es.push_back(edges_.at(id));
        if (vertex_map) {
            vertex_map->resize(n_);
            for (std::size_t v = 0; v < n_; ++v)
                (*vertex_map)[v] = static_cast<Vertex>(v);
        }
        return from_edges(n_, es);
    }
    std::vector<Vertex> spanned;
    for (auto id : edge_ids) {
        spanned.push_back(edges_.at(id).u);
        spanned.push_back(edges_.at(id).v);
    }
    std::sort(spanned.begin(), spanned.end());
    spanned.erase(std::unique(spanned.begin(), spanned.end()), spanned.end());
    auto rank = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(spanned.begin(), spanned.end(), v) - spanned.begin());
    };
    std::vector<Edge> es;
    for (auto id : edge_ids)
        es.push_back({rank(edges_[id].u), rank(edges_[id].v)});
    if (vertex_map)
        *vertex_map = spanned;
    return from_edges(spanned.size(), es);
}

Graph Graph::with_edge(Edge e) const
{
    auto es = edges_;
    es.push_back(e);
    return from_edges(n_, es);
}

Graph Graph::without_edge(Edge e) const
{
    e = make_edge(e.u, e.v);
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (const auto & x : edges_)
        if (x != e)
            es.push_back(x);
    return from_edges(n_, es);
}

Graph Graph::relabeled(std::span<const Vertex> perm) const
{
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (const auto & e : edges_)
        es.push_back(make_edge(perm[e.u], perm[e.v]));
    return from_edges(n_, es);
}

bool Graph::is_connected() const
{
    if (n_ == 0)
        return true;
    VertexSet seen(n_);
    std::vector<Vertex> stack{0};
    seen.set(0);
    while (! stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        adj_[v].for_each([&](Vertex w) {
            if (! seen.test(w)) {
                seen.set(w);
                stack.push_back(w);
            }
        });
    }
    return seen.count() == n_;
}

std::size_t Graph::isolated_count() const
{
    return static_cast<std::size_t>(std::count_if(adj_.begin(), adj_.end(), [](const auto & a) { return a.none(); }));
}

namespace families {

Graph empty(std::size_t n) { return Graph(n); }

Graph complete(std::size_t n)
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            es.push_back({i, j});
    return Graph::from_edges(n, es);
}

Graph cycle(std::size_t n)
{
    if (n < 3)
        throw Error("cycle needs at least 3 vertices");
    std::vector<Edge> es;
    for (Vertex i = 0; i < n; ++i)
        es.push_back(make_edge(i, static_cast<Vertex>((i + 1) % n)));
    return Graph::from_edges(n, es);
}

Graph path(std::size_t edges)
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < edges; ++i)
        es.push_back({i, i + 1});
    return Graph::from_edges(edges + 1, es);
}

Graph star(std::size_t leaves)
{
    std::vector<Edge> es;
    for (Vertex i = 1; i <= leaves; ++i)
        es.push_back({0, i});
    return Graph::from_edges(leaves + 1, es);
}

Graph complete_bipartite(std::size_t a, std::size_t b)
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j)
            es.push_back({i, static_cast<Vertex>(a + j)});
    return Graph::from_edges(a + b, es);
}

Graph petersen()
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < 5; ++i) {
        es.push_back(make_edge(i, (i + 1) % 5));
        es.push_back({i, i + 5});
        es.push_back(make_edge(5 + i, 5 + (i + 2) % 5));
    }
    return Graph::from_edges(10, es);
}

Graph bowtie()
{
    std::vector<Edge> es{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
    return Graph::from_edges(5, es);
}

Graph disjoint_union(const Graph & a, const Graph & b)
{
    std::vector<Edge> es = a.edges();
    auto shift = static_cast<Vertex>(a.order());
    for (const auto & e : b.edges())
        es.push_back({e.u + shift, e.v + shift});
    return Graph::from_edges(a.order() + b.order(), es);
}

Graph clique_union(std::span<const std::size_t> sizes)
{
    Graph g(0);
    for (auto s : sizes)
        g = disjoint_union(g, complete(s));
    return g;
}

Graph theta(std::size_t paths, std::size_t length)
{
    if (length == 0 || (length == 1 && paths > 1))
        throw Error("theta: parallel edges are not allowed");
    std::vector<Edge> es;
    Vertex next = 2;
    for (std::size_t p = 0; p < paths; ++p) {
        Vertex prev = 0;
        for (std::size_t s = 1; s < length; ++s) {
            es.push_back(make_edge(prev, next));
            prev = next++;
        }
        es.push_back(make_edge(prev, 1));
    }
    return Graph::from_edges(next, es);
}

Graph spider(std::span<const std::size_t> legs)
{
    std::vector<Edge> es;
    Vertex next = 1;
    for (auto len : legs) {
        Vertex prev = 0;
        for (std::size_t s = 0; s < len; ++s) {
            es.push_back(make_edge(prev, next));
            prev = next++;
        }
    }
    return Graph::from_edges(next, es);
}

Graph path_power(std::size_t k, std::size_t r)
{
    std::vector<Edge> es;
    for (Vertex i = 0; i < k; ++i)
        for (Vertex j = i + 1; j < k && j - i <= r; ++j)
            es.push_back({i, j});
    return Graph::from_edges(k, es);
}

} // namespace families

} // namespace kklab
