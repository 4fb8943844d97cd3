#include <kklab/catalog.hpp>

#include <kklab/automorphism.hpp>
#include <kklab/errors.hpp>
#include <kklab/graph_io.hpp>

#include <map>
#include <utility>

namespace kklab {

std::vector<Graph> graph_catalog(std::size_t v)
{
    if (v > 9)
        throw ResourceGuardError("graph catalogs are limited to 9 vertices");
    std::vector<Graph> level{Graph(0)};
    for (std::size_t order = 1; order <= v; ++order) {
        std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, Graph> seen;
        const Vertex fresh = static_cast<Vertex>(order - 1);
        for (const Graph & g : level)
            for (std::uint32_t mask = 0; mask < (1U << fresh); ++mask) {
                std::vector<Edge> edges = g.edges();
                for (Vertex u = 0; u < fresh; ++u)
                    if (mask >> u & 1U)
                        edges.push_back({u, fresh});
                auto form = canonical_form(Graph::from_edges(order, edges));
                seen.try_emplace({form.graph.size(), std::move(form.key)}, std::move(form.graph));
            }
        level.clear();
        for (auto & [key, g] : seen)
            level.push_back(std::move(g));
    }
    return level;
}

std::string canonical_signature(const Graph & g)
{
    std::vector<Vertex> spanned;
    for (Vertex u = 0; u < g.order(); ++u)
        if (g.degree(u) > 0)
            spanned.push_back(u);
    return to_graph6(canonical_form(g.induced(spanned)).graph);
}

} // namespace kklab
