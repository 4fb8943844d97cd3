#include <kklab/automorphism.hpp>

#include <algorithm>
#include <array>
#include <optional>

namespace kklab {

namespace {

using Coloring = std::vector<int>;

class Refiner {
  public:
    explicit Refiner(const Graph & g) : g_(g), adj_(g.order())
    {
        for (const auto & e : g.edges()) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
    }

    std::size_t order() const { return g_.order(); }
    const Graph & graph() const { return g_; }

    /// Refines all colorings to the coarsest common equitable partition,
    /// naming new cells by sorted signature so that names are
    /// labeling-invariant. False when the colorings stop being compatible.
    bool refine(std::span<Coloring *> colorings) const
    {
        const std::size_t n = g_.order();
        std::size_t cells = distinct_colors(*colorings[0]);
        struct Entry {
            std::vector<int> signature;
            std::size_t which;
            Vertex v;
        };
        std::vector<Entry> entries;
        while (true) {
            entries.clear();
            for (std::size_t c = 0; c < colorings.size(); ++c) {
                const Coloring & col = *colorings[c];
                for (Vertex v = 0; v < n; ++v) {
                    Entry e{{col[v]}, c, v};
                    for (Vertex w : adj_[v])
                        e.signature.push_back(col[w]);
                    std::sort(e.signature.begin() + 1, e.signature.end());
                    entries.push_back(std::move(e));
                }
            }
            std::sort(entries.begin(), entries.end(),
                      [](const Entry & a, const Entry & b) { return a.signature < b.signature; });
            int next = -1;
            const std::vector<int> * last = nullptr;
            for (auto & e : entries) {
                if (! last || *last != e.signature)
                    ++next;
                last = &e.signature;
                (*colorings[e.which])[e.v] = next;
            }
            auto new_cells = static_cast<std::size_t>(next + 1);
            if (colorings.size() > 1) {
                std::vector<int> base = *colorings[0];
                std::sort(base.begin(), base.end());
                for (std::size_t c = 1; c < colorings.size(); ++c) {
                    std::vector<int> other = *colorings[c];
                    std::sort(other.begin(), other.end());
                    if (other != base)
                        return false;
                }
            }
            if (new_cells == cells)
                return true;
            cells = new_cells;
        }
    }

    static std::size_t distinct_colors(Coloring c)
    {
        std::sort(c.begin(), c.end());
        return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    }

    static std::size_t count_cells(const Coloring & c)
    {
        if (c.empty())
            return 0;
        return static_cast<std::size_t>(*std::max_element(c.begin(), c.end()) + 1);
    }

    /// Smallest color whose cell has two or more vertices.
    static std::optional<int> target_cell(const Coloring & c)
    {
        std::vector<int> size(count_cells(c), 0);
        for (int x : c)
            ++size[static_cast<std::size_t>(x)];
        for (std::size_t k = 0; k < size.size(); ++k)
            if (size[k] > 1)
                return static_cast<int>(k);
        return std::nullopt;
    }

    static void individualize(Coloring & c, Vertex v) { c[v] = static_cast<int>(count_cells(c)); }

    /// N(a) and N(b) agree outside {a, b}: swapping a and b is an automorphism.
    bool twins(Vertex a, Vertex b) const
    {
        VertexSet x = g_.neighbors(a);
        VertexSet y = g_.neighbors(b);
        x.reset(b);
        y.reset(a);
        return x == y;
    }

    /// Candidates in `cell` of `c`, skipping vertices that are twins of an
    /// earlier candidate (their subtrees are images of each other).
    std::vector<Vertex> branch_candidates(const Coloring & c, int cell) const
    {
        std::vector<Vertex> out;
        for (Vertex w = 0; w < c.size(); ++w) {
            if (c[w] != cell)
                continue;
            bool redundant = std::any_of(out.begin(), out.end(), [&](Vertex x) { return twins(x, w); });
            if (! redundant)
                out.push_back(w);
        }
        return out;
    }

  private:
    const Graph & g_;
    std::vector<std::vector<Vertex>> adj_;
};

// Is there an automorphism mapping each vertex of colour k in `a` to the
// vertex of colour k in `b`, after refinement and further branching?
bool extends(const Refiner & r, Coloring a, Coloring b)
{
    std::array<Coloring *, 2> both{&a, &b};
    if (! r.refine(both))
        return false;
    auto cell = Refiner::target_cell(a);
    if (! cell) {
        std::vector<Vertex> where(r.order());
        for (Vertex v = 0; v < r.order(); ++v)
            where[static_cast<std::size_t>(b[v])] = v;
        std::vector<Vertex> perm(r.order());
        for (Vertex v = 0; v < r.order(); ++v)
            perm[v] = where[static_cast<std::size_t>(a[v])];
        return is_automorphism(r.graph(), perm);
    }
    Vertex v = 0;
    while (a[v] != *cell)
        ++v;
    for (Vertex w : r.branch_candidates(b, *cell)) {
        Coloring a2 = a, b2 = b;
        Refiner::individualize(a2, v);
        Refiner::individualize(b2, w);
        if (extends(r, std::move(a2), std::move(b2)))
            return true;
    }
    return false;
}

std::vector<std::uint64_t> adjacency_key(const Graph & g, std::span<const Vertex> labeling)
{
    const std::size_t n = g.order();
    std::vector<Vertex> inverse(n);
    for (Vertex v = 0; v < n; ++v)
        inverse[labeling[v]] = v;
    std::vector<std::uint64_t> key((n * (n - (n ? 1 : 0)) / 2 + 63) / 64 + 1, 0);
    key[0] = n;
    std::size_t bit = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++bit)
            if (g.adjacent(inverse[i], inverse[j]))
                key[1 + bit / 64] |= std::uint64_t{1} << (63 - bit % 64);
    return key;
}

void canonical_search(const Refiner & r, Coloring c, std::optional<std::vector<std::uint64_t>> & best,
                      std::vector<Vertex> & best_labeling)
{
    std::array<Coloring *, 1> one{&c};
    r.refine(one);
    auto cell = Refiner::target_cell(c);
    if (! cell) {
        std::vector<Vertex> labeling(c.begin(), c.end());
        auto key = adjacency_key(r.graph(), labeling);
        if (! best || key > *best) {
            best = std::move(key);
            best_labeling = std::move(labeling);
        }
        return;
    }
    for (Vertex w : r.branch_candidates(c, *cell)) {
        Coloring next = c;
        Refiner::individualize(next, w);
        canonical_search(r, std::move(next), best, best_labeling);
    }
}

} // namespace

bool is_automorphism(const Graph & g, std::span<const Vertex> perm)
{
    if (perm.size() != g.order())
        return false;
    std::vector<bool> hit(g.order(), false);
    for (Vertex p : perm) {
        if (p >= g.order() || hit[p])
            return false;
        hit[p] = true;
    }
    for (const auto & e : g.edges())
        if (! g.adjacent(perm[e.u], perm[e.v]))
            return false;
    return true;
}

BigInt automorphism_count(const Graph & g)
{
    const std::size_t n = g.order();
    if (n <= 1)
        return 1;
    Refiner r(g);

    std::vector<std::pair<std::vector<std::size_t>, Vertex>> keyed;
    auto deg = g.degrees();
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::size_t> key{deg[v]};
        std::vector<std::size_t> nd;
        g.neighbors(v).for_each([&](Vertex w) { nd.push_back(deg[w]); });
        std::sort(nd.begin(), nd.end());
        key.insert(key.end(), nd.begin(), nd.end());
        keyed.emplace_back(std::move(key), v);
    }
    std::sort(keyed.begin(), keyed.end());

    BigInt order = 1;
    Coloring base(n, 0);
    std::array<Coloring *, 1> one{&base};
    r.refine(one);
    for (const auto & [unused, b] : keyed) {
        if (! Refiner::target_cell(base))
            break;
        std::size_t orbit = 0;
        for (Vertex w = 0; w < n; ++w) {
            if (base[w] != base[b])
                continue;
            if (w == b) {
                ++orbit;
                continue;
            }
            Coloring a = base, c = base;
            Refiner::individualize(a, b);
            Refiner::individualize(c, w);
            if (extends(r, std::move(a), std::move(c)))
                ++orbit;
        }
        order *= static_cast<unsigned long>(orbit);
        if (orbit > 1 || std::count(base.begin(), base.end(), base[b]) > 1) {
            Refiner::individualize(base, b);
            r.refine(one);
        }
    }
    return order;
}

CanonicalForm canonical_form(const Graph & g)
{
    Refiner r(g);
    std::optional<std::vector<std::uint64_t>> best;
    std::vector<Vertex> labeling;
    canonical_search(r, Coloring(g.order(), 0), best, labeling);
    if (g.order() == 0)
        return {g, {}, {0}};
    return {g.relabeled(labeling), labeling, *best};
}

} // namespace kklab
