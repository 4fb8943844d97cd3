#include <kklab/counting.hpp>

#include <kklab/automorphism.hpp>
#include <kklab/errors.hpp>
#include <kklab/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <set>
#include <string>

namespace kklab {

namespace {

class NodeBudget {
  public:
    explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}

    void charge(std::uint64_t nodes)
    {
        if (used_.fetch_add(nodes, std::memory_order_relaxed) + nodes > limit_)
            throw ResourceGuardError("search exceeded node budget of " + std::to_string(limit_) +
                                     " (raise it with --node-budget)");
    }

  private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

// Batches budget charges so the shared counter is touched rarely. The
// total charged equals the nodes visited, so whether the guard fires does
// not depend on scheduling.
class Meter {
  public:
    explicit Meter(NodeBudget & budget) : budget_(budget) {}
    ~Meter() noexcept(false)
    {
        if (pending_ && std::uncaught_exceptions() == 0)
            budget_.charge(pending_);
    }
    Meter(const Meter &) = delete;
    Meter & operator=(const Meter &) = delete;

    void tick()
    {
        if (++pending_ == 4096) {
            budget_.charge(pending_);
            pending_ = 0;
        }
    }

  private:
    NodeBudget & budget_;
    std::uint64_t pending_ = 0;
};

struct PatternPlan {
    std::vector<Vertex> order;                 // position -> pattern vertex
    std::vector<std::vector<Vertex>> back;     // earlier pattern neighbours
    std::vector<std::size_t> degree;           // pattern degree at position

    explicit PatternPlan(const Graph & p)
    {
        const std::size_t k = p.order();
        std::vector<bool> placed(k, false);
        auto deg = p.degrees();
        while (order.size() < k) {
            Vertex root = 0;
            bool found = false;
            for (Vertex v = 0; v < k; ++v)
                if (! placed[v] && (! found || deg[v] > deg[root])) {
                    root = v;
                    found = true;
                }
            std::deque<Vertex> queue{root};
            placed[root] = true;
            while (! queue.empty()) {
                Vertex v = queue.front();
                queue.pop_front();
                order.push_back(v);
                p.neighbors(v).for_each([&](Vertex w) {
                    if (! placed[w]) {
                        placed[w] = true;
                        queue.push_back(w);
                    }
                });
            }
        }
        std::vector<std::size_t> position(k);
        for (std::size_t i = 0; i < k; ++i)
            position[order[i]] = i;
        back.resize(k);
        degree.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            degree[i] = deg[order[i]];
            p.neighbors(order[i]).for_each([&](Vertex w) {
                if (position[w] < i)
                    back[i].push_back(w);
            });
        }
    }
};

class Embedder {
  public:
    Embedder(const Graph & host, const Graph & pattern, const PatternPlan & plan)
        : host_(host), plan_(plan), host_degree_(host.degrees()), map_(pattern.order(), 0), used_(host.order()),
          scratch_(pattern.order() + 1, VertexSet(host.order())), all_(VertexSet::full(host.order()))
    {
    }

    /// Enumerates completions of positions [pos, k); returns false if the
    /// visitor asked to stop.
    template <typename Visit>
    bool extend(std::size_t pos, Visit & visit, Meter & meter)
    {
        if (pos == plan_.order.size())
            return visit(std::span<const Vertex>(map_));
        VertexSet & cand = scratch_[pos];
        const auto & back = plan_.back[pos];
        if (back.empty())
            cand = all_;
        else {
            cand = host_.neighbors(map_[back[0]]);
            for (std::size_t b = 1; b < back.size(); ++b)
                cand &= host_.neighbors(map_[back[b]]);
        }
        cand.subtract(used_);
        const Vertex pv = plan_.order[pos];
        const std::size_t need = plan_.degree[pos];
        for (std::size_t w = cand.first(); w != VertexSet::npos; w = cand.next(w + 1)) {
            if (host_degree_[w] < need)
                continue;
            meter.tick();
            map_[pv] = static_cast<Vertex>(w);
            used_.set(w);
            bool go_on = extend(pos + 1, visit, meter);
            used_.reset(w);
            if (! go_on)
                return false;
        }
        return true;
    }

    /// Fixes the first position to `root_image` and enumerates the rest.
    template <typename Visit>
    void run_from(Vertex root_image, Visit & visit, Meter & meter)
    {
        if (host_degree_[root_image] < plan_.degree[0])
            return;
        meter.tick();
        map_[plan_.order[0]] = root_image;
        used_.set(root_image);
        extend(1, visit, meter);
        used_.reset(root_image);
    }

  private:
    const Graph & host_;
    const PatternPlan & plan_;
    std::vector<std::size_t> host_degree_;
    std::vector<Vertex> map_;
    VertexSet used_;
    std::vector<VertexSet> scratch_;
    VertexSet all_;
};

BigInt to_big(std::uint64_t v) { return BigInt(std::to_string(v)); }

} // namespace

BigInt count_labeled(const Graph & host, const Graph & pattern, const CountOptions & opts)
{
    if (pattern.order() == 0)
        return 1;
    if (pattern.order() > host.order())
        return 0;
    PatternPlan plan(pattern);
    NodeBudget budget(opts.node_budget);
    auto partial = parallel_map<std::uint64_t>(host.order(), [&](std::size_t root) {
        Embedder e(host, pattern, plan);
        Meter meter(budget);
        std::uint64_t count = 0;
        auto visit = [&](std::span<const Vertex>) {
            ++count;
            return true;
        };
        e.run_from(static_cast<Vertex>(root), visit, meter);
        return count;
    });
    BigInt total = 0;
    for (auto c : partial)
        total += to_big(c);
    return total;
}

BigInt count_copies(const Graph & host, const Graph & pattern, const CountOptions & opts)
{
    if (pattern.order() == 0)
        throw PreconditionError("count_copies: pattern must have at least one vertex");
    BigInt labeled = count_labeled(host, pattern, opts);
    BigInt aut = automorphism_count(pattern);
    return labeled / aut;
}

void for_each_embedding(const Graph & host, const Graph & pattern,
                        const std::function<bool(std::span<const Vertex>)> & visit, const CountOptions & opts)
{
    if (pattern.order() == 0) {
        visit({});
        return;
    }
    if (pattern.order() > host.order())
        return;
    PatternPlan plan(pattern);
    NodeBudget budget(opts.node_budget);
    Meter meter(budget);
    Embedder e(host, pattern, plan);
    auto v = [&](std::span<const Vertex> m) { return visit(m); };
    e.extend(0, v, meter);
}

std::vector<Copy> enumerate_copies(const Graph & host, const Graph & pattern, std::size_t copy_cap,
                                   const CountOptions & opts)
{
    std::set<Copy> found;
    for_each_embedding(
        host, pattern,
        [&](std::span<const Vertex> map) {
            Copy c;
            c.vertices.assign(map.begin(), map.end());
            std::sort(c.vertices.begin(), c.vertices.end());
            for (const auto & e : pattern.edges())
                c.edges.push_back(*host.edge_index(map[e.u], map[e.v]));
            std::sort(c.edges.begin(), c.edges.end());
            if (found.find(c) == found.end()) {
                c.embedding.assign(map.begin(), map.end());
                found.insert(std::move(c));
                if (found.size() > copy_cap)
                    throw ResourceGuardError("more than " + std::to_string(copy_cap) + " copies (raise --copy-cap)");
            }
            return true;
        },
        opts);
    return {found.begin(), found.end()};
}

BigInt count_cliques(const Graph & host, std::size_t r)
{
    if (r == 0)
        throw PreconditionError("count_cliques: r must be at least 1");
    const std::size_t n = host.order();
    if (r == 1)
        return static_cast<unsigned long>(n);
    if (r == 2)
        return static_cast<unsigned long>(host.size());

    // Degeneracy order: repeatedly remove a minimum-degree vertex.
    std::vector<std::size_t> deg = host.degrees();
    std::vector<std::size_t> rank(n);
    std::vector<bool> removed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
            if (! removed[v] && (best == n || deg[v] < deg[best]))
                best = v;
        removed[best] = true;
        rank[best] = step;
        host.neighbors(static_cast<Vertex>(best)).for_each([&](Vertex w) {
            if (! removed[w])
                --deg[w];
        });
    }
    std::vector<VertexSet> forward(n, VertexSet(n));
    for (const auto & e : host.edges()) {
        if (rank[e.u] < rank[e.v])
            forward[e.u].set(e.v);
        else
            forward[e.v].set(e.u);
    }

    struct Counter {
        const std::vector<VertexSet> & forward;
        std::uint64_t operator()(const VertexSet & cand, std::size_t need) const
        {
            if (need == 1)
                return cand.count();
            std::uint64_t total = 0;
            cand.for_each([&](Vertex u) {
                VertexSet next = cand & forward[u];
                if (next.count() + 1 >= need)
                    total += (*this)(next, need - 1);
            });
            return total;
        }
    };
    Counter counter{forward};
    auto partial =
        parallel_map<std::uint64_t>(n, [&](std::size_t v) { return counter(forward[v], r - 1); });
    BigInt total = 0;
    for (auto c : partial)
        total += to_big(c);
    return total;
}

BigInt count_cycles(const Graph & host, std::size_t k, const CountOptions & opts)
{
    if (k < 3)
        throw PreconditionError("count_cycles: k must be at least 3");
    const std::size_t n = host.order();
    if (k > n)
        return 0;
    NodeBudget budget(opts.node_budget);
    auto partial = parallel_map<std::uint64_t>(n, [&](std::size_t start) {
        const auto s = static_cast<Vertex>(start);
        Meter meter(budget);
        std::vector<Vertex> path{s};
        VertexSet used(n);
        used.set(s);
        std::uint64_t count = 0;
        auto dfs = [&](auto & self) -> void {
            Vertex last = path.back();
            if (path.size() == k) {
                if (host.adjacent(last, s) && path[1] < last)
                    ++count;
                return;
            }
            host.neighbors(last).for_each([&](Vertex w) {
                if (w <= s || used.test(w))
                    return;
                meter.tick();
                path.push_back(w);
                used.set(w);
                self(self);
                used.reset(w);
                path.pop_back();
            });
        };
        dfs(dfs);
        return count;
    });
    BigInt total = 0;
    for (auto c : partial)
        total += to_big(c);
    return total;
}

BigInt count_xy_paths(const Graph & host, Vertex x, Vertex y, std::size_t length, const CountOptions & opts)
{
    const std::size_t n = host.order();
    if (x >= n || y >= n)
        throw PreconditionError("count_xy_paths: vertex out of range");
    if (x == y)
        throw PreconditionError("count_xy_paths: endpoints must differ");
    if (length == 0)
        throw PreconditionError("count_xy_paths: length must be at least 1");

    // Distance to y bounds how many steps are still needed.
    constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, unreachable);
    std::deque<Vertex> queue{y};
    dist[y] = 0;
    while (! queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        host.neighbors(v).for_each([&](Vertex w) {
            if (dist[w] == unreachable) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        });
    }

    NodeBudget budget(opts.node_budget);
    Meter meter(budget);
    VertexSet used(n);
    used.set(x);
    std::uint64_t count = 0;
    auto dfs = [&](auto & self, Vertex v, std::size_t remaining) -> void {
        host.neighbors(v).for_each([&](Vertex w) {
            if (used.test(w))
                return;
            if (w == y) {
                if (remaining == 1)
                    ++count;
                return;
            }
            if (remaining == 1 || dist[w] == unreachable || dist[w] > remaining - 1)
                return;
            meter.tick();
            used.set(w);
            self(self, w, remaining - 1);
            used.reset(w);
        });
    };
    dfs(dfs, x, length);
    return to_big(count);
}

GammaResult gamma(const Graph & host, std::size_t length, const CountOptions & opts)
{
    const std::size_t n = host.order();
    if (length == 0)
        throw PreconditionError("gamma: length must be at least 1");
    if (n < 2)
        return {0, std::nullopt};
    NodeBudget budget(opts.node_budget);

    struct Best {
        std::uint64_t value = 0;
        Vertex y = 0;
        bool any = false;
    };
    auto per_source = parallel_map<Best>(n, [&](std::size_t source) {
        const auto x = static_cast<Vertex>(source);
        Meter meter(budget);
        std::vector<std::uint64_t> ends(n, 0);
        VertexSet used(n);
        used.set(x);
        auto dfs = [&](auto & self, Vertex v, std::size_t remaining) -> void {
            host.neighbors(v).for_each([&](Vertex w) {
                if (used.test(w))
                    return;
                meter.tick();
                if (remaining == 1) {
                    ++ends[w];
                    return;
                }
                used.set(w);
                self(self, w, remaining - 1);
                used.reset(w);
            });
        };
        dfs(dfs, x, length);
        Best best;
        for (Vertex y = x + 1; y < n; ++y)
            if (! best.any || ends[y] > best.value) {
                best = {ends[y], y, true};
            }
        return best;
    });

    GammaResult result{0, std::pair<Vertex, Vertex>{0, 1}};
    std::uint64_t best = 0;
    for (Vertex x = 0; x + 1 < n; ++x) {
        const auto & b = per_source[x];
        if (b.any && b.value > best) {
            best = b.value;
            result.pair = std::pair<Vertex, Vertex>{x, b.y};
        }
    }
    result.value = to_big(best);
    return result;
}

PackingResult packing(const Graph & host, const Graph & pattern, PackingMode mode, const PackingOptions & opts)
{
    if (pattern.size() == 0)
        throw PreconditionError("packing: pattern needs at least one edge");
    auto copies = enumerate_copies(host, pattern, opts.copy_cap);
    const std::size_t m = host.size();
    std::vector<VertexSet> masks;
    masks.reserve(copies.size());
    for (const auto & c : copies) {
        VertexSet s(m);
        for (auto e : c.edges)
            s.set(e);
        masks.push_back(std::move(s));
    }

    // Greedy in enumeration order; also the starting incumbent for exact mode.
    PackingResult greedy;
    VertexSet taken(m);
    for (std::size_t i = 0; i < copies.size(); ++i)
        if (masks[i].intersection_count(taken) == 0) {
            taken |= masks[i];
            greedy.chosen.push_back(copies[i]);
        }
    greedy.value = greedy.chosen.size();
    if (mode == PackingMode::greedy || copies.empty())
        return greedy;

    std::vector<std::vector<std::size_t>> by_edge(m);
    for (std::size_t i = 0; i < copies.size(); ++i)
        for (auto e : copies[i].edges)
            by_edge[e].push_back(i);

    const std::size_t per_copy = pattern.size();
    std::vector<std::size_t> best = [&] {
        std::vector<std::size_t> ids;
        VertexSet t(m);
        for (std::size_t i = 0; i < copies.size(); ++i)
            if (masks[i].intersection_count(t) == 0) {
                t |= masks[i];
                ids.push_back(i);
            }
        return ids;
    }();
    std::vector<std::size_t> current;
    std::uint64_t nodes = 0;

    auto fits = [&](std::size_t i, const VertexSet & avail) {
        return masks[i].intersection_count(avail) == per_copy;
    };

    auto solve = [&](auto & self, VertexSet avail) -> void {
        if (++nodes > opts.node_budget)
            throw ResourceGuardError("packing search exceeded node budget of " + std::to_string(opts.node_budget));
        // Drop edges that no remaining copy can use, then branch on the first usable one.
        std::size_t pivot = VertexSet::npos;
        for (std::size_t e = avail.first(); e != VertexSet::npos; e = avail.next(e + 1)) {
            bool usable = std::any_of(by_edge[e].begin(), by_edge[e].end(), [&](std::size_t i) { return fits(i, avail); });
            if (usable) {
                if (pivot == VertexSet::npos)
                    pivot = e;
            }
            else
                avail.reset(e);
        }
        if (current.size() + avail.count() / per_copy <= best.size())
            return;
        if (pivot == VertexSet::npos) {
            best = current;
            return;
        }
        for (std::size_t i : by_edge[pivot]) {
            if (! fits(i, avail))
                continue;
            VertexSet rest = avail;
            rest.subtract(masks[i]);
            current.push_back(i);
            self(self, std::move(rest));
            current.pop_back();
        }
        VertexSet without = avail;
        without.reset(pivot);
        self(self, std::move(without));
    };
    solve(solve, VertexSet::full(m));

    PackingResult out;
    std::sort(best.begin(), best.end());
    for (auto i : best)
        out.chosen.push_back(copies[i]);
    out.value = out.chosen.size();
    return out;
}

} // namespace kklab
