#include <kklab/density.hpp>

#include <kklab/errors.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

namespace kklab {

namespace {

// Dinic max-flow on small integer networks.
class FlowNetwork {
  public:
    explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    void add_arc(int from, int to, std::int64_t cap)
    {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    std::int64_t max_flow(int s, int t)
    {
        std::int64_t total = 0;
        while (bfs(s, t)) {
            std::copy(head_.begin(), head_.end(), iter_.begin());
            while (auto f = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
                total += f;
        }
        return total;
    }

    /// Nodes reachable from s in the residual network after max_flow.
    std::vector<bool> source_side(int s) const
    {
        std::vector<bool> seen(head_.size(), false);
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
                const auto & arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && ! seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = true;
                    stack.push_back(arc.to);
                }
            }
        }
        return seen;
    }

  private:
    struct Arc {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (! q.empty()) {
            int v = q.front();
            q.pop();
            for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
                const auto & arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
                    level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
                    q.push(arc.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t pushed)
    {
        if (v == t)
            return pushed;
        for (int & a = iter_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
            auto & arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] == level_[static_cast<std::size_t>(v)] + 1) {
                if (auto f = dfs(arc.to, t, std::min(pushed, arc.cap))) {
                    arc.cap -= f;
                    arcs_[static_cast<std::size_t>(a ^ 1)].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

struct Fraction {
    std::int64_t num;
    std::int64_t den;
};

// Maximizes den * e(U) - num * |U| over vertex sets U (projection/selection
// closure: an edge may be taken only with both endpoints). Returns the
// optimum value and the minimal optimal U.
std::pair<std::int64_t, std::vector<Vertex>> best_closure(const Graph & g, Fraction f)
{
    const auto m = static_cast<int>(g.size());
    const auto n = static_cast<int>(g.order());
    const int source = m + n, sink = m + n + 1;
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    FlowNetwork net(static_cast<std::size_t>(m + n + 2));
    for (int i = 0; i < m; ++i) {
        const auto & e = g.edges()[static_cast<std::size_t>(i)];
        net.add_arc(source, i, f.den);
        net.add_arc(i, m + static_cast<int>(e.u), inf);
        net.add_arc(i, m + static_cast<int>(e.v), inf);
    }
    for (int v = 0; v < n; ++v)
        net.add_arc(m + v, sink, f.num);
    std::int64_t cut = net.max_flow(source, sink);
    auto side = net.source_side(source);
    std::vector<Vertex> chosen;
    for (int v = 0; v < n; ++v)
        if (side[static_cast<std::size_t>(m + v)])
            chosen.push_back(static_cast<Vertex>(v));
    return {f.den * m - cut, chosen};
}

std::size_t induced_edges(const Graph & g, const std::vector<Vertex> & vs)
{
    std::size_t e = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j]))
                ++e;
    return e;
}

} // namespace

Rational density(const Graph & g)
{
    if (g.order() == 0)
        throw PreconditionError("density of the empty graph is undefined");
    Rational r(static_cast<unsigned long>(g.size()), static_cast<unsigned long>(g.order()));
    r.canonicalize();
    return r;
}

DensityValue max_density(const Graph & g)
{
    if (g.order() == 0)
        throw PreconditionError("max_density of the empty graph is undefined");

    std::vector<Vertex> all(g.order());
    for (std::size_t v = 0; v < all.size(); ++v)
        all[v] = static_cast<Vertex>(v);
    if (g.size() == 0)
        return {0, g.order(), all};

    // Every achievable density is a/b with 1 <= b <= v and a <= min(e, C(b,2)).
    const auto n = static_cast<std::int64_t>(g.order());
    const auto m = static_cast<std::int64_t>(g.size());
    std::vector<Fraction> candidates;
    for (std::int64_t b = 1; b <= n; ++b)
        for (std::int64_t a = 0; a <= std::min(m, b * (b - 1) / 2); ++a)
            candidates.push_back({a, b});
    std::sort(candidates.begin(), candidates.end(),
              [](const Fraction & x, const Fraction & y) { return x.num * y.den < y.num * x.den; });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Fraction & x, const Fraction & y) { return x.num * y.den == y.num * x.den; }),
                     candidates.end());

    // exceeds(f): some U has density > f. True below m(J), false from m(J) on.
    auto exceeds = [&](const Fraction & f) { return best_closure(g, f).first > 0; };
    std::size_t lo = 0, hi = candidates.size() - 1; // exceeds(c[lo]) holds (c[0] = 0, m >= 1)
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        (exceeds(candidates[mid]) ? lo : hi) = mid;
    }
    // The optimal set just below m(J) has density exactly m(J), since no
    // candidate lies strictly between candidates[lo] and m(J).
    auto witness = best_closure(g, candidates[lo]).second;
    return {induced_edges(g, witness), witness.size(), witness};
}

DensityValue max_density_enumerate(const Graph & g)
{
    const std::size_t n = g.order();
    if (n == 0)
        throw PreconditionError("max_density of the empty graph is undefined");
    if (n > 20)
        throw ResourceGuardError("subset enumeration limited to 20 vertices");
    DensityValue best{0, 1, {0}};
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < n; ++v)
            if ((mask >> v) & 1U)
                vs.push_back(v);
        std::size_t e = induced_edges(g, vs);
        // e/|vs| > best.edges/best.vertices, ties prefer the larger set
        auto lhs = e * best.vertices, rhs = best.edges * vs.size();
        if (lhs > rhs || (lhs == rhs && vs.size() > best.vertices))
            best = {e, vs.size(), vs};
    }
    return best;
}

} // namespace kklab
