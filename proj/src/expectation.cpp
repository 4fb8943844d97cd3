#include <kklab/expectation.hpp>

#include <kklab/automorphism.hpp>
#include <kklab/errors.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace kklab {

namespace {

void check_probability(const Rational & p)
{
    if (sgn(p) < 0 || p > 1)
        throw PreconditionError("probability " + to_string(p) + " outside [0, 1]");
}

// Adjacency of a spanned subgraph in span order: key[0] = v, then the
// upper-triangle bits. Identical keys mean identical labeled graphs.
using ShapeKey = std::vector<std::uint64_t>;

struct ShapeKeyHash {
    std::size_t operator()(const ShapeKey & k) const noexcept
    {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (auto w : k)
            h = (h ^ w) * 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(h);
    }
};

struct ShapeInfo {
    BigInt aut;
    double log_aut = 0;
    std::optional<std::vector<std::uint64_t>> canonical;
};

// Evaluates edge subsets of one host for one n. Each thread owns one.
class SubsetEvaluator {
  public:
    SubsetEvaluator(const Graph & host, std::size_t n) : host_(host), n_(n), degree_(host.order(), 0) {}

    struct Bound {
        std::size_t vertices = 0;
        double log_aut_upper = 0;
    };

    /// Spanned vertex count and log of an upper bound on aut(I): every
    /// automorphism permutes each degree class, so aut <= prod |class|!.
    template <typename Ids>
    Bound bound(const Ids & ids)
    {
        touched_.clear();
        for (auto id : ids) {
            const Edge & e = host_.edges()[id];
            for (Vertex x : {e.u, e.v})
                if (degree_[x]++ == 0)
                    touched_.push_back(x);
        }
        Bound b;
        b.vertices = touched_.size();
        if (histogram_.size() <= b.vertices)
            histogram_.resize(b.vertices + 1);
        for (Vertex x : touched_)
            ++histogram_[degree_[x]];
        for (Vertex x : touched_) {
            std::size_t & c = histogram_[degree_[x]];
            if (c) {
                b.log_aut_upper += log_factorial(c);
                c = 0;
            }
            degree_[x] = 0;
        }
        return b;
    }

    struct Shape {
        std::vector<Vertex> vertices;
        std::vector<Edge> local_edges;
        ShapeInfo * info = nullptr;
    };

    template <typename Ids>
    Shape shape(const Ids & ids)
    {
        Shape s;
        for (auto id : ids) {
            const Edge & e = host_.edges()[id];
            s.vertices.push_back(e.u);
            s.vertices.push_back(e.v);
        }
        std::sort(s.vertices.begin(), s.vertices.end());
        s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
        auto local = [&](Vertex x) {
            return static_cast<Vertex>(std::lower_bound(s.vertices.begin(), s.vertices.end(), x) - s.vertices.begin());
        };
        const std::size_t v = s.vertices.size();
        ShapeKey key(1 + (v * v + 63) / 64, 0);
        key[0] = v;
        for (auto id : ids) {
            const Edge & e = host_.edges()[id];
            Edge le{local(e.u), local(e.v)};
            s.local_edges.push_back(le);
            std::size_t bit = le.u * v + le.v;
            key[1 + bit / 64] |= std::uint64_t{1} << (bit % 64);
        }
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            std::sort(s.local_edges.begin(), s.local_edges.end());
            Graph g = Graph::from_edges(v, s.local_edges);
            ShapeInfo info;
            info.aut = automorphism_count(g);
            info.log_aut = log_of(info.aut);
            it = cache_.emplace(std::move(key), std::move(info)).first;
        }
        s.info = &it->second;
        return s;
    }

    double log_factorial(std::size_t c)
    {
        while (log_fact_.size() <= c)
            log_fact_.push_back(log_fact_.empty() ? 0.0 : log_fact_.back() + std::log(static_cast<double>(log_fact_.size())));
        return log_fact_[c];
    }

    double log_falling(std::size_t v)
    {
        while (log_ff_.size() <= v) {
            std::size_t k = log_ff_.size();
            log_ff_.push_back(k == 0 ? 0.0 : log_ff_[k - 1] + std::log(static_cast<double>(n_ - (k - 1))));
        }
        return log_ff_[v];
    }

    BigInt copies(const Shape & s) const
    {
        return falling_factorial(n_, s.vertices.size()) / s.info->aut;
    }

    const std::vector<std::uint64_t> & canonical_key(Shape & s)
    {
        if (! s.info->canonical) {
            auto local = s.local_edges;
            std::sort(local.begin(), local.end());
            s.info->canonical = canonical_form(Graph::from_edges(s.vertices.size(), local)).key;
        }
        return *s.info->canonical;
    }

    SubgraphThreshold materialize(const std::vector<std::size_t> & ids, const Rational & target)
    {
        Shape s = shape(ids);
        SubgraphThreshold t;
        t.edge_ids = ids;
        auto local = s.local_edges;
        std::sort(local.begin(), local.end());
        t.graph = Graph::from_edges(s.vertices.size(), local);
        t.vertices = s.vertices;
        t.aut = s.info->aut;
        t.copies = copies(s);
        t.base = Rational(t.copies) / target;
        t.base.canonicalize();
        return t;
    }

  private:
    const Graph & host_;
    std::size_t n_;
    std::unordered_map<ShapeKey, ShapeInfo, ShapeKeyHash> cache_;
    std::vector<double> log_ff_;
    std::vector<double> log_fact_;
    std::vector<std::size_t> degree_;
    std::vector<Vertex> touched_;
    std::vector<std::size_t> histogram_;
};

std::vector<std::size_t> ids_of(std::uint64_t mask)
{
    std::vector<std::size_t> ids;
    for (; mask; mask &= mask - 1)
        ids.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    return ids;
}

// Binary order on edge sets: the highest differing edge index decides.
bool binary_less(const std::vector<std::size_t> & a, const std::vector<std::size_t> & b)
{
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib)
        if (*ia != *ib)
            return *ia < *ib;
    return ia == a.rend() && ib != b.rend();
}

// A scored subset during the max search. log_threshold decides unless two
// candidates are within rounding distance, then the exact bases do.
struct Candidate {
    std::vector<std::size_t> ids;
    double log_threshold = 0;
    std::size_t v = 0;
    BigInt aut;
};

class CandidateOrder {
  public:
    CandidateOrder(std::size_t n, const Rational & target) : n_(n), target_(target) {}

    /// True when a beats b: larger threshold, then fewer edges, then binary order.
    bool better(const Candidate & a, const Candidate & b) const
    {
        double diff = a.log_threshold - b.log_threshold;
        int cmp = 0;
        if (std::fabs(diff) > 1e-9 * (1.0 + std::fabs(a.log_threshold) + std::fabs(b.log_threshold)))
            cmp = diff > 0 ? 1 : -1;
        else
            cmp = compare(threshold(a), threshold(b));
        if (cmp != 0)
            return cmp > 0;
        if (a.ids.size() != b.ids.size())
            return a.ids.size() < b.ids.size();
        return binary_less(a.ids, b.ids);
    }

    Root threshold(const Candidate & c) const
    {
        Rational base = Rational(falling_factorial(n_, c.v) / c.aut) / target_;
        return Root::reciprocal(base, c.ids.size());
    }

  private:
    std::size_t n_;
    Rational target_;
};

template <typename Ids>
Candidate score(SubsetEvaluator & eval, const Ids & ids, double log_target)
{
    auto s = eval.shape(ids);
    Candidate c;
    c.ids.assign(ids.begin(), ids.end());
    c.v = s.vertices.size();
    c.aut = s.info->aut;
    double log_copies = eval.log_falling(c.v) - s.info->log_aut;
    c.log_threshold = (log_target - log_copies) / static_cast<double>(c.ids.size());
    return c;
}

std::string describe_edges(const Graph & host, const std::vector<std::size_t> & ids)
{
    std::string s;
    for (auto id : ids) {
        const Edge & e = host.edges()[id];
        s += (s.empty() ? "" : " ") + std::to_string(e.u) + "-" + std::to_string(e.v);
    }
    return s;
}

std::size_t spanned_order(const Graph & g) { return g.order() - g.isolated_count(); }

// Connected edge subsets with at most `limit` edges: ESU enumeration on the
// line graph, so each subset is produced exactly once.
template <typename Visit>
void for_each_connected_edge_set(const Graph & host, std::size_t limit, Visit && visit)
{
    const std::size_t m = host.size();
    std::vector<std::vector<std::size_t>> line(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Edge & a = host.edges()[i];
            const Edge & b = host.edges()[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
                line[i].push_back(j);
                line[j].push_back(i);
            }
        }
    std::vector<std::size_t> sub;
    std::vector<char> in_sub(m, 0), near_sub(m, 0);
    auto extend = [&](auto & self, std::vector<std::size_t> ext, std::size_t root) -> void {
        std::vector<std::size_t> sorted = sub;
        std::sort(sorted.begin(), sorted.end());
        visit(sorted);
        if (sub.size() == limit)
            return;
        while (! ext.empty()) {
            std::size_t w = ext.back();
            ext.pop_back();
            std::vector<std::size_t> next = ext;
            std::vector<std::size_t> marked;
            for (std::size_t u : line[w])
                if (u > root && ! in_sub[u] && ! near_sub[u]) {
                    next.push_back(u);
                    marked.push_back(u);
                }
            for (std::size_t u : marked)
                near_sub[u] = 1;
            sub.push_back(w);
            in_sub[w] = 1;
            self(self, std::move(next), root);
            in_sub[w] = 0;
            sub.pop_back();
            for (std::size_t u : marked)
                near_sub[u] = 0;
        }
    };
    for (std::size_t root = 0; root < m; ++root) {
        sub = {root};
        in_sub[root] = 1;
        std::vector<std::size_t> ext;
        near_sub[root] = 1;
        for (std::size_t u : line[root])
            if (u > root) {
                ext.push_back(u);
                near_sub[u] = 1;
            }
        extend(extend, ext, root);
        in_sub[root] = 0;
        near_sub[root] = 0;
        for (std::size_t u : line[root])
            near_sub[u] = 0;
    }
}

// Smallest mask (in numeric order) with the given number of free bits set
// for which `violates` holds, over masks base | expand(subset of free).
template <typename Violates>
std::optional<std::uint64_t> first_in_layer(const std::vector<std::size_t> & free, std::uint64_t base,
                                            std::size_t layer, Violates & violates)
{
    const std::size_t f = free.size();
    auto expand = [&](std::uint64_t compact) {
        std::uint64_t mask = base;
        for (; compact; compact &= compact - 1)
            mask |= std::uint64_t{1} << free[static_cast<std::size_t>(std::countr_zero(compact))];
        return mask;
    };
    if (layer == 0)
        return violates(base) ? std::optional<std::uint64_t>(base) : std::nullopt;
    if (layer > f)
        return std::nullopt;
    // Split by the highest chosen free bit; tasks with a lower top bit hold
    // numerically smaller masks, so the first hit in task order wins.
    auto hits = parallel_map<std::optional<std::uint64_t>>(f - layer + 1, [&](std::size_t t) -> std::optional<std::uint64_t> {
        const std::size_t top = layer - 1 + t;
        const std::size_t rest = layer - 1;
        std::uint64_t high = std::uint64_t{1} << top;
        if (rest == 0)
            return violates(expand(high)) ? std::optional<std::uint64_t>(expand(high)) : std::nullopt;
        std::uint64_t x = (std::uint64_t{1} << rest) - 1;
        const std::uint64_t limit = std::uint64_t{1} << top;
        while (x < limit) {
            std::uint64_t mask = expand(high | x);
            if (violates(mask))
                return mask;
            std::uint64_t c = x & (~x + 1);
            std::uint64_t r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
        return std::nullopt;
    });
    for (auto & h : hits)
        if (h)
            return h;
    return std::nullopt;
}

} // namespace

BigInt copies_in_complete(std::size_t n, const Graph & pattern)
{
    if (pattern.order() > n)
        return 0;
    return falling_factorial(n, pattern.order()) / automorphism_count(pattern);
}

Rational expected_copies(std::size_t n, const Rational & p, const Graph & pattern)
{
    check_probability(p);
    Rational out = Rational(copies_in_complete(n, pattern)) * power(p, pattern.size());
    out.canonicalize();
    return out;
}

Root expected_copies(std::size_t n, const Root & p, const Graph & pattern)
{
    if (compare(p, Rational(1)) > 0)
        throw PreconditionError("probability " + p.to_string() + " exceeds 1");
    BigInt copies = copies_in_complete(n, pattern);
    return Root(power(Rational(copies), p.index) * power(p.radicand, pattern.size()), p.index).simplified();
}

Rational expected_cliques(std::size_t n, std::size_t r, const Rational & p)
{
    check_probability(p);
    return Rational(binomial(n, r)) * power(p, r * (r - (r ? 1 : 0)) / 2);
}

Rational expected_cycles(std::size_t n, std::size_t k, const Rational & p)
{
    check_probability(p);
    if (k < 3)
        throw PreconditionError("cycles need at least 3 vertices");
    Rational out(falling_factorial(n, k), BigInt(static_cast<unsigned long>(2 * k)));
    out.canonicalize();
    return out * power(p, k);
}

Rational expected_labeled_tree(std::size_t n, std::size_t j, const Rational & p)
{
    check_probability(p);
    return Rational(falling_factorial(n, j + 1)) * power(p, j);
}

SparsityReport sparsity_threshold(const Graph & host, std::size_t n, const Rational & target,
                                  const SparsityOptions & opts)
{
    const std::size_t m = host.size();
    if (m == 0)
        throw PreconditionError("sparsity threshold needs at least one edge");
    if (spanned_order(host) > n)
        throw PreconditionError("host spans " + std::to_string(spanned_order(host)) + " vertices, more than n = " +
                                std::to_string(n));
    if (sgn(target) <= 0)
        throw PreconditionError("target must be positive");
    if (! opts.heuristic && m > opts.edge_cap)
        throw ResourceGuardError("host has " + std::to_string(m) + " edges, above the exact cap of " +
                                 std::to_string(opts.edge_cap) + " (use heuristic mode for a lower bound)");
    if (! opts.heuristic && m > 40)
        throw ResourceGuardError("exact subset enumeration is limited to 40 edges");

    const double log_target = log_of(target);
    CandidateOrder order(n, target);
    SparsityReport report;
    report.n = n;
    report.target = target;
    report.lower_bound = opts.heuristic;

    struct BlockResult {
        std::optional<Candidate> best;
        std::uint64_t examined = 0;
        std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> classes;
    };
    auto absorb = [&](BlockResult & r, Candidate c, SubsetEvaluator & eval) {
        ++r.examined;
        if (opts.keep_table) {
            auto s = eval.shape(c.ids);
            auto key = eval.canonical_key(s);
            auto it = r.classes.find(key);
            if (it == r.classes.end() || (c.ids.size() == it->second.size() && binary_less(c.ids, it->second)))
                r.classes[key] = c.ids;
        }
        if (! r.best || order.better(c, *r.best))
            r.best = std::move(c);
    };

    std::vector<BlockResult> blocks;
    if (opts.heuristic) {
        blocks.resize(1);
        SubsetEvaluator eval(host, n);
        for_each_connected_edge_set(host, std::max<std::size_t>(opts.heuristic_edges, 1),
                                    [&](const std::vector<std::size_t> & ids) {
                                        absorb(blocks[0], score(eval, ids, log_target), eval);
                                    });
    }
    else {
        const std::uint64_t total = (std::uint64_t{1} << m) - 1;
        const std::uint64_t block = std::uint64_t{1} << 14;
        const std::size_t count = static_cast<std::size_t>((total + block) / block);
        // Prune against the whole host and the single edges from the start.
        double seed = -std::numeric_limits<double>::infinity();
        {
            SubsetEvaluator eval(host, n);
            seed = score(eval, ids_of(total), log_target).log_threshold;
            for (std::size_t i = 0; i < m; ++i)
                seed = std::max(seed, score(eval, std::vector<std::size_t>{i}, log_target).log_threshold);
        }
        blocks = parallel_map<BlockResult>(count, [&](std::size_t b) {
            SubsetEvaluator eval(host, n);
            BlockResult r;
            std::uint64_t lo = std::max<std::uint64_t>(1, b * block);
            std::uint64_t hi = std::min<std::uint64_t>(total, (b + 1) * block - 1);
            for (std::uint64_t mask = lo; mask <= hi; ++mask) {
                auto ids = ids_of(mask);
                if (! opts.keep_table) {
                    // Skip subsets that cannot reach the block's best even
                    // with the largest automorphism group their degrees allow.
                    auto b = eval.bound(ids);
                    double upper = (log_target - eval.log_falling(b.vertices) + b.log_aut_upper) /
                                   static_cast<double>(ids.size());
                    double floor = r.best ? std::max(seed, r.best->log_threshold) : seed;
                    if (upper < floor - 1e-9 * (1.0 + std::fabs(upper))) {
                        ++r.examined;
                        continue;
                    }
                }
                absorb(r, score(eval, ids, log_target), eval);
            }
            return r;
        });
    }

    std::optional<Candidate> best;
    std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> classes;
    for (auto & r : blocks) {
        report.subgraphs_examined += r.examined;
        if (r.best && (! best || order.better(*r.best, *best)))
            best = std::move(r.best);
        for (auto & [key, ids] : r.classes) {
            auto it = classes.find(key);
            if (it == classes.end() || binary_less(ids, it->second))
                classes[key] = ids;
        }
    }

    SubsetEvaluator eval(host, n);
    report.binding = eval.materialize(best->ids, target);
    report.value = report.binding.threshold();
    for (auto & [key, ids] : classes)
        report.table.push_back(eval.materialize(ids, target));
    std::sort(report.table.begin(), report.table.end(), [](const SubgraphThreshold & a, const SubgraphThreshold & b) {
        if (a.edge_count() != b.edge_count())
            return a.edge_count() < b.edge_count();
        return binary_less(a.edge_ids, b.edge_ids);
    });
    return report;
}

SparsityCheck check_sparse(const Graph & host, std::size_t n, const Root & q, const SparsityOptions & opts,
                           std::optional<Edge> required)
{
    const std::size_t m = host.size();
    SparsityCheck out;
    if (m == 0)
        return out;
    if (spanned_order(host) > n)
        throw PreconditionError("host spans more than n = " + std::to_string(n) + " vertices");
    if (compare(q, Rational(1)) > 0)
        throw PreconditionError("q exceeds 1");
    // E_1 X_I = N(K_n, I) >= 1 whenever I fits in K_n.
    if (compare(q, Rational(1)) == 0)
        return out;

    std::optional<std::size_t> required_id;
    if (required) {
        required_id = host.edge_index(required->u, required->v);
        if (! required_id)
            throw PreconditionError("required edge is not in the host");
    }

    // E_q X_I < 1  <=>  N^k r^e < 1 for q = r^(1/k).
    const double log_r = q.is_zero() ? 0.0 : log_of(q.radicand);
    const double k = static_cast<double>(q.index);
    auto violates_with = [&](SubsetEvaluator & eval, const auto & ids) {
        if (q.is_zero())
            return true;
        {
            // E_q X_I >= N(K_n,I) with aut at its degree-class bound; if that
            // is already clearly >= 1 the exact count is not needed.
            auto b = eval.bound(ids);
            double lhs = k * (eval.log_falling(b.vertices) - b.log_aut_upper) + static_cast<double>(ids.size()) * log_r;
            double scale = std::fabs(k * eval.log_falling(b.vertices)) + std::fabs(static_cast<double>(ids.size()) * log_r) + 1.0;
            if (lhs > 1e-9 * scale)
                return false;
        }
        auto s = eval.shape(ids);
        double log_copies = eval.log_falling(s.vertices.size()) - s.info->log_aut;
        double lhs = k * log_copies + static_cast<double>(ids.size()) * log_r;
        double scale = std::fabs(k * log_copies) + std::fabs(static_cast<double>(ids.size()) * log_r) + 1.0;
        if (std::fabs(lhs) > 1e-9 * scale)
            return lhs < 0;
        return compare_monomial_to_one({{Rational(eval.copies(s)), static_cast<long>(q.index)},
                                        {q.radicand, static_cast<long>(ids.size())}}) < 0;
    };

    std::optional<std::vector<std::size_t>> witness;
    if (opts.heuristic) {
        SubsetEvaluator eval(host, n);
        std::optional<std::vector<std::size_t>> best;
        for_each_connected_edge_set(host, std::max<std::size_t>(opts.heuristic_edges, 1),
                                    [&](const std::vector<std::size_t> & ids) {
                                        if (required_id && ! std::binary_search(ids.begin(), ids.end(), *required_id))
                                            return;
                                        if (! violates_with(eval, ids))
                                            return;
                                        if (! best || ids.size() < best->size() ||
                                            (ids.size() == best->size() && binary_less(ids, *best)))
                                            best = ids;
                                    });
        witness = best;
    }
    else {
        if (m > opts.edge_cap || m > 62)
            throw ResourceGuardError("host has " + std::to_string(m) + " edges, above the exact cap of " +
                                     std::to_string(std::min<std::size_t>(opts.edge_cap, 62)));
        std::vector<std::size_t> free;
        std::uint64_t base = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (required_id && *required_id == i)
                base |= std::uint64_t{1} << i;
            else
                free.push_back(i);
        }
        // One evaluator per worker slot would need thread ids; a
        // thread_local one keyed to this call is equivalent.
        struct Local {
            const Graph * host = nullptr;
            std::size_t n = 0;
            std::uint64_t generation = 0;
            std::optional<SubsetEvaluator> eval;
        };
        static std::atomic<std::uint64_t> generations{0};
        const std::uint64_t generation = ++generations;
        auto violates = [&](std::uint64_t mask) {
            thread_local Local local;
            if (local.generation != generation) {
                local.eval.emplace(host, n);
                local.generation = generation;
            }
            return violates_with(*local.eval, ids_of(mask));
        };
        for (std::size_t layer = base ? 0 : 1; layer <= free.size(); ++layer)
            if (auto hit = first_in_layer(free, base, layer, violates)) {
                witness = ids_of(*hit);
                break;
            }
    }

    if (witness) {
        SubsetEvaluator eval(host, n);
        out.sparse = false;
        out.witness = eval.materialize(*witness, Rational(1));
        out.witness_expectation = expected_copies(n, q, out.witness->graph);
    }
    return out;
}

Root required_L_from_count(const BigInt & count, const Graph & pattern, std::size_t n, const Root & q)
{
    if (pattern.size() == 0)
        throw PreconditionError("required L needs a pattern with at least one edge");
    Root expectation = expected_copies(n, q, pattern);
    if (expectation.is_zero())
        throw PreconditionError("E_q X_F = 0: the pattern does not fit in K_n or q = 0");
    if (sgn(count) == 0)
        return Root(0);
    Root ratio = scale(Rational(count), inverse(expectation));
    return Root(ratio.radicand, ratio.index * pattern.size()).simplified();
}

Root required_L(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                const CountOptions & count_opts, const SparsityOptions & opts)
{
    if (pattern.size() == 0)
        throw PreconditionError("required L needs a pattern with at least one edge");
    if (pattern.order() > n)
        throw PreconditionError("E_q X_F = 0 since v_F > n");
    auto check = check_sparse(host, n, q, opts);
    if (! check.sparse)
        throw PreconditionError("host is not q-sparse", describe_edges(host, check.witness->edge_ids));
    return required_L_from_count(count_copies(host, pattern, count_opts), pattern, n, q);
}

Rational peel_threshold_a(const Graph & pattern, std::size_t n, const Rational & p)
{
    if (n == 0)
        throw PreconditionError("n must be positive");
    return expected_copies(n, p, pattern) / Rational(static_cast<unsigned long>(n));
}

const char * to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::not_applicable:
        return "not_applicable";
    case Verdict::inconclusive:
        break;
    }
    return "inconclusive";
}

FallingFactorialCheck falling_factorial_bound_check(unsigned long a, unsigned long b)
{
    if (b < 1 || a < b)
        throw PreconditionError("need a >= b >= 1");
    FallingFactorialCheck out;
    out.lhs = falling_factorial(a, b);
    Rational ab = power(Rational(a), b);
    out.rhs_lower = ab / power(euler_upper(), b);
    out.rhs_upper = ab / power(euler_lower(), b);
    if (Rational(out.lhs) > out.rhs_upper)
        out.verdict = Verdict::pass;
    else if (Rational(out.lhs) <= out.rhs_lower)
        out.verdict = Verdict::fail;
    return out;
}

} // namespace kklab
