#include <kklab/verifier.hpp>

#include <kklab/density.hpp>
#include <kklab/errors.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/parallel.hpp>
#include <kklab/rng.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace kklab {

namespace {

std::string describe_edges(const std::vector<Edge> & edges)
{
    std::string s;
    for (const auto & e : edges)
        s += (s.empty() ? "" : " ") + std::to_string(e.u) + "-" + std::to_string(e.v);
    return s;
}

void require_sparse(const Graph & host, std::size_t n, const Root & q, const SparsityOptions & opts)
{
    auto check = check_sparse(host, n, q, opts);
    if (! check.sparse) {
        std::vector<Edge> es;
        for (auto id : check.witness->edge_ids)
            es.push_back(host.edges()[id]);
        throw PreconditionError("host is not q-sparse: E_q X_I = " + enclose(*check.witness_expectation, 6).upper_string() +
                                    " < 1",
                                describe_edges(es));
    }
}

std::string interval(const Rational & lo, const Rational & hi, int digits)
{
    if (lo == hi)
        return to_string(lo);
    return "[" + decimal_floor(lo, digits) + ", " + decimal_ceil(hi, digits) + "]";
}

std::string interval(const Enclosure & e)
{
    return interval(e.lower, e.upper, e.digits);
}

// Display-only bounds on a real known to double precision.
std::pair<Rational, Rational> approx_bounds(double x)
{
    double slack = 1e-12 * (1.0 + std::fabs(x));
    return {Rational(x - slack), Rational(x + slack)};
}

Rational lower_of(const Root & x, int digits) { return enclose(x, digits).lower; }
Rational upper_of(const Root & x, int digits) { return enclose(x, digits).upper; }

// Sign of x^a - y^b.
int compare_powers(const BigInt & x, unsigned long a, const BigInt & y, unsigned long b)
{
    BigInt lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), x.get_mpz_t(), a);
    mpz_pow_ui(rhs.get_mpz_t(), y.get_mpz_t(), b);
    return cmp(lhs, rhs);
}

nlohmann::json inputs_of(const Graph & host, std::size_t n, const Root & q)
{
    return {{"graph6", to_graph6(host)}, {"n", std::to_string(n)}, {"q", q.to_string()}};
}

} // namespace

nlohmann::json to_json(const PropositionReport & r)
{
    nlohmann::json j = {{"prop_id", r.prop_id}, {"inputs", r.inputs},      {"relation", r.relation},
                        {"lhs", r.lhs},         {"rhs", r.rhs},            {"verdict", to_string(r.verdict)}};
    if (r.witness)
        j["witness"] = *r.witness;
    if (r.note)
        j["note"] = *r.note;
    return j;
}

std::vector<PropositionReport> verify_structure(const Graph & host, std::size_t n, const Root & q,
                                                const VerifyOptions & opts)
{
    if (n < 2)
        throw PreconditionError("structural bounds need n >= 2");
    require_sparse(host, n, q, opts.sparsity);
    const int digits = opts.digits;
    const nlohmann::json inputs = inputs_of(host, n, q);
    const BigInt big_n = static_cast<unsigned long>(n);
    const double log2n = std::log2(static_cast<double>(n));
    const auto [log2n_lo, log2n_hi] = approx_bounds(log2n);
    std::vector<PropositionReport> out;

    // Max degree against max{log n, 2enq}.
    {
        PropositionReport r;
        r.prop_id = "max_degree";
        r.inputs = inputs;
        r.relation = "Delta_H <= max{log2 n, 2 e n q}";
        std::size_t delta = host.order() ? host.max_degree() : 0;
        Vertex where = 0;
        for (Vertex v = 0; v < host.order(); ++v)
            if (host.degree(v) == delta) {
                where = v;
                break;
            }
        r.lhs = std::to_string(delta);
        Root two_n_q = scale(Rational(2 * static_cast<unsigned long>(n)), q);
        Root low = scale(euler_lower(), two_n_q), high = scale(euler_upper(), two_n_q);
        Rational rhs_lo = std::max(log2n_lo, lower_of(low, digits));
        Rational rhs_hi = std::max(log2n_hi, upper_of(high, digits));
        r.rhs = interval(rhs_lo, rhs_hi, digits);
        bool log_part = compare_powers(2, delta, big_n, 1) <= 0; // 2^Delta <= n
        const Rational d(static_cast<unsigned long>(delta));
        if (log_part || compare(low, d) >= 0)
            r.verdict = Verdict::pass;
        else if (compare(high, d) < 0)
            r.verdict = Verdict::fail;
        if (r.verdict == Verdict::fail)
            r.witness = "vertex " + std::to_string(where) + " of degree " + std::to_string(delta);
        out.push_back(std::move(r));
    }

    DensityValue m = host.order() ? max_density(host) : DensityValue{0, 1, {}};
    const Rational m_value = m.value();
    const auto a = static_cast<unsigned long>(m_value.get_num().get_ui());
    const auto b = static_cast<unsigned long>(m_value.get_den().get_ui());
    const unsigned long e_h = host.size();
    auto witness_of_density = [&] {
        std::string s = "vertices";
        for (auto v : m.witness)
            s += " " + std::to_string(v);
        return s;
    };
    const bool small_q = compare(q, Rational(1, 2)) <= 0;
    const bool q_below_one = compare(q, Rational(1)) < 0;
    const char * regime_note = "the log n form needs n q^(log2 n) <= 1, i.e. q <= 1/2";

    // m(H) < log n  <=>  2^a < n^b for m = a/b.
    {
        PropositionReport r;
        r.prop_id = "density_log";
        r.inputs = inputs;
        r.relation = "m(H) < log2 n";
        r.lhs = to_string(m_value);
        r.rhs = interval(log2n_lo, log2n_hi, digits);
        if (! small_q) {
            r.verdict = Verdict::not_applicable;
            r.note = regime_note;
        }
        else {
            r.verdict = compare_powers(2, a, big_n, b) < 0 ? Verdict::pass : Verdict::fail;
            if (r.verdict == Verdict::fail)
                r.witness = witness_of_density();
        }
        out.push_back(std::move(r));
    }

    // With q = n^{-c} (c = log(1/q)/log n, the largest admissible c):
    // m < 1/c  <=>  (1/q)^a < n^b  <=>  (1/r)^a < n^{b k} for q = r^(1/k).
    const double c = q.is_zero() ? INFINITY : -std::log(q.approx()) / std::log(static_cast<double>(n));
    {
        PropositionReport r;
        r.prop_id = "density_c";
        r.inputs = inputs;
        r.relation = "m(H) < 1/c where q = n^-c";
        r.lhs = to_string(m_value);
        if (! q_below_one) {
            r.rhs = "inf";
            r.verdict = Verdict::not_applicable;
            r.note = "c = 0 at q = 1";
        }
        else {
            auto [lo, hi] = approx_bounds(std::isinf(c) ? 0.0 : 1.0 / c);
            r.rhs = interval(lo, hi, digits);
            int sign = q.is_zero() ? -1
                                   : compare_monomial_to_one({{Rational(1) / q.radicand, static_cast<long>(a)},
                                                              {Rational(big_n), -static_cast<long>(b * q.index)}});
            r.verdict = (a == 0 || sign < 0) ? Verdict::pass : Verdict::fail;
            if (r.verdict == Verdict::fail)
                r.witness = witness_of_density();
        }
        out.push_back(std::move(r));
    }

    // e_H < n log n  <=>  2^{e_H} < n^n.
    {
        PropositionReport r;
        r.prop_id = "edges_log";
        r.inputs = inputs;
        r.relation = "e_H < n log2 n";
        r.lhs = std::to_string(e_h);
        r.rhs = interval(log2n_lo * static_cast<unsigned long>(n), log2n_hi * static_cast<unsigned long>(n), digits);
        if (! small_q) {
            r.verdict = Verdict::not_applicable;
            r.note = regime_note;
        }
        else
            r.verdict = compare_powers(2, e_h, big_n, n) < 0 ? Verdict::pass : Verdict::fail;
        out.push_back(std::move(r));
    }

    // e_H < n/c  <=>  (1/r)^{e_H} < n^{n k}.
    {
        PropositionReport r;
        r.prop_id = "edges_c";
        r.inputs = inputs;
        r.relation = "e_H < n/c where q = n^-c";
        r.lhs = std::to_string(e_h);
        if (! q_below_one) {
            r.rhs = "inf";
            r.verdict = Verdict::not_applicable;
            r.note = "c = 0 at q = 1";
        }
        else {
            auto [lo, hi] = approx_bounds(std::isinf(c) ? 0.0 : static_cast<double>(n) / c);
            r.rhs = interval(lo, hi, digits);
            int sign = q.is_zero() ? -1
                                   : compare_monomial_to_one({{Rational(1) / q.radicand, static_cast<long>(e_h)},
                                                              {Rational(big_n), -static_cast<long>(n * q.index)}});
            r.verdict = (e_h == 0 || sign < 0) ? Verdict::pass : Verdict::fail;
        }
        out.push_back(std::move(r));
    }
    return out;
}

PropositionReport verify_packing(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                                 const VerifyOptions & opts)
{
    require_sparse(host, n, q, opts.sparsity);
    PropositionReport r;
    r.prop_id = "packing";
    r.inputs = inputs_of(host, n, q);
    r.inputs["pattern"] = to_graph6(pattern);
    r.relation = "nu(H,J) <= e E_q X_J";
    auto pack = packing(host, pattern, PackingMode::exact, opts.packing);
    Root expectation = expected_copies(n, q, pattern);
    Root low = scale(euler_lower(), expectation), high = scale(euler_upper(), expectation);
    r.lhs = std::to_string(pack.value);
    r.rhs = interval(lower_of(low, opts.digits), upper_of(high, opts.digits), opts.digits);
    const Rational nu(static_cast<unsigned long>(pack.value));
    if (compare(low, nu) >= 0)
        r.verdict = Verdict::pass;
    else if (compare(high, nu) < 0)
        r.verdict = Verdict::fail;
    if (r.verdict != Verdict::pass) {
        std::string s;
        for (const auto & c : pack.chosen) {
            std::vector<Edge> es;
            for (auto id : c.edges)
                es.push_back(host.edges()[id]);
            s += (s.empty() ? "" : "; ") + describe_edges(es);
        }
        r.witness = s;
    }
    return r;
}

PropositionReport verify_main_inequality(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                                         const Rational & L, const VerifyOptions & opts)
{
    if (sgn(L) <= 0)
        throw PreconditionError("L must be positive");
    require_sparse(host, n, q, opts.sparsity);
    if (pattern.size() == 0)
        throw PreconditionError("pattern needs at least one edge");
    PropositionReport r;
    r.prop_id = "main_inequality";
    r.inputs = inputs_of(host, n, q);
    r.inputs["pattern"] = to_graph6(pattern);
    r.inputs["L"] = to_string(L);
    r.relation = "N(H,F) < L^e_F E_q X_F";
    BigInt count = count_copies(host, pattern, opts.counting);
    Root rhs = scale(power(L, pattern.size()), expected_copies(n, q, pattern));
    r.lhs = to_string(count);
    r.rhs = interval(enclose(rhs, opts.digits));
    r.verdict = compare(rhs, Rational(count)) > 0 ? Verdict::pass : Verdict::fail;
    Root needed = required_L_from_count(count, pattern, n, q);
    r.note = "required_L = " + interval(enclose(needed, opts.digits)) + " exact " + needed.to_string();
    return r;
}

PeelResult peel_min_degree(const Graph & host, const Graph & pattern, const Rational & a,
                           std::optional<std::uint64_t> shuffle_seed, std::size_t copy_cap)
{
    const std::size_t n = host.order();
    auto copies = enumerate_copies(host, pattern, copy_cap);
    PeelResult out;
    out.copies = copies.size();
    out.hypothesis = Rational(static_cast<unsigned long>(copies.size())) > a * static_cast<unsigned long>(n);

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t c = 0; c < copies.size(); ++c)
        for (auto v : copies[c].vertices)
            incident[v].push_back(c);
    std::vector<std::size_t> degree(n);
    for (Vertex v = 0; v < n; ++v)
        degree[v] = incident[v].size();
    std::vector<bool> alive(n, true), copy_alive(copies.size(), true);
    auto low = [&](Vertex v) { return alive[v] && Rational(static_cast<unsigned long>(degree[v])) < a; };

    std::optional<Stream> stream;
    if (shuffle_seed)
        stream.emplace(*shuffle_seed, 0x9ee1);
    while (true) {
        std::vector<Vertex> candidates;
        for (Vertex v = 0; v < n; ++v)
            if (low(v)) {
                candidates.push_back(v);
                if (! stream)
                    break;
            }
        if (candidates.empty())
            break;
        Vertex victim = stream ? candidates[stream->below(candidates.size())] : candidates.front();
        alive[victim] = false;
        out.deletion_order.push_back(victim);
        for (auto c : incident[victim]) {
            if (! copy_alive[c])
                continue;
            copy_alive[c] = false;
            for (auto u : copies[c].vertices)
                --degree[u];
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (alive[v])
            out.survivors.push_back(v);
    if (! out.survivors.empty()) {
        out.min_degree = degree[out.survivors.front()];
        for (auto v : out.survivors)
            out.min_degree = std::min(out.min_degree, degree[v]);
    }
    return out;
}

TreeOrder tree_order(const Graph & tree)
{
    if (! tree.is_tree())
        throw PreconditionError("pattern is not a tree");
    const std::size_t k = tree.order();
    TreeOrder t;
    // Labels already form a BFS order from 0 iff every later vertex has one
    // earlier neighbour and those parents never decrease.
    bool identity = true;
    long last_parent = 0;
    std::vector<long> parent(k, -1);
    for (Vertex i = 1; i < k && identity; ++i) {
        std::size_t earlier = 0;
        tree.neighbors(i).for_each([&](Vertex w) {
            if (w < i) {
                ++earlier;
                parent[i] = w;
            }
        });
        identity = earlier == 1 && parent[i] >= last_parent;
        last_parent = parent[i];
    }
    if (identity)
        for (Vertex v = 0; v < k; ++v)
            t.order.push_back(v);
    else {
        std::vector<bool> seen(k, false);
        std::deque<Vertex> queue{0};
        seen[0] = true;
        while (! queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            t.order.push_back(v);
            tree.neighbors(v).for_each([&](Vertex w) {
                if (! seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            });
        }
    }
    t.position.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        t.position[t.order[i]] = i;
    t.parent.assign(k, -1);
    t.children.assign(k, 0);
    for (std::size_t i = 1; i < k; ++i) {
        tree.neighbors(t.order[i]).for_each([&](Vertex w) {
            if (t.position[w] < i)
                t.parent[i] = static_cast<long>(t.position[w]);
        });
        ++t.children[static_cast<std::size_t>(t.parent[i])];
    }
    return t;
}

unsigned long big_degree_floor(const Rational & eps, const Rational & d)
{
    if (sgn(eps) <= 0 || sgn(d) <= 0)
        throw PreconditionError("eps and d must be positive");
    Rational x = eps * d * d;
    BigInt floor_x = x.get_num() / x.get_den();
    BigInt t;
    mpz_sqrt(t.get_mpz_t(), floor_x.get_mpz_t());
    while (Rational(t * t) < x)
        ++t;
    return t.get_ui();
}

FitRecord fit_decompose(const Graph & host, const Graph & tree, std::span<const Vertex> copy, const Rational & eps,
                        const Rational & d)
{
    FitRecord r;
    r.tree = tree_order(tree);
    const std::size_t k = tree.order();
    const unsigned long lo = big_degree_floor(eps, d);
    const auto max_f = static_cast<unsigned long>(tree.max_degree());
    if (Rational(max_f * max_f) >= eps * d * d)
        throw PreconditionError("need sqrt(eps) d > Delta_F = " + std::to_string(max_f));
    if (copy.size() != k)
        throw PreconditionError("copy has the wrong length");
    {
        std::set<Vertex> distinct(copy.begin(), copy.end());
        bool ok = distinct.size() == k && std::all_of(copy.begin(), copy.end(), [&](Vertex v) { return v < host.order(); });
        for (const auto & e : tree.edges())
            ok = ok && host.adjacent(copy[e.u], copy[e.v]);
        if (! ok)
            throw PreconditionError("copy is not an embedding of the tree in the host");
    }

    r.w.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        r.w[i] = copy[r.tree.order[i]];
    r.residual.assign(k, 0);
    r.big.assign(k, false);
    r.d.assign(k, 0);
    r.b.assign(k, 0);
    std::set<Edge> r_hat;
    std::set<Vertex> r_vertices(r.w.begin(), r.w.end());
    VertexSet earlier(host.order());
    for (std::size_t i = 0; i < k; ++i) {
        const VertexSet & nb = host.neighbors(r.w[i]);
        const std::size_t back = nb.intersection_count(earlier);
        r.residual[i] = nb.count() - back;
        r.b[i] = i == 0 ? 0 : back - 1; // the parent is an earlier neighbour
        r.big[i] = r.residual[i] >= lo;
        r.d[i] = r.big[i] ? r.residual[i] : r.tree.children[i];
        if (r.big[i]) {
            r.D += r.d[i];
            nb.for_each([&](Vertex u) {
                if (! earlier.test(u)) {
                    r_hat.insert(make_edge(r.w[i], u));
                    r_vertices.insert(u);
                }
            });
        }
        earlier.set(r.w[i]);
    }
    for (const auto & e : tree.edges())
        r_hat.insert(make_edge(copy[e.u], copy[e.v]));
    r.r_hat.assign(r_hat.begin(), r_hat.end());
    r.r_hat_vertices.assign(r_vertices.begin(), r_vertices.end());

    std::vector<long> index_of(host.order(), -1);
    for (std::size_t i = 0; i < k; ++i)
        index_of[r.w[i]] = static_cast<long>(i);
    r.back_edges.assign((k * k + 63) / 64, 0);
    for (const auto & e : r.r_hat) {
        long x = index_of[e.u], y = index_of[e.v];
        if (x < 0 || y < 0)
            continue;
        auto i = static_cast<std::size_t>(std::min(x, y)), j = static_cast<std::size_t>(std::max(x, y));
        if (r.tree.parent[j] == static_cast<long>(i))
            continue;
        std::size_t bit = i * k + j;
        r.back_edges[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    return r;
}

bool fits(const FitRecord & record, unsigned long big_floor)
{
    const std::size_t k = record.w.size();
    std::vector<std::size_t> forward(k, 0);
    std::map<Vertex, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i)
        index[record.w[i]] = i;
    // Edges of R-hat leaving w_i towards vertices that are not earlier.
    for (const auto & e : record.r_hat) {
        auto iu = index.find(e.u), iv = index.find(e.v);
        if (iu != index.end() && iv != index.end())
            ++forward[std::min(iu->second, iv->second)];
        else if (iu != index.end())
            ++forward[iu->second];
        else if (iv != index.end())
            ++forward[iv->second];
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (record.big[i]) {
            if (record.d[i] < big_floor || forward[i] != record.d[i] || record.residual[i] != record.d[i])
                return false;
        }
        else if (record.residual[i] >= big_floor || forward[i] != record.tree.children[i] ||
                 record.d[i] != record.tree.children[i])
            return false;
    }
    return true;
}

FitPartition verify_fit_partition(const Graph & host, const Graph & tree, const Rational & eps, const Rational & d,
                                  const VerifyOptions & opts, std::size_t copy_cap)
{
    const unsigned long lo = big_degree_floor(eps, d);
    const auto max_f = static_cast<unsigned long>(tree.max_degree());
    if (Rational(max_f * max_f) >= eps * d * d)
        throw PreconditionError("need sqrt(eps) d > Delta_F = " + std::to_string(max_f));

    std::vector<std::vector<Vertex>> embeddings;
    for_each_embedding(
        host, tree,
        [&](std::span<const Vertex> map) {
            if (embeddings.size() == copy_cap)
                throw ResourceGuardError("more than " + std::to_string(copy_cap) + " labeled copies");
            embeddings.emplace_back(map.begin(), map.end());
            return true;
        },
        opts.counting);

    struct Outcome {
        std::vector<std::size_t> d;
        std::vector<std::uint64_t> back_edges;
        bool fit = false;
    };
    auto outcomes = parallel_map<Outcome>(embeddings.size(), [&](std::size_t c) {
        FitRecord rec = fit_decompose(host, tree, embeddings[c], eps, d);
        return Outcome{rec.d, rec.back_edges, fits(rec, lo)};
    });

    std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint64_t>>, std::uint64_t> classes;
    std::uint64_t unfit = 0;
    for (auto & o : outcomes) {
        ++classes[{o.d, o.back_edges}];
        unfit += ! o.fit;
    }

    FitPartition out;
    out.labeled_copies = count_labeled(host, tree, opts.counting);
    std::uint64_t total = 0;
    for (auto & [key, count] : classes) {
        out.classes.push_back({key.first, key.second, count});
        total += count;
    }
    auto & r = out.report;
    r.prop_id = "fit_partition";
    r.inputs = {{"graph6", to_graph6(host)}, {"tree", to_graph6(tree)}, {"eps", to_string(eps)}, {"d", to_string(d)}};
    r.relation = "labeled copies = sum over classes of fitting copies";
    r.lhs = to_string(out.labeled_copies);
    r.rhs = std::to_string(total);
    r.verdict = (out.labeled_copies == static_cast<unsigned long>(total) && unfit == 0) ? Verdict::pass : Verdict::fail;
    r.note = std::to_string(classes.size()) + " classes, smallest big degree " + std::to_string(lo);
    if (unfit)
        r.witness = std::to_string(unfit) + " copies whose decomposition does not fit";
    return out;
}

LegalCount count_legal_sequences(const std::vector<std::size_t> & f, unsigned long lo, unsigned long D,
                                 unsigned long d_cap)
{
    if (lo == 0)
        throw PreconditionError("the smallest big degree must be positive");
    if (d_cap < lo)
        throw PreconditionError("d_cap must be at least ceil(sqrt(eps) d) = " + std::to_string(lo));
    for (auto fi : f)
        if (fi >= lo)
            throw PreconditionError("child count " + std::to_string(fi) + " is not below " + std::to_string(lo) +
                                    ", so big and small would overlap");

    // ways[s] = sequences over the indices so far with big-sum s.
    std::vector<BigInt> ways(D + 1, 0);
    ways[0] = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<BigInt> next = ways; // index i small
        for (unsigned long s = lo; s <= D; ++s)
            for (unsigned long v = lo; v <= std::min(d_cap, s); ++v)
                next[s] += ways[s - v];
        ways = std::move(next);
    }

    LegalCount out;
    out.count = ways[D];
    out.cap_binding = d_cap < D;
    const unsigned long positions = f.size();
    const unsigned long s_max = std::min<unsigned long>(positions, D / lo);
    for (unsigned long s = 0; s <= s_max; ++s) {
        BigInt ways_to_split = s == 0 ? BigInt(D == 0 ? 1 : 0) : (D == 0 ? BigInt(0) : binomial(D - 1, s - 1));
        out.binomial_bound += binomial(positions, s) * ways_to_split;
    }
    auto & r = out.report;
    r.prop_id = "legal_sequences";
    nlohmann::json fj = nlohmann::json::array();
    for (auto fi : f)
        fj.push_back(fi);
    r.inputs = {{"f", fj}, {"big_floor", std::to_string(lo)}, {"D", std::to_string(D)}, {"d_cap", std::to_string(d_cap)}};
    r.relation = "count <= sum_s C(j+1, s) C(D-1, s-1)";
    r.lhs = to_string(out.count);
    r.rhs = to_string(out.binomial_bound);
    r.verdict = out.count <= out.binomial_bound ? Verdict::pass : Verdict::fail;
    if (out.cap_binding)
        r.note = "d_cap < D: the count is restricted by the cap";
    return out;
}

LegalCount count_legal_sequences(const std::vector<std::size_t> & f, const Rational & eps, const Rational & d,
                                 unsigned long D, unsigned long d_cap)
{
    return count_legal_sequences(f, big_degree_floor(eps, d), D, d_cap);
}

EllHat ell_hat(std::size_t n, const Root & q, const Rational & delta)
{
    if (n < 2)
        throw PreconditionError("ell_hat needs n >= 2");
    if (compare(q, Rational(1, static_cast<unsigned long>(n))) <= 0 || compare(q, Rational(1)) >= 0)
        throw PreconditionError("ell_hat needs 1/n < q < 1 (so that nq = n^c with 0 < c < 1)");
    if (sgn(delta) <= 0 || delta >= 1)
        throw PreconditionError("delta must lie in (0, 1)");
    const long a = static_cast<long>(delta.get_num().get_si());
    const long b = static_cast<long>(delta.get_den().get_si());
    const long k = static_cast<long>(q.index);
    const Rational big_n(static_cast<unsigned long>(n));
    // (nq)^{l+delta} < n, raised to the power b k:
    // n^{k(b l + a) - k b} r^{b l + a} < 1 for q = r^(1/k).
    auto below = [&](unsigned long l) {
        long t = b * static_cast<long>(l) + a;
        return compare_monomial_to_one({{big_n, k * t - k * b}, {q.radicand, t}}) < 0;
    };
    unsigned long hi = 1;
    while (below(hi))
        hi *= 2;
    unsigned long lo = hi / 2; // below(lo) holds: lo = 0 always holds since nq < n
    while (hi - lo > 1) {
        unsigned long mid = lo + (hi - lo) / 2;
        (below(mid) ? lo : hi) = mid;
    }
    EllHat out;
    out.value = lo;
    out.below_at_value = below(lo);
    out.reached_at_next = ! below(lo + 1);
    return out;
}

} // namespace kklab
