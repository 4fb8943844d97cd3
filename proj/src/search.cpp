#include <kklab/search.hpp>

#include <kklab/catalog.hpp>
#include <kklab/errors.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/parallel.hpp>
#include <kklab/report.hpp>
#include <kklab/rng.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace kklab {

bool ranks_before(const LeaderEntry & a, const LeaderEntry & b)
{
    if (a.copies != b.copies)
        return a.copies > b.copies;
    if (a.graph.size() != b.graph.size())
        return a.graph.size() < b.graph.size();
    return a.signature < b.signature;
}

namespace {

using PairKey = std::array<std::uint64_t, 2>;

struct PairKeyHash {
    std::size_t operator()(const PairKey & k) const noexcept
    {
        return static_cast<std::size_t>((k[0] * 0x9E3779B97F4A7C15ULL) ^ (k[1] + 0xBF58476D1CE4E5B9ULL));
    }
};

// Keeps the best `capacity` entries, one per signature.
class Board {
  public:
    explicit Board(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

    bool admits(const BigInt & copies, std::size_t edges) const
    {
        if (entries_.size() < capacity_)
            return true;
        const LeaderEntry & worst = entries_.back();
        return copies > worst.copies || (copies == worst.copies && edges <= worst.graph.size());
    }

    void offer(LeaderEntry e)
    {
        for (auto & x : entries_)
            if (x.signature == e.signature) {
                if (ranks_before(e, x) || (e.copies == x.copies && e.graph.size() == x.graph.size() && e.move < x.move))
                    x = std::move(e);
                sort();
                return;
            }
        entries_.push_back(std::move(e));
        sort();
        if (entries_.size() > capacity_)
            entries_.pop_back();
    }

    std::vector<LeaderEntry> & entries() { return entries_; }

  private:
    void sort() { std::stable_sort(entries_.begin(), entries_.end(), ranks_before); }

    std::size_t capacity_;
    std::vector<LeaderEntry> entries_;
};

struct ChainStats {
    double t0 = 0;
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t repairs = 0;
    std::uint64_t rejected_by_repair = 0;
    std::uint64_t rejected_by_guard = 0;
    std::uint64_t audits = 0;
    std::uint64_t audit_failures = 0;
    std::vector<LeaderEntry> board;
};

Edge repair_edge(const Graph & g, const std::vector<std::size_t> & witness)
{
    const Edge * best = nullptr;
    std::size_t best_sum = 0;
    for (auto id : witness) {
        const Edge & e = g.edges()[id];
        std::size_t sum = g.degree(e.u) + g.degree(e.v);
        if (! best || sum > best_sum || (sum == best_sum && e < *best)) {
            best = &e;
            best_sum = sum;
        }
    }
    return *best;
}

} // namespace

SearchResult extremal_search(std::size_t n, const Root & q, const Graph & pattern, const SearchOptions & opts)
{
    if (pattern.size() == 0)
        throw PreconditionError("the pattern needs at least one edge");
    if (opts.host_cap < 2 || opts.host_cap > 16)
        throw PreconditionError("host_cap must lie in [2, 16]");
    if (opts.host_cap > n)
        throw PreconditionError("host_cap exceeds n");
    if (pattern.order() > n)
        throw PreconditionError("E_q X_F = 0 since v_F > n");
    if (! is_q_sparse(families::path(1), n, q))
        throw PreconditionError("no nonempty host is q-sparse: a single edge has E_q X = C(n,2) q < 1");

    const Root expectation = expected_copies(n, q, pattern);
    const double log_e = std::log(enclose(expectation, 15).lower.get_d());
    const double e_f = static_cast<double>(pattern.size());
    auto score_of = [&](const BigInt & copies) {
        return sgn(copies) == 0 ? 0.0 : std::exp((log_of(copies) - log_e) / e_f);
    };

    const std::size_t cap = opts.host_cap;
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < cap; ++u)
        for (Vertex v = u + 1; v < cap; ++v)
            pairs.push_back({u, v});
    auto pair_id = [&](const Edge & e) { return e.u * cap - e.u * (e.u + 1) / 2 + (e.v - e.u - 1); };

    auto run_chain = [&](std::size_t chain) {
        ChainStats stats;
        Stream rng(opts.seed, chain, 0);
        Stream audit(opts.seed, chain, 1);
        std::unordered_map<PairKey, BigInt, PairKeyHash> counts;
        // Witness (as host edges) for the host key with the keyed edge required; empty when sparse.
        std::unordered_map<PairKey, std::optional<std::vector<std::size_t>>, PairKeyHash> witnesses;
        std::unordered_map<PairKey, std::string, PairKeyHash> signatures;

        auto key_of = [&](const Graph & g) {
            PairKey k{0, 0};
            for (const Edge & e : g.edges()) {
                auto id = pair_id(e);
                k[id / 64] |= std::uint64_t{1} << (id % 64);
            }
            return k;
        };
        auto copies_of = [&](const Graph & g, const PairKey & k) -> const BigInt & {
            auto it = counts.find(k);
            if (it == counts.end())
                it = counts.emplace(k, count_copies(g, pattern, opts.counting)).first;
            return it->second;
        };
        auto signature_of = [&](const Graph & g, const PairKey & k) -> const std::string & {
            auto it = signatures.find(k);
            if (it == signatures.end())
                it = signatures.emplace(k, canonical_signature(g)).first;
            return it->second;
        };

        Board board(opts.top_k);
        Graph current(cap);
        PairKey current_key = key_of(current);
        BigInt current_copies = copies_of(current, current_key);
        double current_score = score_of(current_copies);
        auto record = [&](const Graph & g, const PairKey & k, const BigInt & copies, std::uint64_t move) {
            if (! board.admits(copies, g.size()))
                return;
            LeaderEntry e;
            e.graph = g;
            e.signature = signature_of(g, k);
            e.copies = copies;
            e.move = move;
            e.chain = chain;
            board.offer(std::move(e));
        };
        record(current, current_key, current_copies, 0);

        std::vector<double> drops;
        double temperature = 0;
        for (std::uint64_t move = 1; move <= opts.budget; ++move) {
            ++stats.proposed;
            const Edge toggled = pairs[static_cast<std::size_t>(rng.below(pairs.size()))];
            Graph candidate;
            if (current.adjacent(toggled.u, toggled.v)) {
                candidate = current.without_edge(toggled); // subgraphs of sparse hosts are sparse
            }
            else {
                candidate = current.with_edge(toggled);
                bool rejected = false;
                try {
                    while (true) {
                        PairKey k = key_of(candidate);
                        auto it = witnesses.find(k);
                        if (it == witnesses.end()) {
                            auto check = check_sparse(candidate, n, q, opts.sparsity, toggled);
                            std::optional<std::vector<std::size_t>> w;
                            if (! check.sparse)
                                w = check.witness->edge_ids;
                            it = witnesses.emplace(k, std::move(w)).first;
                        }
                        if (! it->second)
                            break;
                        Edge drop = repair_edge(candidate, *it->second);
                        if (drop == toggled) {
                            rejected = true;
                            ++stats.rejected_by_repair;
                            break;
                        }
                        candidate = candidate.without_edge(drop);
                        ++stats.repairs;
                    }
                }
                catch (const ResourceGuardError &) {
                    rejected = true;
                    ++stats.rejected_by_guard;
                }
                if (rejected)
                    continue;
            }

            PairKey k = key_of(candidate);
            const BigInt & copies = copies_of(candidate, k);
            const double score = score_of(copies);
            const double delta = score - current_score;
            bool accept = delta >= 0;
            if (! accept) {
                if (drops.size() < opts.calibration_moves) {
                    drops.push_back(-delta);
                    double mean = 0;
                    for (double d : drops)
                        mean += d;
                    mean /= static_cast<double>(drops.size());
                    stats.t0 = mean / std::log(2.0);
                    temperature = stats.t0 * std::pow(opts.cooling, static_cast<double>(stats.accepted));
                }
                accept = temperature > 0 && rng.uniform() < std::exp(delta / temperature);
            }
            if (! accept)
                continue;
            current = std::move(candidate);
            current_key = k;
            current_copies = copies;
            current_score = score;
            ++stats.accepted;
            temperature *= opts.cooling;
            if (audit.uniform() < opts.audit_rate) {
                ++stats.audits;
                try {
                    if (! is_q_sparse(current, n, q, opts.sparsity))
                        ++stats.audit_failures;
                }
                catch (const ResourceGuardError &) {
                }
            }
            record(current, current_key, current_copies, move);
        }
        stats.board = std::move(board.entries());
        return stats;
    };

    auto chains = parallel_map<ChainStats>(std::max<std::size_t>(opts.chains, 1), run_chain);

    SearchResult result;
    result.expectation = expectation;
    Board merged(opts.top_k);
    nlohmann::json per_chain = nlohmann::json::array();
    for (std::size_t c = 0; c < chains.size(); ++c) {
        auto & s = chains[c];
        for (auto & e : s.board)
            merged.offer(std::move(e));
        per_chain.push_back({{"chain", c},
                             {"t0", s.t0},
                             {"proposed", std::to_string(s.proposed)},
                             {"accepted", std::to_string(s.accepted)},
                             {"repairs", std::to_string(s.repairs)},
                             {"rejected_by_repair", std::to_string(s.rejected_by_repair)},
                             {"rejected_by_guard", std::to_string(s.rejected_by_guard)},
                             {"audits", std::to_string(s.audits)},
                             {"audit_failures", std::to_string(s.audit_failures)}});
    }
    result.leaderboard = std::move(merged.entries());
    for (auto & e : result.leaderboard)
        e.score = required_L_from_count(e.copies, pattern, n, q);
    result.metadata = {{"n", std::to_string(n)},
                       {"q", root_token(q)},
                       {"pattern", to_graph6(pattern)},
                       {"host_cap", std::to_string(opts.host_cap)},
                       {"budget", std::to_string(opts.budget)},
                       {"seed", std::to_string(opts.seed)},
                       {"cooling", opts.cooling},
                       {"calibration_moves", std::to_string(opts.calibration_moves)},
                       {"streams", "chain c draws moves from Stream(seed, c, 0) and audits from Stream(seed, c, 1)"},
                       {"chains", per_chain}};
    return result;
}

SweepResult exhaustive_sweep(std::size_t n, const Root & q, const Graph & pattern, std::size_t v_cap,
                             const SparsityOptions & sparsity, const CountOptions & counting)
{
    if (pattern.size() == 0)
        throw PreconditionError("the pattern needs at least one edge");
    if (v_cap > 8)
        throw ResourceGuardError("the exhaustive sweep is limited to 8 vertices");
    if (v_cap > n)
        throw PreconditionError("v_cap exceeds n");
    if (pattern.order() > n)
        throw PreconditionError("E_q X_F = 0 since v_F > n");
    SparsityOptions opts = sparsity;
    opts.edge_cap = std::max<std::size_t>(opts.edge_cap, v_cap * (v_cap - 1) / 2);

    SweepResult out;
    out.expectation = expected_copies(n, q, pattern);
    auto catalog = graph_catalog(v_cap);
    out.hosts = catalog.size();
    struct Row {
        bool sparse = false;
        BigInt copies;
    };
    auto rows = parallel_map<Row>(catalog.size(), [&](std::size_t i) {
        Row r;
        r.sparse = is_q_sparse(catalog[i], n, q, opts);
        if (r.sparse)
            r.copies = count_copies(catalog[i], pattern, counting);
        return r;
    });
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (! rows[i].sparse)
            continue;
        ++out.sparse_hosts;
        if (catalog[i].size() > 0)
            out.feasible = true;
        LeaderEntry e;
        e.graph = catalog[i];
        e.signature = canonical_signature(catalog[i]);
        e.copies = rows[i].copies;
        e.score = required_L_from_count(e.copies, pattern, n, q);
        if (! out.maximizers.empty() && e.copies < out.maximizers.front().copies)
            continue;
        if (! out.maximizers.empty() && e.copies > out.maximizers.front().copies)
            out.maximizers.clear();
        out.maximizers.push_back(std::move(e));
    }
    if (! out.feasible) {
        out.maximizers.clear();
        return out;
    }
    std::sort(out.maximizers.begin(), out.maximizers.end(), ranks_before);
    out.best = out.maximizers.front();
    return out;
}

nlohmann::json to_json(const LeaderEntry & e, const Root & expectation, std::uint64_t seed, int digits)
{
    return {{"graph6", to_graph6(e.graph)},
            {"canonical", e.signature},
            {"edges", std::to_string(e.graph.size())},
            {"score", root_json(e.score, digits)},
            {"score_enclosure", enclosure_json(e.score, digits)},
            {"N", to_string(e.copies)},
            {"E_q", root_json(expectation, digits)},
            {"moves", std::to_string(e.move)},
            {"chain", std::to_string(e.chain)},
            {"seed", std::to_string(seed)}};
}

nlohmann::json to_json(const SearchResult & r, std::uint64_t seed, int digits)
{
    nlohmann::json board = nlohmann::json::array();
    for (const auto & e : r.leaderboard)
        board.push_back(to_json(e, r.expectation, seed, digits));
    return {{"leaderboard", board}, {"metadata", r.metadata}};
}

nlohmann::json to_json(const SweepResult & r, int digits)
{
    nlohmann::json maximizers = nlohmann::json::array();
    for (const auto & e : r.maximizers) {
        auto j = to_json(e, r.expectation, 0, digits);
        j.erase("moves");
        j.erase("chain");
        j.erase("seed");
        maximizers.push_back(j);
    }
    nlohmann::json out = {{"feasible", r.feasible},
                          {"hosts", std::to_string(r.hosts)},
                          {"sparse_hosts", std::to_string(r.sparse_hosts)},
                          {"E_q", root_json(r.expectation, digits)},
                          {"maximizers", maximizers}};
    out["best"] = r.best ? maximizers.front() : nlohmann::json(nullptr);
    return out;
}

std::string leaderboard_csv(const std::vector<LeaderEntry> & board, const Root & expectation, std::uint64_t seed)
{
    std::ostringstream out;
    out << "rank,graph6,canonical,edges,N,score_token,score_lower,score_upper,E_q_token,moves,chain,seed\n";
    for (std::size_t i = 0; i < board.size(); ++i) {
        const auto & e = board[i];
        Enclosure s = enclose(e.score);
        out << i + 1 << ',' << to_graph6(e.graph) << ',' << e.signature << ',' << e.graph.size() << ','
            << to_string(e.copies) << ',' << root_token(e.score) << ',' << s.lower_string() << ','
            << s.upper_string() << ',' << root_token(expectation) << ',' << e.move << ',' << e.chain << ',' << seed
            << '\n';
    }
    return out.str();
}

} // namespace kklab
