#pragma once

// Search over q-sparse hosts for large required constants L(H,F,q). For a
// fixed (n, q, F) the expectation E_q X_F is a constant, so L orders hosts
// exactly as the integer N(H,F) does; all ranking is done on N.

#include <kklab/counting.hpp>
#include <kklab/expectation.hpp>
#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kklab {

struct LeaderEntry {
    Graph graph;
    std::string signature;  // canonical_signature(graph)
    BigInt copies;          // N(H,F)
    Root score;             // required L
    std::uint64_t move = 0; // move at which the chain first reached it
    std::size_t chain = 0;
};

/// More copies first, then fewer edges, then the smaller signature.
bool ranks_before(const LeaderEntry & a, const LeaderEntry & b);

struct SearchOptions {
    std::size_t host_cap = 12;
    std::uint64_t budget = 100000; // proposed moves per chain
    std::uint64_t seed = 0;
    std::size_t chains = 1;
    std::size_t top_k = 10;
    double cooling = 0.999;        // per accepted move
    /// Negative score changes averaged to set T0 so that such a move is
    /// accepted with probability 1/2.
    std::size_t calibration_moves = 32;
    double audit_rate = 0.01;
    SparsityOptions sparsity;
    CountOptions counting;
};

struct SearchResult {
    std::vector<LeaderEntry> leaderboard;
    Root expectation; // E_q X_F
    nlohmann::json metadata;
};

/// Simulated annealing from the edgeless host on host_cap vertices. A move
/// toggles one vertex pair. An added edge that breaks sparsity triggers
/// repairs that remove the witness edge of largest degree sum (ties to the
/// smallest edge); if a repair would remove the added edge the move is
/// rejected, as is a move whose check exceeds the sparsity edge cap.
/// Throws PreconditionError when a single edge is not q-sparse.
SearchResult extremal_search(std::size_t n, const Root & q, const Graph & pattern, const SearchOptions & opts = {});

struct SweepResult {
    bool feasible = false;            // some host with an edge is q-sparse
    std::optional<LeaderEntry> best;
    std::vector<LeaderEntry> maximizers; // every class attaining the best N
    std::size_t hosts = 0;
    std::size_t sparse_hosts = 0;
    Root expectation;
};

/// Every isomorphism class on v_cap vertices (isolated vertices stand in
/// for smaller hosts), filtered by q-sparsity, maximizing N(H,F).
SweepResult exhaustive_sweep(std::size_t n, const Root & q, const Graph & pattern, std::size_t v_cap,
                             const SparsityOptions & sparsity = {}, const CountOptions & counting = {});

nlohmann::json to_json(const LeaderEntry & e, const Root & expectation, std::uint64_t seed, int digits = 12);
nlohmann::json to_json(const SearchResult & r, std::uint64_t seed, int digits = 12);
nlohmann::json to_json(const SweepResult & r, int digits = 12);
std::string leaderboard_csv(const std::vector<LeaderEntry> & board, const Root & expectation, std::uint64_t seed);

} // namespace kklab
