#pragma once

// Concrete checks of the structural bounds satisfied by q-sparse graphs,
// and the constructive procedures of the tree argument: peeling, fit
// decomposition of labeled tree copies, and legal degree sequences.

#include <kklab/counting.hpp>
#include <kklab/expectation.hpp>
#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kklab {

/// One checked inequality. `lhs` and `rhs` are exact strings where the
/// quantity is exact, decimal enclosures "[lo, hi]" otherwise.
struct PropositionReport {
    std::string prop_id;
    nlohmann::json inputs = nlohmann::json::object();
    std::string relation;
    std::string lhs;
    std::string rhs;
    Verdict verdict = Verdict::inconclusive;
    std::optional<std::string> witness;
    std::optional<std::string> note;
};

nlohmann::json to_json(const PropositionReport & r);

struct VerifyOptions {
    SparsityOptions sparsity;
    CountOptions counting;
    PackingOptions packing;
    int digits = 12;
};

/// Max degree, maximum density and edge-count bounds for a q-sparse H.
/// The log n forms of the density and edge bounds need n q^{log n} <= 1,
/// so they are reported not_applicable for q > 1/2; the 1/c forms use the
/// largest c with q <= n^{-c} and are not_applicable at q = 1. Throws
/// PreconditionError (with witness) when H is not q-sparse.
std::vector<PropositionReport> verify_structure(const Graph & host, std::size_t n, const Root & q,
                                                const VerifyOptions & opts = {});

/// nu(H,J) <= e E_q X_J with nu computed exactly.
PropositionReport verify_packing(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                                 const VerifyOptions & opts = {});

/// N(H,F) < L^{e_F} E_q X_F, with required_L recorded in the note.
PropositionReport verify_main_inequality(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                                         const Rational & L, const VerifyOptions & opts = {});

struct PeelResult {
    std::vector<Vertex> survivors;
    std::vector<Vertex> deletion_order;
    std::size_t copies = 0;
    /// Minimum copy-hypergraph degree inside the survivors (0 if none survive).
    std::size_t min_degree = 0;
    /// N(H,F) > a v_H, under which the survivors must be nonempty.
    bool hypothesis = false;
};

/// Repeatedly deletes the smallest-id vertex whose degree in the copy
/// hypergraph (one edge per copy of F) is below a. With a seed, the vertex
/// to delete is drawn at random among those below a instead; the survivor
/// set is the same either way.
PeelResult peel_min_degree(const Graph & host, const Graph & pattern, const Rational & a,
                           std::optional<std::uint64_t> shuffle_seed = std::nullopt,
                           std::size_t copy_cap = 200000);

/// A tree pattern indexed by a breadth-first order from vertex 0.
struct TreeOrder {
    std::vector<Vertex> order;          // index -> pattern vertex
    std::vector<std::size_t> position;  // pattern vertex -> index
    std::vector<long> parent;           // index -> parent index, -1 at the root
    std::vector<std::size_t> children;  // f_i
};

/// Uses the labels as they are when 0, 1, ..., j is already a BFS order
/// from 0 (each vertex has exactly one earlier neighbour and parents are
/// nondecreasing); otherwise BFS from 0 visiting neighbours by label.
TreeOrder tree_order(const Graph & tree);

/// ceil(sqrt(eps) * d), the least possible big degree.
unsigned long big_degree_floor(const Rational & eps, const Rational & d);

struct FitRecord {
    TreeOrder tree;
    std::vector<Vertex> w;               // index -> host vertex
    std::vector<std::size_t> residual;   // |N_H(w_i) \ {w_0..w_{i-1}}|
    std::vector<bool> big;
    std::vector<std::size_t> d;          // residual if big, f_i if small
    std::vector<std::size_t> b;          // b_0 = 0; earlier non-parent neighbours
    std::size_t D = 0;
    std::vector<Edge> r_hat;             // edges of the fitting R-hat, sorted
    std::vector<Vertex> r_hat_vertices;  // sorted
    /// Bit (i * (j+1) + k) set for i < k when R-hat joins w_i and w_k by an
    /// edge that is not a tree edge.
    std::vector<std::uint64_t> back_edges;
};

/// The unique R-hat extending the labeled copy (copy[pattern vertex] = host
/// vertex) that fits H: index i is big iff its residual degree is at least
/// sqrt(eps) d, and big indices take every residual neighbour. Requires
/// sqrt(eps) d > Delta_F and a genuine embedding.
FitRecord fit_decompose(const Graph & host, const Graph & tree, std::span<const Vertex> copy, const Rational & eps,
                        const Rational & d);

/// True when R-hat (given by big indices and their chosen neighbourhoods)
/// satisfies the fit condition: big residual degree = d_i, small residual
/// degree < sqrt(eps) d.
bool fits(const FitRecord & record, unsigned long big_floor);

struct FitClass {
    std::vector<std::size_t> d;
    std::vector<std::uint64_t> back_edges;
    std::uint64_t copies = 0;
};

struct FitPartition {
    PropositionReport report;
    BigInt labeled_copies;
    std::vector<FitClass> classes;  // sorted by (d, back_edges)
};

/// Groups all labeled copies of F by the class of their fitting R-hat and
/// checks that the class totals add up to the labeled count.
FitPartition verify_fit_partition(const Graph & host, const Graph & tree, const Rational & eps, const Rational & d,
                                  const VerifyOptions & opts = {}, std::size_t copy_cap = 2000000);

struct LegalCount {
    BigInt count;
    /// sum over s of C(positions, s) C(D-1, s-1), positions = j + 1 and
    /// C(-1,-1) = 1 (the all-small sequence at D = 0).
    BigInt binomial_bound;
    bool cap_binding = false;   // d_cap < D, so the bound comparison is one-sided
    PropositionReport report;
};

/// Legal sequences over child counts f with big entries in [lo, d_cap]
/// summing to D, by dynamic programming over indices. Requires every
/// f_i < lo and d_cap >= lo.
LegalCount count_legal_sequences(const std::vector<std::size_t> & f, unsigned long lo, unsigned long D,
                                 unsigned long d_cap);
LegalCount count_legal_sequences(const std::vector<std::size_t> & f, const Rational & eps, const Rational & d,
                                 unsigned long D, unsigned long d_cap);

struct EllHat {
    unsigned long value = 0;
    /// (nq)^{l+delta} < n at value, and >= n at value + 1, each re-checked exactly.
    bool below_at_value = false;
    bool reached_at_next = false;
};

/// Largest l with (nq)^l < n^{1 - delta c}, where nq = n^c; equivalently
/// (nq)^{l + delta} < n. Requires 1/n < q < 1 and 0 < delta < 1.
EllHat ell_hat(std::size_t n, const Root & q, const Rational & delta);

} // namespace kklab
