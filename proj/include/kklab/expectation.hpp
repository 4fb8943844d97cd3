#pragma once

// Expectations of subgraph counts in G(n,p) and the sparsity thresholds
// built from them. A threshold is always carried exactly as base^(-1/e).

#include <kklab/counting.hpp>
#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>

#include <optional>
#include <vector>

namespace kklab {

/// N(K_n, J) = (n)_{v_J} / aut(J); zero when v_J > n.
BigInt copies_in_complete(std::size_t n, const Graph & pattern);

/// E_p X_J = N(K_n, J) p^{e_J}. Throws PreconditionError unless 0 <= p <= 1.
Rational expected_copies(std::size_t n, const Rational & p, const Graph & pattern);
/// The same for an irrational p = r^(1/k): the result is (N^k r^e)^(1/k).
Root expected_copies(std::size_t n, const Root & p, const Graph & pattern);

/// Closed forms for the pattern families with known symmetry.
Rational expected_cliques(std::size_t n, std::size_t r, const Rational & p);
Rational expected_cycles(std::size_t n, std::size_t k, const Rational & p);
/// Labeled copies of any tree with j edges: (n)_{j+1} p^j.
Rational expected_labeled_tree(std::size_t n, std::size_t j, const Rational & p);

/// One subgraph I of H (isolated vertices dropped) and the p at which
/// E_p X_I reaches the target: (target / N(K_n, I))^(1/e_I).
struct SubgraphThreshold {
    std::vector<std::size_t> edge_ids;  // indices into H.edges(), sorted
    Graph graph;                        // I relabeled onto its spanned vertices
    std::vector<Vertex> vertices;       // spanned vertices of H, increasing
    BigInt aut;
    BigInt copies;                      // N(K_n, I)
    Rational base;                      // copies / target; threshold = base^(-1/e_I)

    std::size_t edge_count() const { return edge_ids.size(); }
    Root threshold() const { return Root::reciprocal(base, edge_ids.size()); }
};

struct SparsityOptions {
    /// Exact mode enumerates all 2^{e_H} - 1 edge subsets up to this size.
    std::size_t edge_cap = 24;
    /// Enumerate only connected subgraphs with at most heuristic_edges
    /// edges; the result is then a lower bound, not a certificate.
    bool heuristic = false;
    std::size_t heuristic_edges = 8;
    /// Collect one table row per isomorphism class of subgraph.
    bool keep_table = false;
};

struct SparsityReport {
    std::size_t n = 0;
    Rational target;
    /// max over I of the per-subgraph thresholds: q_min (target 1) or p_E (target 1/2).
    Root value;
    SubgraphThreshold binding;
    std::vector<SubgraphThreshold> table;
    bool lower_bound = false;
    std::uint64_t subgraphs_examined = 0;
};

/// max over nonempty edge subsets I of (target / N(K_n, I))^(1/e_I). Adding an
/// isolated vertex to I multiplies N(K_n, I) by a factor >= 1, so spanned
/// subgraphs suffice. Ties go to fewer edges, then to the smaller edge set
/// in binary order. Requires e_H >= 1 and n >= v_H (after dropping isolated
/// vertices); throws ResourceGuardError beyond edge_cap in exact mode.
SparsityReport sparsity_threshold(const Graph & host, std::size_t n, const Rational & target,
                                  const SparsityOptions & opts = {});

inline SparsityReport q_min(const Graph & host, std::size_t n, const SparsityOptions & opts = {})
{
    return sparsity_threshold(host, n, Rational(1), opts);
}

inline SparsityReport expectation_threshold(const Graph & host, std::size_t n, const SparsityOptions & opts = {})
{
    return sparsity_threshold(host, n, Rational(1, 2), opts);
}

struct SparsityCheck {
    bool sparse = true;
    /// First violating subgraph: fewest edges, then smallest edge set.
    std::optional<SubgraphThreshold> witness;
    /// E_q X_I of the witness.
    std::optional<Root> witness_expectation;
};

/// H is q-sparse iff E_q X_I >= 1 for all I; with q = r^(1/k) this is
/// N^k r^{e_I} >= 1, decided without extracting roots. When `required`
/// is set only subgraphs containing that edge are examined.
SparsityCheck check_sparse(const Graph & host, std::size_t n, const Root & q, const SparsityOptions & opts = {},
                           std::optional<Edge> required = std::nullopt);

inline bool is_q_sparse(const Graph & host, std::size_t n, const Root & q, const SparsityOptions & opts = {})
{
    return check_sparse(host, n, q, opts).sparse;
}

/// Least L with N(H,F) <= E_{Lq} X_F, i.e. (N(H,F) / E_q X_F)^(1/e_F).
/// Checks that H is q-sparse; throws PreconditionError with the witness
/// otherwise, and when e_F = 0 or v_F > n.
Root required_L(const Graph & host, const Graph & pattern, std::size_t n, const Root & q,
                const CountOptions & count_opts = {}, const SparsityOptions & opts = {});

/// The same from a known count N(H,F), skipping the sparsity check.
Root required_L_from_count(const BigInt & count, const Graph & pattern, std::size_t n, const Root & q);

/// a = E_p X_F / n.
Rational peel_threshold_a(const Graph & pattern, std::size_t n, const Rational & p);

enum class Verdict { pass, fail, not_applicable, inconclusive };
const char * to_string(Verdict v);

/// (a)_b > (a/e)^b for a >= b >= 1, with e bracketed by rationals.
struct FallingFactorialCheck {
    BigInt lhs;
    Rational rhs_lower;
    Rational rhs_upper;
    Verdict verdict = Verdict::inconclusive;
};
FallingFactorialCheck falling_factorial_bound_check(unsigned long a, unsigned long b);

} // namespace kklab
