#include <doctest.h>

#include <kklab/automorphism.hpp>
#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace kklab;

namespace {

// Per-subgraph thresholds by brute force: every nonempty edge subset,
// N(K_n, I) from odometer embeddings into K_n and permutation automorphisms.
struct BruteThreshold {
    double value = 0;
    Rational base;      // threshold = base^(-1/e)
    std::size_t edges = 0;
};

BruteThreshold brute_threshold(const Graph & h, std::size_t n, const Rational & target)
{
    BruteThreshold best;
    const std::size_t m = h.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1U)
                ids.push_back(i);
        Graph sub = h.edge_subgraph(ids, true);
        BigInt copies = static_cast<unsigned long>(oracle::labeled_copies(families::complete(n), sub) /
                                                   oracle::automorphisms(sub));
        Rational base = Rational(copies) / target;
        double value = std::pow(base.get_d(), -1.0 / static_cast<double>(ids.size()));
        if (value > best.value + 1e-12) {
            best = {value, base, ids.size()};
            best.base.canonicalize();
        }
    }
    return best;
}

} // namespace

TEST_CASE("expected copies")
{
    CHECK(expected_copies(3, Rational(1, 2), families::complete(3)) == Rational(1, 8));
    CHECK(expected_copies(5, Rational(1), families::cycle(4)) == 15);
    CHECK(expected_copies(4, Rational(1), families::complete(5)) == 0);
    CHECK_THROWS_AS(expected_copies(4, Rational(3, 2), families::complete(3)), PreconditionError);
    CHECK(compare(expected_copies(10, Root::reciprocal(120, 3), families::complete(3)), Rational(1)) == 0);
}

TEST_CASE("closed forms agree with the symmetry formula")
{
    const Rational p(2, 7);
    for (std::size_t n = 1; n <= 9; ++n) {
        for (std::size_t r = 1; r <= 6; ++r)
            CHECK(expected_cliques(n, r, p) == expected_copies(n, p, families::complete(r)));
        for (std::size_t k = 3; k <= 8; ++k)
            CHECK(expected_cycles(n, k, p) == expected_copies(n, p, families::cycle(k)));
        for (std::size_t j = 0; j <= 6; ++j) {
            Graph tree = families::path(j);
            CHECK(expected_labeled_tree(n, j, p) == expected_copies(n, p, tree) * Rational(automorphism_count(tree)));
            std::vector<std::size_t> legs(j, 1);
            Graph star = families::spider(legs);
            CHECK(expected_labeled_tree(n, j, p) == expected_copies(n, p, star) * Rational(automorphism_count(star)));
        }
    }
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            Graph j = oracle::random_graph(1 + seed % 5, 0.6, seed * 31 + n);
            CHECK(expected_copies(n, Rational(1), j) == Rational(count_copies(families::complete(n), j)));
        }
}

TEST_CASE("sparsity thresholds: worked examples")
{
    auto k3 = q_min(families::complete(3), 10);
    CHECK(k3.value == Root::reciprocal(120, 3));
    CHECK(k3.binding.copies == 120);
    CHECK(k3.binding.edge_count() == 3);
    CHECK(enclose(k3.value).lower_string().rfind("0.202740", 0) == 0);

    auto pe3 = expectation_threshold(families::complete(3), 3);
    CHECK(pe3.value == Root(Rational(1, 2), 3));
    CHECK(pe3.binding.edge_count() == 3);
    auto edge = expectation_threshold(families::complete(2), 3);
    CHECK(edge.value.as_rational() == Rational(1, 6));
    auto pe10 = expectation_threshold(families::complete(3), 10);
    CHECK(pe10.value == Root::reciprocal(240, 3));
    CHECK(std::abs(pe10.value.approx() - 0.1609) < 1e-4);

    CHECK(is_q_sparse(families::complete(3), 10, Root(Rational(1, 4))));
    auto bad = check_sparse(families::complete(3), 10, Root(Rational(1, 10)));
    CHECK(! bad.sparse);
    CHECK(bad.witness->edge_count() == 3);
    CHECK(compare(*bad.witness_expectation, Rational(12, 100)) == 0);
    CHECK(is_q_sparse(families::petersen(), 10, Root(Rational(1))));
    CHECK_THROWS_AS(q_min(families::complete(8), 10), ResourceGuardError);
    CHECK_THROWS_AS(q_min(Graph(3), 10), PreconditionError);
    CHECK_THROWS_AS(q_min(families::complete(5), 4), PreconditionError);
}

TEST_CASE("thresholds match subset brute force")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(5, 0.5, seed + 17);
        if (h.size() == 0)
            continue;
        const std::size_t n = 5 + seed % 4;
        for (const Rational & target : {Rational(1), Rational(1, 2)}) {
            auto brute = brute_threshold(h, n, target);
            auto rep = sparsity_threshold(h, n, target);
            CHECK(std::abs(rep.value.approx() - brute.value) < 1e-9);
            CHECK(rep.subgraphs_examined == (std::uint64_t{1} << h.size()) - 1);
            // The binding subgraph's threshold is the reported value, and no
            // subgraph has E below target at that value.
            CHECK(rep.binding.threshold() == rep.value);
        }
        auto qm = q_min(h, n);
        auto pe = expectation_threshold(h, n);
        CHECK(compare(pe.value, qm.value) <= 0);
        CHECK(is_q_sparse(h, n, qm.value));
        // Just below q_min the binding subgraph is the first violation found
        // among those of its size.
        Root below = scale(Rational(999, 1000), qm.value);
        CHECK(! is_q_sparse(h, n, below));
    }
}

TEST_CASE("sparsity verdicts: monotone, hereditary, consistent with enclosures")
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Graph h = oracle::random_graph(6, 0.45, seed + 400);
        if (h.size() == 0)
            continue;
        const std::size_t n = 12;
        auto qm = q_min(h, n);
        auto enc = enclose(qm.value, 15);
        for (int step = 1; step <= 19; ++step) {
            Rational q(step, 20);
            bool sparse = is_q_sparse(h, n, Root(q));
            if (q < enc.lower)
                CHECK(! sparse);
            if (q > enc.upper)
                CHECK(sparse);
            if (sparse) {
                CHECK(is_q_sparse(h, n, Root(q + Rational(1, 40))));
                for (std::size_t i = 0; i < h.size(); ++i)
                    CHECK(is_q_sparse(h.without_edge(h.edges()[i]), n, Root(q)));
            }
        }
    }
}

TEST_CASE("required-edge check and heuristic mode")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph h = oracle::random_graph(7, 0.4, seed + 800);
        if (h.size() < 2)
            continue;
        Root q(Rational(1, 4));
        auto full = check_sparse(h, 10, q);
        bool any_required = false;
        for (const auto & e : h.edges())
            any_required = any_required || ! check_sparse(h, 10, q, {}, e).sparse;
        CHECK(full.sparse == ! any_required);

        SparsityOptions heuristic;
        heuristic.heuristic = true;
        heuristic.heuristic_edges = 4;
        auto lower = q_min(h, 10, heuristic);
        CHECK(lower.lower_bound);
        CHECK(compare(lower.value, q_min(h, 10).value) <= 0);
        heuristic.heuristic_edges = h.size();
        std::uint64_t connected = 0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << h.size()); ++mask) {
            std::vector<std::size_t> ids;
            for (std::size_t i = 0; i < h.size(); ++i)
                if (mask >> i & 1U)
                    ids.push_back(i);
            connected += h.edge_subgraph(ids, true).is_connected();
        }
        CHECK(q_min(h, 10, heuristic).subgraphs_examined == connected);
    }
}

TEST_CASE("threshold table has one row per isomorphism class")
{
    SparsityOptions opts;
    opts.keep_table = true;
    auto rep = q_min(families::complete(4), 10, opts);
    // Nonempty edge subsets of K4 up to isomorphism, isolated vertices dropped:
    // K2, P2, 2K2, K3, P3, K_{1,3}, C4, paw, K4-e, K4 (and P2+K2 is impossible).
    CHECK(rep.table.size() == 10);
}

TEST_CASE("required L")
{
    Root q = q_min(families::complete(3), 10).value;
    CHECK(required_L(families::complete(3), families::complete(3), 10, q).as_rational() == Rational(1));
    CHECK(required_L(families::path(3), families::complete(3), 10, Root(Rational(1))).is_zero());
    CHECK_THROWS_AS(required_L(families::complete(3), families::complete(3), 10, Root(Rational(1, 10))),
                    PreconditionError);
    CHECK_THROWS_AS(required_L(families::complete(3), families::complete(11), 10, Root(Rational(1))),
                    PreconditionError);
}

TEST_CASE("required L for the bowtie against the triangle")
{
    // Oracle: q_min(bowtie, 10) = base^(-1/e) from the brute-force subset
    // sweep, N(bowtie, K3) from odometer embeddings, E_q X_{K3} = 120 q^3, and
    // L^6 = (N / E)^2 evaluated in rationals with q^6 = base^-e... kept exact.
    Graph bowtie = families::bowtie();
    auto brute = brute_threshold(bowtie, 10, Rational(1));
    std::uint64_t n_triangles = oracle::labeled_copies(bowtie, families::complete(3)) / 6;
    REQUIRE(brute.edges == 6);
    // L^{3 * e} = (N / (120 q^3))^e = N^e / (120^e * base^{-3}).
    Rational l_pow = power(Rational(static_cast<unsigned long>(n_triangles)), brute.edges) /
                     (power(Rational(120), brute.edges) / power(brute.base, 3));
    Root oracle_value(l_pow, 3 * brute.edges);

    auto qm = q_min(bowtie, 10);
    Root value = required_L(bowtie, families::complete(3), 10, qm.value);
    CHECK(value == oracle_value);
    // Frozen from the oracle above: q_min = 3780^(-1/6), L = (21/20)^(1/6).
    CHECK(qm.value == Root::reciprocal(3780, 6));
    CHECK(value == Root(Rational(21, 20), 6));
    CHECK(enclose(value).lower_string().rfind("1.00816", 0) == 0);
}

TEST_CASE("peeling threshold and falling factorial bound")
{
    CHECK(peel_threshold_a(families::complete(3), 3, Rational(1)) == Rational(1, 3));
    CHECK(peel_threshold_a(families::complete(2), 4, Rational(1, 2)) == Rational(3, 4));
    CHECK(peel_threshold_a(families::complete(3), 9, Rational(0)) == 0);

    auto c = falling_factorial_bound_check(5, 3);
    CHECK(c.lhs == 60);
    CHECK(c.verdict == Verdict::pass);
    CHECK(std::abs(c.rhs_lower.get_d() - std::pow(5 / std::exp(1.0), 3)) < 1e-9);
    CHECK(falling_factorial_bound_check(1, 1).verdict == Verdict::pass);
    CHECK(falling_factorial_bound_check(10, 10).verdict == Verdict::pass);
    for (unsigned long a = 1; a <= 30; ++a)
        for (unsigned long b = 1; b <= a; ++b)
            CHECK(falling_factorial_bound_check(a, b).verdict == Verdict::pass);
}

TEST_CASE("pruned threshold search agrees with the full scan")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(7, 0.55, seed + 901);
        if (h.size() == 0)
            continue;
        std::size_t n = 7 + seed % 9;
        SparsityOptions full;
        full.keep_table = true; // disables pruning
        for (const Rational & target : {Rational(1), Rational(1, 2)}) {
            auto fast = sparsity_threshold(h, n, target);
            auto slow = sparsity_threshold(h, n, target, full);
            CHECK(compare(fast.value, slow.value) == 0);
            CHECK(fast.binding.edge_ids == slow.binding.edge_ids);
            CHECK(fast.subgraphs_examined == slow.subgraphs_examined);
        }
    }
}
