#include <doctest.h>

#include <kklab/automorphism.hpp>
#include <kklab/catalog.hpp>
#include <kklab/errors.hpp>
#include <kklab/parallel.hpp>
#include <kklab/search.hpp>

#include "oracles.hpp"

#include <set>

using namespace kklab;

namespace {

// H is q-sparse for rational q, checked subset by subset in exact arithmetic.
bool oracle_sparse(const Graph & h, std::size_t n, const Rational & q)
{
    const std::size_t m = h.size();
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1U)
                ids.push_back(i);
        Graph sub = h.edge_subgraph(ids, true);
        Rational e = Rational(falling_factorial(n, sub.order())) / Rational(BigInt(static_cast<unsigned long>(oracle::automorphisms(sub))));
        e *= power(q, ids.size());
        if (e < 1)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("catalog sizes and orbit counting")
{
    const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
    for (std::size_t v = 0; v <= 6; ++v) {
        auto cat = graph_catalog(v);
        CHECK(cat.size() == expected[v]);
        // Orbit-stabilizer: the classes cover all 2^C(v,2) labeled graphs.
        BigInt labeled = 0;
        std::set<std::string> seen;
        for (const Graph & g : cat) {
            CHECK(g.order() == v);
            labeled += factorial(v) / automorphism_count(g);
            seen.insert(to_string(BigInt(static_cast<unsigned long>(g.order()))) + ":" + canonical_signature(g) + ":" +
                        std::to_string(g.isolated_count()));
        }
        CHECK(labeled == BigInt(1) << (v * (v - 1) / 2));
        CHECK(seen.size() == cat.size());
    }
    CHECK(graph_catalog(7).size() == 1044);
}

TEST_CASE("canonical signatures")
{
    Graph c5 = families::cycle(5);
    std::vector<Vertex> perm{3, 0, 4, 1, 2};
    CHECK(canonical_signature(c5) == canonical_signature(c5.relabeled(perm)));
    Graph padded = families::disjoint_union(c5, families::empty(3));
    CHECK(canonical_signature(padded) == canonical_signature(c5));
    CHECK(canonical_signature(families::path(4)) != canonical_signature(families::star(4)));
}

TEST_CASE("sweep examples")
{
    auto k3 = exhaustive_sweep(10, Root(Rational(1)), families::complete(3), 3);
    REQUIRE(k3.best);
    CHECK(k3.feasible);
    CHECK(k3.best->graph == families::complete(3));
    CHECK(k3.best->copies == 1);

    auto none = exhaustive_sweep(10, Root(Rational(1, 1000)), families::complete(3), 5);
    CHECK(! none.feasible);
    CHECK(! none.best);
    CHECK(none.maximizers.empty());

    // Only single-triangle hosts survive at q_min(K_3), each with L = 1.
    Root q = q_min(families::complete(3), 10).value;
    auto tight = exhaustive_sweep(10, q, families::complete(3), 6);
    REQUIRE(tight.best);
    CHECK(tight.best->copies == 1);
    CHECK(compare(tight.best->score, Rational(1)) == 0);
}

TEST_CASE("sweep against brute force over labeled graphs")
{
    for (const Graph & f : {families::complete(3), families::path(2), families::cycle(4)})
        for (const Rational & q : {Rational(1, 3), Rational(1, 2), Rational(1, 5)}) {
            const std::size_t n = 9;
            BigInt best = -1;
            bool feasible = false;
            for (const Graph & h : oracle::all_labeled_graphs(5)) {
                if (! oracle_sparse(h, n, q))
                    continue;
                feasible = feasible || h.size() > 0;
                BigInt c(static_cast<unsigned long>(oracle::labeled_copies(h, f) / oracle::automorphisms(f)));
                best = std::max(best, c);
            }
            auto sweep = exhaustive_sweep(n, Root(q), f, 5);
            CHECK(sweep.feasible == feasible);
            if (feasible) {
                REQUIRE(sweep.best);
                CHECK(sweep.best->copies == best);
            }
        }
}

TEST_CASE("annealer basics")
{
    SearchOptions o;
    o.host_cap = 6;
    o.budget = 0;
    auto empty = extremal_search(10, Root(Rational(1)), families::complete(3), o);
    REQUIRE(empty.leaderboard.size() == 1);
    CHECK(empty.leaderboard[0].graph.size() == 0);
    CHECK(empty.leaderboard[0].score.is_zero());

    o.budget = 300;
    auto dense = extremal_search(10, Root(Rational(1)), families::complete(3), o);
    CHECK(dense.leaderboard[0].copies > 0);
    CHECK(compare(dense.leaderboard[0].score, Rational(0)) > 0);
    for (std::size_t i = 1; i < dense.leaderboard.size(); ++i)
        CHECK(! ranks_before(dense.leaderboard[i], dense.leaderboard[i - 1]));

    CHECK_THROWS_AS(extremal_search(10, Root(Rational(1, 1000)), families::complete(3), o), PreconditionError);
}

TEST_CASE("annealer stays sparse and never beats the sweep")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 10 + seed;
        Root q = scale(Rational(static_cast<long>(3 + seed), 2), q_min(families::complete(3), n).value);
        SearchOptions o;
        o.host_cap = 5;
        o.budget = 3000;
        o.seed = seed;
        o.audit_rate = 1.0;
        auto run = extremal_search(n, q, families::complete(3), o);
        CHECK(run.metadata["chains"][0]["audit_failures"] == "0");
        for (const auto & e : run.leaderboard)
            CHECK(is_q_sparse(e.graph, n, q));
        auto sweep = exhaustive_sweep(n, q, families::complete(3), 5);
        REQUIRE(sweep.best);
        CHECK(run.leaderboard[0].copies <= sweep.best->copies);
        CHECK(run.leaderboard[0].copies == sweep.best->copies);
    }
}

TEST_CASE("search is reproducible across thread counts")
{
    SearchOptions o;
    o.host_cap = 7;
    o.budget = 2000;
    o.chains = 3;
    o.seed = 17;
    Root q = scale(Rational(2), q_min(families::cycle(4), 12).value);
    set_thread_count(1);
    auto one = to_json(extremal_search(12, q, families::cycle(4), o), o.seed).dump();
    set_thread_count(4);
    auto four = to_json(extremal_search(12, q, families::cycle(4), o), o.seed).dump();
    set_thread_count(0);
    CHECK(one == four);
}
