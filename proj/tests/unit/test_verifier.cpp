#include <doctest.h>

#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>
#include <kklab/verifier.hpp>

#include "oracles.hpp"

#include <map>

using namespace kklab;

namespace {

// Number of ways index i of a labeled copy can be completed so that the
// fit condition holds there, by trying "small" and every candidate set S of
// forward neighbours containing the tree children for "big".
std::size_t fitting_choices_at(const Graph & h, const std::vector<Vertex> & w, std::size_t i,
                               const std::vector<Vertex> & children, unsigned long lo)
{
    std::vector<Vertex> residual;
    for (Vertex u = 0; u < h.order(); ++u)
        if (h.adjacent(w[i], u) && std::find(w.begin(), w.begin() + static_cast<long>(i), u) == w.begin() + static_cast<long>(i))
            residual.push_back(u);
    std::size_t choices = residual.size() < lo ? 1 : 0; // small
    for (std::uint32_t mask = 0; mask < (1U << residual.size()); ++mask) {
        bool has_children = true;
        for (Vertex c : children) {
            auto pos = std::find(residual.begin(), residual.end(), c) - residual.begin();
            has_children = has_children && (mask >> pos & 1U);
        }
        std::size_t size = static_cast<std::size_t>(std::popcount(mask));
        if (has_children && size >= lo && size == residual.size())
            ++choices;
    }
    return choices;
}

} // namespace

TEST_CASE("structural bounds on worked examples")
{
    Root q = q_min(families::complete(3), 10).value;
    auto reports = verify_structure(families::complete(3), 10, q);
    REQUIRE(reports.size() == 5);
    for (const auto & r : reports)
        CHECK(r.verdict == Verdict::pass);
    CHECK(reports[0].lhs == "2");
    CHECK(reports[1].lhs == "1");

    for (const auto & r : verify_structure(families::complete(3), 10, Root(Rational(1, 4))))
        CHECK(r.verdict == Verdict::pass);

    CHECK_THROWS_AS(verify_structure(families::complete(3), 10, Root(Rational(1, 10))), PreconditionError);

    // At q = 1 every graph is sparse and K_10 has m = 9/2 > log2 10: the log
    // forms only hold for q <= 1/2.
    auto dense = verify_structure(families::complete(10), 10, Root(Rational(1)), {});
    CHECK(dense[0].verdict == Verdict::pass);
    CHECK(dense[1].verdict == Verdict::not_applicable);
    CHECK(dense[2].verdict == Verdict::not_applicable);
}

TEST_CASE("structural bounds hold on sparse random instances")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Graph h = oracle::random_graph(8, 0.35, seed + 5000);
        if (h.size() == 0)
            continue;
        std::size_t n = 8 + seed % 20;
        Root q = q_min(h, n).value;
        for (const auto & r : verify_structure(h, n, q))
            CHECK_MESSAGE(r.verdict != Verdict::fail, r.prop_id);
        Root q2 = scale(Rational(11, 10), q);
        if (compare(q2, Rational(1)) <= 0) {
            for (const auto & r : verify_structure(h, n, q2))
                CHECK(r.verdict != Verdict::fail);
            CHECK(verify_packing(h, families::path(2), n, q2).verdict == Verdict::pass);
        }
        CHECK(verify_packing(h, families::complete(3), n, q).verdict == Verdict::pass);
    }
}

TEST_CASE("packing bound examples")
{
    Graph bowtie = families::bowtie();
    auto r = verify_packing(bowtie, families::complete(3), 10, q_min(bowtie, 10).value);
    CHECK(r.lhs == "2");
    CHECK(r.verdict == Verdict::pass);
    Graph k7 = families::complete(7);
    auto r7 = verify_packing(k7, families::complete(3), 12, q_min(k7, 12).value);
    CHECK(r7.lhs == "7");
    CHECK(r7.verdict == Verdict::pass);
    auto none = verify_packing(families::cycle(5), families::complete(3), 10, Root(Rational(1, 2)));
    CHECK(none.lhs == "0");
    CHECK(none.verdict == Verdict::pass);
}

TEST_CASE("main inequality")
{
    Graph k3 = families::complete(3);
    Root q = q_min(k3, 10).value;
    CHECK(verify_main_inequality(k3, k3, 10, q, Rational(2)).verdict == Verdict::pass);
    CHECK(verify_main_inequality(k3, k3, 10, q, Rational(1)).verdict == Verdict::fail);
    CHECK(verify_main_inequality(families::path(3), k3, 10, Root(Rational(1, 2)), Rational(1, 100)).verdict ==
          Verdict::pass);
}

TEST_CASE("peeling")
{
    Graph k4 = families::complete(4), k3 = families::complete(3);
    CHECK(peel_min_degree(k4, k3, Rational(3)).survivors.size() == 4);
    CHECK(peel_min_degree(k4, k3, Rational(4)).survivors.empty());
    Graph pendant = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    CHECK(peel_min_degree(pendant, k3, Rational(1)).survivors == std::vector<Vertex>{0, 1, 2});

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(10, 0.5, seed + 60);
        Rational a(static_cast<long>(1 + seed % 5), static_cast<long>(1 + seed % 2));
        auto fixed = peel_min_degree(h, k3, a);
        auto shuffled = peel_min_degree(h, k3, a, seed);
        CHECK(fixed.survivors == shuffled.survivors);
        if (! fixed.survivors.empty())
            CHECK(Rational(static_cast<unsigned long>(fixed.min_degree)) >= a);
        if (fixed.hypothesis)
            CHECK(! fixed.survivors.empty());
    }
}

TEST_CASE("tree order")
{
    auto t = tree_order(families::path(3));
    CHECK(t.order == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(t.children == std::vector<std::size_t>{1, 1, 1, 0});
    // 0-2, 2-1: label 1 is not adjacent to 0, so BFS relabels.
    auto r = tree_order(Graph::from_edges(3, std::vector<Edge>{{0, 2}, {1, 2}}));
    CHECK(r.order == std::vector<Vertex>{0, 2, 1});
    CHECK(r.parent == std::vector<long>{-1, 0, 1});
    CHECK_THROWS_AS(tree_order(families::cycle(3)), PreconditionError);
}

TEST_CASE("fit decomposition examples")
{
    Graph star = families::star(4); // center 0, leaves 1..4
    Graph edge = families::path(1);
    const Rational eps(1), d(3); // sqrt(eps) d = 3
    std::vector<Vertex> leaf_center{1, 0};
    auto a = fit_decompose(star, edge, leaf_center, eps, d);
    CHECK(a.residual == std::vector<std::size_t>{1, 3});
    CHECK(a.big == std::vector<bool>{false, true});
    CHECK(a.d == std::vector<std::size_t>{1, 3});
    CHECK(a.D == 3);
    std::vector<Vertex> center_leaf{0, 1};
    auto b = fit_decompose(star, edge, center_leaf, eps, d);
    CHECK(b.big == std::vector<bool>{true, false});
    CHECK(b.d == std::vector<std::size_t>{4, 0});
    CHECK(b.r_hat.size() == 4);

    std::vector<Vertex> both{0, 1};
    auto c = fit_decompose(edge, edge, both, Rational(1), Rational(2));
    CHECK(c.big == std::vector<bool>{false, false});
    CHECK(c.r_hat == edge.edges());

    CHECK_THROWS_AS(fit_decompose(star, edge, leaf_center, Rational(1), Rational(1)), PreconditionError);
    std::vector<Vertex> not_embedding{1, 2};
    CHECK_THROWS_AS(fit_decompose(star, edge, not_embedding, eps, d), PreconditionError);
}

TEST_CASE("fit partition examples")
{
    auto star = verify_fit_partition(families::star(4), families::path(1), Rational(1), Rational(3));
    CHECK(star.labeled_copies == 8);
    CHECK(star.classes.size() == 2);
    CHECK(star.report.verdict == Verdict::pass);
    auto c5 = verify_fit_partition(families::cycle(5), families::path(2), Rational(1), Rational(3));
    CHECK(c5.labeled_copies == 10);
    CHECK(c5.classes.size() == 1);
    CHECK(c5.report.verdict == Verdict::pass);
    auto none = verify_fit_partition(families::path(2), families::path(3), Rational(1), Rational(3));
    CHECK(none.labeled_copies == 0);
    CHECK(none.report.rhs == "0");
    CHECK(none.report.verdict == Verdict::pass);
}

TEST_CASE("fit decomposition against exhaustive candidate completions")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(8 + seed % 5, 0.45, seed + 123);
        Graph f = oracle::random_tree(2 + seed % 4, 3, seed);
        const Rational eps(1, 4);
        const Rational d(static_cast<long>(7 + seed % 6)); // sqrt(eps) d in [3.5, 6]
        const unsigned long lo = big_degree_floor(eps, d);
        TreeOrder t = tree_order(f);
        std::uint64_t copies = 0;
        for_each_embedding(h, f, [&](std::span<const Vertex> map) {
            ++copies;
            FitRecord rec = fit_decompose(h, f, map, eps, d);
            CHECK(fits(rec, lo));
            // Exactly one completion fits, index by index.
            for (std::size_t i = 0; i < f.order(); ++i) {
                std::vector<Vertex> children;
                for (std::size_t c = 0; c < f.order(); ++c)
                    if (t.parent[c] == static_cast<long>(i))
                        children.push_back(rec.w[c]);
                CHECK(fitting_choices_at(h, rec.w, i, children, lo) == 1);
            }
            // Back-edge counts add up to the non-tree edges on the copy's vertices.
            std::vector<Vertex> vs(rec.w.begin(), rec.w.end());
            std::size_t b_sum = 0;
            for (auto x : rec.b)
                b_sum += x;
            CHECK(b_sum == h.induced(vs).size() - f.size());
            // Deterministic and idempotent.
            FitRecord again = fit_decompose(h, f, map, eps, d);
            CHECK(again.r_hat == rec.r_hat);
            CHECK(again.d == rec.d);
            return copies < 3000;
        });
    }
}

TEST_CASE("fit partition identity on random instances")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph h = oracle::random_graph(6 + seed % 7, 0.4, seed + 77);
        Graph f = oracle::random_tree(2 + seed % 5, 3, seed + 9);
        auto part = verify_fit_partition(h, f, Rational(1, 9), Rational(static_cast<long>(10 + seed % 9)));
        CHECK(part.report.verdict == Verdict::pass);
        CHECK(part.labeled_copies == static_cast<unsigned long>(oracle::labeled_copies(h, f)));
    }
}

TEST_CASE("legal sequences")
{
    const std::vector<std::size_t> f{1, 1, 0};
    CHECK(count_legal_sequences(f, 4, 0, 20).count == 1);
    CHECK(count_legal_sequences(f, 4, 4, 20).count == 3);
    CHECK(count_legal_sequences(f, 4, 9, 20).count == 9);
    CHECK(count_legal_sequences(f, 4, 9, 20).binomial_bound == 27);
    CHECK(count_legal_sequences(f, Rational(1, 4), Rational(8), 9, 9).count == 9);
    CHECK_THROWS_AS(count_legal_sequences(f, 1, 0, 4), PreconditionError);

    // Brute force over all sequences with entries in {small} or [lo, cap].
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::size_t len = 1 + seed % 5;
        unsigned long lo = 2 + seed % 4;
        std::vector<std::size_t> fs(len);
        for (std::size_t i = 0; i < len; ++i)
            fs[i] = (seed >> i) % lo;
        unsigned long D = seed % 23;
        unsigned long cap = lo + seed % 9;
        std::uint64_t brute = 0;
        std::vector<unsigned long> pick(len, 0); // 0 = small, else value lo..cap
        while (true) {
            unsigned long sum = 0;
            for (auto v : pick)
                sum += v;
            brute += sum == D;
            std::size_t i = 0;
            while (i < len) {
                pick[i] = pick[i] == 0 ? lo : pick[i] + 1;
                if (pick[i] <= cap)
                    break;
                pick[i++] = 0;
            }
            if (i == len)
                break;
        }
        auto r = count_legal_sequences(fs, lo, D, cap);
        CHECK(r.count == static_cast<unsigned long>(brute));
        CHECK(r.count <= r.binomial_bound);
        CHECK(r.report.verdict == Verdict::pass);
    }
}

TEST_CASE("ell hat")
{
    auto a = ell_hat(1000000, Root(Rational(1, 1000)), Rational(1, 10));
    CHECK(a.value == 1);
    CHECK(a.below_at_value);
    CHECK(a.reached_at_next);
    auto b = ell_hat(1 << 20, Root(Rational(1, 1 << 15)), Rational(1, 10));
    CHECK(b.value == 3);
    CHECK_THROWS_AS(ell_hat(100, Root(Rational(1, 100)), Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(ell_hat(100, Root(Rational(1)), Rational(1, 2)), PreconditionError);
    for (std::size_t n = 4; n < 200; n += 7)
        for (long den = 2; den < 40; den += 5) {
            Rational q(1, den);
            if (q * static_cast<unsigned long>(n) <= 1)
                continue;
            auto e = ell_hat(n, Root(q), Rational(1, 3));
            CHECK(e.below_at_value);
            CHECK(e.reached_at_next);
            double x = static_cast<double>(n) / static_cast<double>(den);
            double l = std::log(static_cast<double>(n)) / std::log(x) - 1.0 / 3;
            if (std::fabs(l - std::round(l)) > 1e-6)
                CHECK(static_cast<double>(e.value) == std::ceil(l) - 1);
        }
}
