#include <doctest.h>

#include <kklab/automorphism.hpp>
#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/parallel.hpp>

#include "oracles.hpp"

using namespace kklab;

namespace {

std::uint64_t brute_xy_paths(const Graph & g, Vertex x, Vertex y, std::size_t len)
{
    // Walk all sequences of len+1 distinct vertices starting at x.
    std::uint64_t count = 0;
    std::vector<Vertex> path{x};
    auto rec = [&](auto & self) -> void {
        if (path.size() == len + 1) {
            count += path.back() == y;
            return;
        }
        for (Vertex w = 0; w < g.order(); ++w)
            if (g.adjacent(path.back(), w) && std::find(path.begin(), path.end(), w) == path.end()) {
                path.push_back(w);
                self(self);
                path.pop_back();
            }
    };
    rec(rec);
    return count;
}

std::size_t brute_packing(const Graph & host, const Graph & pattern)
{
    auto copies = enumerate_copies(host, pattern);
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << copies.size()); ++mask) {
        std::vector<int> used(host.size(), 0);
        bool ok = true;
        for (std::size_t i = 0; i < copies.size() && ok; ++i)
            if (mask >> i & 1U)
                for (auto e : copies[i].edges)
                    ok = ok && ! used[e]++;
        if (ok)
            best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
    }
    return best;
}

} // namespace

TEST_CASE("copy counts")
{
    CHECK(count_copies(families::complete(5), families::complete(3)) == 10);
    CHECK(count_copies(families::cycle(5), families::complete(3)) == 0);
    CHECK(count_copies(families::complete(4), families::cycle(4)) == 3);
    CHECK_THROWS_AS(count_copies(families::complete(4), Graph(0)), PreconditionError);
}

TEST_CASE("labeled counts")
{
    CHECK(count_labeled(families::complete(3), families::path(2)) == 6);
    CHECK(count_labeled(families::path(2), families::path(1)) == 4);
    CHECK(count_labeled(families::star(3), families::path(2)) == 6);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Graph host = oracle::random_graph(7, 0.5, seed);
        Graph pattern = oracle::random_graph(2 + seed % 4, 0.6, seed + 1000);
        BigInt lab = count_labeled(host, pattern);
        CHECK(lab == static_cast<unsigned long>(oracle::labeled_copies(host, pattern)));
        if (pattern.order() >= 1)
            CHECK(count_copies(host, pattern) * automorphism_count(pattern) == lab);
    }
}

TEST_CASE("specialized counters")
{
    CHECK(count_cliques(families::complete(6), 4) == 15);
    CHECK(count_cliques(families::petersen(), 3) == 0);
    CHECK(count_copies(families::petersen(), families::complete(3)) == 0);
    CHECK(count_cliques(families::bowtie(), 3) == 2);
    CHECK(count_cycles(families::complete(4), 4) == 3);
    CHECK(count_cycles(families::cycle(7), 7) == 1);
    CHECK(count_cycles(families::cycle(7), 5) == 0);
    CHECK(count_cycles(families::cycle(3), 4) == 0);
    CHECK_THROWS_AS(count_cycles(families::cycle(3), 2), PreconditionError);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(8, 0.55, seed + 77);
        for (std::size_t r = 1; r <= 5; ++r)
            CHECK(count_cliques(h, r) == count_copies(h, families::complete(r)));
        for (std::size_t k = 3; k <= 7; ++k)
            CHECK(count_cycles(h, k) == count_copies(h, families::cycle(k)));
    }
}

TEST_CASE("paths between fixed endpoints and gamma")
{
    Graph c6 = families::cycle(6);
    CHECK(count_xy_paths(c6, 0, 3, 3) == 2);
    CHECK(count_xy_paths(families::complete(3), 0, 1, 1) == 1);
    CHECK(count_xy_paths(families::complete(4), 1, 3, 2) == 2);
    CHECK_THROWS_AS(count_xy_paths(c6, 2, 2, 1), PreconditionError);

    auto g6 = gamma(c6, 3);
    CHECK(g6.value == 2);
    CHECK(g6.pair == std::pair<Vertex, Vertex>{0, 3});
    CHECK(gamma(families::complete(4), 2).value == 2);
    CHECK(gamma(families::empty(5), 3).value == 0);
    CHECK(! gamma(Graph(1), 1).pair);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph h = oracle::random_graph(7, 0.5, seed + 5);
        for (std::size_t len = 1; len <= 5; ++len) {
            std::uint64_t best = 0;
            std::pair<Vertex, Vertex> arg{0, 1};
            for (Vertex x = 0; x < 7; ++x)
                for (Vertex y = x + 1; y < 7; ++y) {
                    auto c = brute_xy_paths(h, x, y, len);
                    CHECK(count_xy_paths(h, x, y, len) == static_cast<unsigned long>(c));
                    if (c > best) {
                        best = c;
                        arg = {x, y};
                    }
                }
            auto g = gamma(h, len);
            CHECK(g.value == static_cast<unsigned long>(best));
            CHECK(g.pair == arg);
        }
    }
}

TEST_CASE("cycle counts factor through paths and gamma")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph h = oracle::random_graph(8, 0.5, seed + 300);
        for (std::size_t k = 3; k <= 7; ++k) {
            BigInt cycles = count_cycles(h, k);
            BigInt naive = static_cast<unsigned long>(h.size());
            for (std::size_t i = 0; i + 2 < k; ++i)
                naive *= static_cast<unsigned long>(h.max_degree());
            CHECK(cycles <= naive);
            for (std::size_t l = 1; l + 2 <= k; ++l)
                CHECK(cycles <= count_copies(h, families::path(k - l)) * gamma(h, l).value);
        }
    }
}

TEST_CASE("packing")
{
    CHECK(packing(families::complete(4), families::complete(3), PackingMode::exact).value == 1);
    CHECK(packing(families::complete(7), families::complete(3), PackingMode::exact).value == 7);
    CHECK(packing(families::cycle(6), families::path(2), PackingMode::exact).value == 3);
    CHECK(packing(families::cycle(5), families::complete(3), PackingMode::exact).value == 0);
    CHECK_THROWS_AS(packing(families::cycle(5), Graph(2), PackingMode::exact), PreconditionError);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph h = oracle::random_graph(6, 0.6, seed + 900);
        Graph j = seed % 2 ? families::complete(3) : families::path(2);
        auto copies = enumerate_copies(h, j);
        if (copies.size() > 18)
            continue;
        auto exact = packing(h, j, PackingMode::exact);
        auto greedy = packing(h, j, PackingMode::greedy);
        CHECK(exact.value == brute_packing(h, j));
        CHECK(exact.value >= greedy.value);
        CHECK(exact.value <= copies.size());
        CHECK(exact.value * j.size() <= h.size());
        std::vector<int> used(h.size(), 0);
        for (const auto & c : exact.chosen)
            for (auto e : c.edges)
                CHECK(used[e]++ == 0);
    }
}

TEST_CASE("totals do not depend on the thread count")
{
    Graph h = oracle::random_graph(30, 0.3, 42);
    set_thread_count(1);
    auto a = count_copies(h, families::cycle(5));
    auto ga = gamma(h, 3);
    set_thread_count(4);
    auto b = count_copies(h, families::cycle(5));
    auto gb = gamma(h, 3);
    set_thread_count(0);
    CHECK(a == b);
    CHECK(ga.value == gb.value);
    CHECK(ga.pair == gb.pair);
    CHECK(count_cycles(h, 5) == a);
}

TEST_CASE("node budget is a hard error")
{
    CountOptions tight;
    tight.node_budget = 10;
    CHECK_THROWS_AS(count_labeled(families::complete(8), families::complete(4), tight), ResourceGuardError);
    PackingOptions cap;
    cap.copy_cap = 5;
    CHECK_THROWS_AS(packing(families::complete(7), families::complete(3), PackingMode::exact, cap),
                    ResourceGuardError);
}
