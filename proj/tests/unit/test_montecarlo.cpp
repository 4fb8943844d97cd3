#include <doctest.h>

#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>
#include <kklab/montecarlo.hpp>
#include <kklab/parallel.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace kklab;

TEST_CASE("sampling G(n,p)")
{
    Stream s(1);
    CHECK(sample_gnp(6, Rational(0), s).size() == 0);
    CHECK(sample_gnp(6, Rational(1), s).size() == 15);

    // 100 samples at n = 100, p = 1/2: each edge count within 5 sigma.
    const double mean = 4950 / 2.0, sigma = std::sqrt(4950 / 4.0);
    double total = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Stream st(42, 0, t);
        double m = static_cast<double>(sample_gnp(100, Rational(1, 2), st).size());
        CHECK(std::fabs(m - mean) < 5 * sigma);
        total += m;
    }
    CHECK(std::fabs(total / 100 - mean) < 5 * sigma / 10);

    Stream a(7, 3, 9), b(7, 3, 9);
    CHECK(sample_gnp(30, Rational(1, 3), a) == sample_gnp(30, Rational(1, 3), b));
}

TEST_CASE("exact Bernoulli draws")
{
    Stream s(5);
    int hits = 0;
    for (int i = 0; i < 30000; ++i)
        hits += s.bernoulli(Rational(1, 3));
    CHECK(std::fabs(hits / 30000.0 - 1.0 / 3) < 5 * std::sqrt(2.0 / 9 / 30000));
    // A denominator beyond 64 bits takes the bitwise route.
    Rational big(BigInt("1180591620717411303425"), BigInt("3541774862152233910272")); // ~1/3
    hits = 0;
    for (int i = 0; i < 30000; ++i)
        hits += s.bernoulli(big);
    CHECK(std::fabs(hits / 30000.0 - big.get_d()) < 5 * std::sqrt(2.0 / 9 / 30000));
    CHECK(! s.bernoulli(Rational(0)));
    CHECK(s.bernoulli(Rational(1)));
}

TEST_CASE("containment")
{
    CHECK(contains(families::cycle(5), families::path(3)));
    CHECK(! contains(families::cycle(5), families::complete(3)));
    CHECK(contains(families::petersen(), families::cycle(5)));
    CHECK(! contains(families::petersen(), families::cycle(4)));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Graph g = oracle::random_graph(7, 0.4, seed + 300);
        Graph h = oracle::random_graph(4, 0.5, seed + 900);
        CHECK(contains(g, h) == (oracle::labeled_copies(g, h) > 0));
    }
}

TEST_CASE("normal quantile and Wilson interval")
{
    CHECK(normal_quantile(0.95) == doctest::Approx(1.959964).epsilon(1e-6));
    auto [lo, hi] = wilson_interval(50, 100, 1.959964);
    CHECK(lo == doctest::Approx(0.403832).epsilon(1e-5));
    CHECK(hi == doctest::Approx(0.596168).epsilon(1e-5));
    auto [z0, z1] = wilson_interval(0, 10, 1.959964);
    CHECK(z0 == 0.0);
    CHECK(z1 > 0.2);
}

TEST_CASE("threshold estimates")
{
    TrialPlan plan;
    plan.n = 2;
    plan.pattern = families::path(1);
    plan.seed = 11;
    auto two = estimate_pc(plan);
    CHECK(two.ci_lower <= Rational(1, 2));
    CHECK(Rational(1, 2) <= two.ci_upper);
    CHECK(two.bracket_upper - two.bracket_lower < plan.tolerance);
    CHECK(two.ci_lower <= two.estimate);
    CHECK(two.estimate <= two.ci_upper);

    // Pr(some edge among 3 pairs) = 1 - (1-p)^3 = 1/2 at p = 1 - 2^{-1/3}.
    plan.n = 3;
    auto three = estimate_pc(plan);
    const double truth = 1 - std::pow(2.0, -1.0 / 3);
    CHECK(three.ci_lower.get_d() <= truth);
    CHECK(truth <= three.ci_upper.get_d());
    CHECK(std::fabs(three.estimate.get_d() - truth) < 0.05);

    // The expectation threshold never exceeds the containment threshold.
    for (const Graph & h : {families::complete(3), families::cycle(4), families::path(3)}) {
        TrialPlan p;
        p.n = 20;
        p.pattern = h;
        p.seed = 3;
        p.trials = 400;
        auto est = estimate_pc(p);
        auto pe = enclose(expectation_threshold(h, 20).value);
        CHECK(pe.lower <= est.ci_upper);
        // Probe success rates are monotone in p up to interval slack.
        auto trace = est.trace;
        std::sort(trace.begin(), trace.end(), [](const Probe & a, const Probe & b) { return a.p < b.p; });
        for (std::size_t i = 1; i < trace.size(); ++i)
            CHECK(trace[i].wilson_upper >= trace[i - 1].wilson_lower);
    }

    plan.n = 2;
    plan.pattern = families::complete(3);
    CHECK_THROWS_AS(estimate_pc(plan), PreconditionError);
}

TEST_CASE("estimates do not depend on the thread count")
{
    TrialPlan plan;
    plan.n = 12;
    plan.pattern = families::complete(3);
    plan.seed = 99;
    plan.trials = 300;
    set_thread_count(1);
    auto one = to_json(estimate_pc(plan)).dump();
    set_thread_count(4);
    auto four = to_json(estimate_pc(plan)).dump();
    set_thread_count(0);
    CHECK(one == four);
}

TEST_CASE("sparse generators")
{
    Stream s(1);
    FamilyParams single;
    single.sizes = {3};
    auto tri = generate_sparse(10, Root(Rational(1, 4)), Family::clique_union, s, single);
    CHECK(tri.graph.size() == 3);

    // q = 1 accepts everything that fits.
    for (Family f : {Family::gnp_repair, Family::clique_union, Family::theta, Family::spider, Family::path_power}) {
        Stream st(2);
        auto g = generate_sparse(16, Root(Rational(1)), f, st);
        CHECK(g.repairs == 0);
        CHECK(parse_family(to_string(f)) == f);
    }

    // Below the theta graph's own threshold it is rejected with a witness.
    Graph theta = families::theta(3, 2);
    Root below = scale(Rational(9, 10), q_min(theta, 10).value);
    FamilyParams tp;
    tp.paths = 3;
    tp.length = 2;
    try {
        generate_sparse(10, below, Family::theta, s, tp);
        CHECK(false);
    }
    catch (const PreconditionError & e) {
        CHECK(e.witness().has_value());
    }
    CHECK(generate_sparse(10, q_min(theta, 10).value, Family::theta, s, tp).graph == theta);

    // Every accepted output is sparse at its declared q.
    std::size_t repaired = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Stream st(seed);
        std::size_t n = 8 + seed % 10;
        Root q(Rational(1, static_cast<long>(2 + seed % 6)));
        for (Family f : {Family::gnp_repair, Family::clique_union, Family::theta, Family::spider, Family::path_power}) {
            try {
                auto g = generate_sparse(n, q, f, st);
                CHECK(is_q_sparse(g.graph, n, q));
                repaired += g.repairs;
            }
            catch (const PreconditionError &) {
                CHECK(f != Family::gnp_repair);
            }
        }
    }
    CHECK(repaired > 0);
}
