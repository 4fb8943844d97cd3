#include <kklab/montecarlo.hpp>

#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kklab {

Graph sample_gnp(std::size_t n, const Rational & p, Stream & stream)
{
    if (sgn(p) < 0 || p > 1)
        throw PreconditionError("probability " + to_string(p) + " outside [0, 1]");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (stream.bernoulli(p))
                edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

bool contains(const Graph & host, const Graph & pattern)
{
    if (pattern.order() > host.order() || pattern.size() > host.size())
        return false;
    if (pattern.size() == 0)
        return true;
    if (pattern.max_degree() > host.max_degree())
        return false;
    bool found = false;
    for_each_embedding(host, pattern, [&](std::span<const Vertex>) {
        found = true;
        return false;
    });
    return found;
}

double normal_quantile(double confidence)
{
    if (! (confidence > 0 && confidence < 1))
        throw PreconditionError("confidence must lie in (0, 1)");
    // Solve erfc(z / sqrt 2) = 1 - confidence; erfc is decreasing.
    const double tail = 1 - confidence;
    double lo = 0, hi = 40;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        (std::erfc(mid / std::sqrt(2.0)) > tail ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (trials == 0)
        return {0.0, 1.0};
    const double t = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / t;
    const double z2 = z * z;
    const double denom = 1 + z2 / t;
    const double center = (phat + z2 / (2 * t)) / denom;
    const double half = z / denom * std::sqrt(phat * (1 - phat) / t + z2 / (4 * t * t));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t count_containing(std::size_t n, const Graph & pattern, const Rational & p, std::uint64_t trials,
                               std::uint64_t seed, std::uint64_t probe)
{
    constexpr std::uint64_t chunk = 32;
    const std::size_t tasks = static_cast<std::size_t>((trials + chunk - 1) / chunk);
    auto counts = parallel_map<std::uint64_t>(tasks, [&](std::size_t task) {
        std::uint64_t hits = 0;
        const std::uint64_t end = std::min<std::uint64_t>(trials, (task + 1) * chunk);
        for (std::uint64_t t = task * chunk; t < end; ++t) {
            Stream stream(seed, probe, t);
            hits += contains(sample_gnp(n, p, stream), pattern) ? 1 : 0;
        }
        return hits;
    });
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    return total;
}

EstimateResult estimate_pc(const TrialPlan & plan)
{
    if (plan.pattern.size() == 0)
        throw PreconditionError("the pattern needs at least one edge");
    if (plan.pattern.order() > plan.n)
        throw PreconditionError("pattern has " + std::to_string(plan.pattern.order()) + " vertices, more than n = " +
                                std::to_string(plan.n));
    if (plan.trials == 0)
        throw PreconditionError("trials must be at least 1");
    if (sgn(plan.tolerance) <= 0)
        throw PreconditionError("tolerance must be positive");
    const double z = normal_quantile(plan.confidence.get_d());

    EstimateResult r;
    r.n = plan.n;
    r.seed = plan.seed;
    r.trials = plan.trials;
    r.tolerance = plan.tolerance;
    r.confidence = plan.confidence;
    Rational lo(0), hi(1);
    while (hi - lo >= plan.tolerance) {
        Rational mid = (lo + hi) / 2;
        Probe probe;
        probe.p = mid;
        probe.trials = plan.trials;
        probe.successes = count_containing(plan.n, plan.pattern, mid, plan.trials, plan.seed, r.trace.size());
        std::tie(probe.wilson_lower, probe.wilson_upper) = wilson_interval(probe.successes, probe.trials, z);
        (2 * probe.successes >= probe.trials ? hi : lo) = mid;
        r.trace.push_back(probe);
    }
    r.bracket_lower = lo;
    r.bracket_upper = hi;
    r.estimate = (lo + hi) / 2;
    r.ci_lower = 0;
    r.ci_upper = 1;
    for (const auto & probe : r.trace) {
        if (probe.wilson_upper < 0.5)
            r.ci_lower = std::max(r.ci_lower, probe.p);
        if (probe.wilson_lower > 0.5)
            r.ci_upper = std::min(r.ci_upper, probe.p);
    }
    return r;
}

nlohmann::json to_json(const EstimateResult & r, int digits)
{
    nlohmann::json trace = nlohmann::json::array();
    for (const auto & p : r.trace)
        trace.push_back({{"p", to_string(p.p)},
                         {"successes", std::to_string(p.successes)},
                         {"trials", std::to_string(p.trials)},
                         {"wilson", {p.wilson_lower, p.wilson_upper}}});
    return {{"n", std::to_string(r.n)},
            {"estimate", to_string(r.estimate)},
            {"estimate_decimal", decimal_floor(r.estimate, digits)},
            {"bracket", {to_string(r.bracket_lower), to_string(r.bracket_upper)}},
            {"ci", {to_string(r.ci_lower), to_string(r.ci_upper)}},
            {"ci_decimal", {decimal_floor(r.ci_lower, digits), decimal_ceil(r.ci_upper, digits)}},
            {"trials", std::to_string(r.trials)},
            {"tolerance", to_string(r.tolerance)},
            {"confidence", to_string(r.confidence)},
            {"seed", std::to_string(r.seed)},
            {"streams", "trial t of probe k draws from Stream(seed, k, t)"},
            {"trace", trace}};
}

std::string trace_csv(const EstimateResult & r)
{
    std::ostringstream out;
    out << "probe,p,p_decimal,successes,trials,wilson_lower,wilson_upper\n";
    out.precision(17);
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto & p = r.trace[i];
        out << i << ',' << to_string(p.p) << ',' << decimal_floor(p.p, 12) << ',' << p.successes << ',' << p.trials
            << ',' << p.wilson_lower << ',' << p.wilson_upper << '\n';
    }
    return out.str();
}

const char * to_string(Family f)
{
    switch (f) {
    case Family::gnp_repair: return "gnp-repair";
    case Family::clique_union: return "clique-union";
    case Family::theta: return "theta";
    case Family::spider: return "spider";
    case Family::path_power: return "path-power";
    }
    return "?";
}

Family parse_family(const std::string & name)
{
    for (Family f : {Family::gnp_repair, Family::clique_union, Family::theta, Family::spider, Family::path_power})
        if (name == to_string(f))
            return f;
    throw Error("unknown family '" + name + "'");
}

namespace {

std::size_t draw(Stream & stream, std::size_t lo, std::size_t hi)
{
    return lo + static_cast<std::size_t>(stream.below(hi - lo + 1));
}

nlohmann::json size_list(const std::vector<std::size_t> & xs)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto x : xs)
        out.push_back(std::to_string(x));
    return out;
}

std::string describe(const Graph & g, const std::vector<std::size_t> & ids)
{
    std::string s;
    for (auto id : ids)
        s += (s.empty() ? "" : " ") + std::to_string(g.edges()[id].u) + "-" + std::to_string(g.edges()[id].v);
    return s;
}

// The witness edge with the largest degree sum; ties to the smallest edge.
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

GeneratedInstance generate_sparse(std::size_t n, const Root & q, Family family, Stream & stream,
                                  const FamilyParams & params)
{
    if (compare(q, Rational(1)) > 0)
        throw PreconditionError("q exceeds 1");
    GeneratedInstance out;
    out.family = family;
    out.params = nlohmann::json::object();
    switch (family) {
    case Family::gnp_repair: {
        const std::size_t v = params.vertices.value_or(std::min<std::size_t>(n, 7));
        if (v > n)
            throw PreconditionError("gnp-repair needs vertices <= n");
        Rational p = params.kappa * enclose(q, 15).lower;
        if (p > 1)
            p = 1;
        p.canonicalize();
        out.graph = sample_gnp(v, p, stream);
        out.params = {{"vertices", std::to_string(v)}, {"kappa", to_string(params.kappa)}, {"p", to_string(p)}};
        while (true) {
            auto check = check_sparse(out.graph, n, q);
            if (check.sparse)
                break;
            if (out.repairs == params.max_repairs)
                throw ResourceGuardError("gnp-repair did not reach a q-sparse graph within " +
                                         std::to_string(params.max_repairs) + " removals");
            out.graph = out.graph.without_edge(repair_edge(out.graph, check.witness->edge_ids));
            ++out.repairs;
        }
        out.params["repairs"] = std::to_string(out.repairs);
        return out;
    }
    case Family::clique_union: {
        std::vector<std::size_t> sizes = params.sizes;
        if (sizes.empty())
            for (std::size_t i = 0, count = draw(stream, 1, 3); i < count; ++i)
                sizes.push_back(draw(stream, 2, 4));
        out.graph = families::clique_union(sizes);
        out.params = {{"sizes", size_list(sizes)}};
        break;
    }
    case Family::theta: {
        std::size_t paths = params.paths.value_or(draw(stream, 2, 4));
        std::size_t length = params.length.value_or(draw(stream, 2, 3));
        out.graph = families::theta(paths, length);
        out.params = {{"paths", std::to_string(paths)}, {"length", std::to_string(length)}};
        break;
    }
    case Family::spider: {
        std::vector<std::size_t> legs = params.legs;
        if (legs.empty())
            for (std::size_t i = 0, count = draw(stream, 2, 4); i < count; ++i)
                legs.push_back(draw(stream, 1, 3));
        out.graph = families::spider(legs);
        out.params = {{"legs", size_list(legs)}};
        break;
    }
    case Family::path_power: {
        std::size_t k = params.k.value_or(draw(stream, 3, 7));
        std::size_t r = params.r.value_or(draw(stream, 1, 2));
        out.graph = families::path_power(k, r);
        out.params = {{"k", std::to_string(k)}, {"r", std::to_string(r)}};
        break;
    }
    }
    if (out.graph.order() > n)
        throw PreconditionError(std::string(to_string(family)) + " instance has " +
                                std::to_string(out.graph.order()) + " vertices, more than n = " + std::to_string(n));
    auto check = check_sparse(out.graph, n, q);
    if (! check.sparse)
        throw PreconditionError(std::string(to_string(family)) + " instance is not q-sparse",
                                describe(out.graph, check.witness->edge_ids));
    return out;
}

} // namespace kklab
