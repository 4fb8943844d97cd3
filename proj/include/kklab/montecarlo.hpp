#pragma once

// G(n,p) sampling, containment testing, Monte Carlo estimation of the
// containment threshold, and generators of q-sparse instances.

#include <kklab/graph.hpp>
#include <kklab/numeric.hpp>
#include <kklab/rng.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kklab {

/// Each of the C(n,2) pairs, in lexicographic order, is kept with
/// probability exactly p.
Graph sample_gnp(std::size_t n, const Rational & p, Stream & stream);

/// True iff some subgraph of G is isomorphic to H; stops at the first
/// embedding.
bool contains(const Graph & host, const Graph & pattern);

struct TrialPlan {
    std::size_t n = 0;
    Graph pattern;
    std::uint64_t trials = 2000;
    std::uint64_t seed = 0;
    Rational tolerance{1, 100};
    Rational confidence{95, 100};
};

struct Probe {
    Rational p;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double wilson_lower = 0;
    double wilson_upper = 1;
};

struct EstimateResult {
    std::size_t n = 0;
    Rational estimate;      // midpoint of the final bisection bracket
    Rational bracket_lower; // final bracket, width < tolerance
    Rational bracket_upper;
    /// [largest probe whose Wilson upper bound is below 1/2, smallest probe
    /// whose Wilson lower bound is above 1/2], defaulting to 0 and 1. Under
    /// monotonicity p_c lies inside at the stated confidence per probe.
    Rational ci_lower;
    Rational ci_upper;
    std::vector<Probe> trace; // in probe order
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    Rational tolerance;
    Rational confidence;
};

/// Two-sided normal quantile for the given confidence level.
double normal_quantile(double confidence);

/// Wilson score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

/// Successes among `trials` samples of G(n,p) containing H. Trial t of
/// probe k uses Stream(seed, k, t), so the count is schedule-independent.
std::uint64_t count_containing(std::size_t n, const Graph & pattern, const Rational & p, std::uint64_t trials,
                               std::uint64_t seed, std::uint64_t probe);

/// Bisection over dyadic p in [0, 1]. Requires e_H >= 1, v_H <= n,
/// trials >= 1, tolerance > 0 and confidence in (0, 1).
EstimateResult estimate_pc(const TrialPlan & plan);

nlohmann::json to_json(const EstimateResult & r, int digits = 12);
std::string trace_csv(const EstimateResult & r);

enum class Family { gnp_repair, clique_union, theta, spider, path_power };
const char * to_string(Family f);
Family parse_family(const std::string & name);

/// Generator parameters. Anything left unset is drawn from the stream.
struct FamilyParams {
    std::optional<std::size_t> vertices;   // gnp-repair: sample on this many vertices (default min(n, 7))
    Rational kappa{3};                     // gnp-repair: sample at min(1, kappa q)
    std::size_t max_repairs = 64;
    std::vector<std::size_t> sizes;        // clique-union: clique orders
    std::optional<std::size_t> paths;      // theta
    std::optional<std::size_t> length;     // theta
    std::vector<std::size_t> legs;         // spider
    std::optional<std::size_t> k;          // path-power: path order
    std::optional<std::size_t> r;          // path-power: power
};

struct GeneratedInstance {
    Graph graph;
    Family family = Family::gnp_repair;
    nlohmann::json params;
    std::size_t repairs = 0;
};

/// A q-sparse graph of the requested family, certified by the exact
/// sparsity check. gnp-repair removes, while a violating subgraph exists,
/// its edge with the largest degree sum (ties to the lexicographically
/// smallest edge), and throws ResourceGuardError after max_repairs removals.
/// Structured families that are not q-sparse throw PreconditionError with
/// the violating subgraph as witness.
GeneratedInstance generate_sparse(std::size_t n, const Root & q, Family family, Stream & stream,
                                  const FamilyParams & params = {});

} // namespace kklab
