#include <kklab/cli.hpp>

#include <kklab/automorphism.hpp>
#include <kklab/counting.hpp>
#include <kklab/density.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/montecarlo.hpp>
#include <kklab/parallel.hpp>
#include <kklab/report.hpp>
#include <kklab/search.hpp>
#include <kklab/verifier.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>

namespace kklab::cli {

namespace {

using nlohmann::json;

constexpr const char * schema = "kklab/1";

// Every flag of every subcommand lands here; each handler reads its own.
struct Options {
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    int digits = 12;

    std::string graph;
    std::string pattern;
    std::string family;
    std::size_t param = 0;
    bool labeled = false;
    std::size_t length = 0;
    bool greedy = false;
    std::uint64_t node_budget = 4'000'000'000ULL;

    std::size_t n = 0;
    std::string q, p, L, a, eps, d, delta;
    bool heuristic = false;
    std::size_t heuristic_edges = 8;
    std::size_t edge_cap = 24;
    bool table = false;

    std::string f;
    std::optional<unsigned long> lo;
    unsigned long D = 0;
    std::optional<unsigned long> cap;

    std::uint64_t trials = 2000;
    std::string tolerance = "1/100";
    std::string confidence = "95/100";

    std::size_t count = 1;
    std::optional<std::size_t> vertices;
    std::string kappa = "3";
    std::string sizes, legs;
    std::optional<std::size_t> paths, path_length, k, r;

    std::uint64_t budget = 100000;
    std::size_t host_cap = 12;
    std::size_t chains = 1;
    std::size_t top_k = 10;
    std::size_t v_cap = 6;
};

struct Output {
    json body;
    std::optional<std::string> csv;
};

std::vector<std::size_t> parse_list(const std::string & text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size())
            throw ParseError("expected a comma-separated list of integers, got '" + text + "'", 0);
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// A file path, "-" for stdin, a family token (K4, C5, P3 = path with 3
// edges, S4 = star with 4 leaves) or "g6:<graph6>".
Graph resolve_graph(const std::string & spec, const char * what)
{
    if (spec.empty())
        throw Error(std::string("missing --") + what);
    if (spec == "-" || std::filesystem::exists(spec))
        return read_graph(spec);
    if (spec.starts_with("g6:"))
        return parse_graph6(spec.substr(3));
    static const std::regex token("([KCPS])([0-9]+)");
    std::smatch m;
    if (std::regex_match(spec, m, token)) {
        std::size_t k = std::stoul(m[2]);
        switch (m[1].str()[0]) {
        case 'K': return families::complete(k);
        case 'C': return families::cycle(k);
        case 'P': return families::path(k);
        case 'S': return families::star(k);
        }
    }
    throw Error(std::string("cannot read --") + what + " '" + spec + "': no such file or family token");
}

Graph family_pattern(const std::string & family, std::size_t param)
{
    if (family == "clique" || family == "complete")
        return families::complete(param);
    if (family == "cycle")
        return families::cycle(param);
    if (family == "path")
        return families::path(param);
    if (family == "star")
        return families::star(param);
    throw Error("unknown --family '" + family + "' (clique, cycle, path, star)");
}

Graph pattern_of(const Options & o)
{
    if (! o.family.empty()) {
        if (! o.pattern.empty())
            throw Error("give either --pattern or --family, not both");
        return family_pattern(o.family, o.param);
    }
    return resolve_graph(o.pattern, "pattern");
}

std::size_t require_n(const Options & o)
{
    if (o.n == 0)
        throw Error("missing --n");
    return o.n;
}

Root require_real(const std::string & text, const char * name)
{
    if (text.empty())
        throw Error(std::string("missing --") + name);
    return parse_real(text);
}

Rational require_rational(const std::string & text, const char * name)
{
    if (text.empty())
        throw Error(std::string("missing --") + name);
    return parse_rational(text);
}

SparsityOptions sparsity_of(const Options & o)
{
    SparsityOptions s;
    s.edge_cap = o.edge_cap;
    s.heuristic = o.heuristic;
    s.heuristic_edges = o.heuristic_edges;
    s.keep_table = o.table;
    return s;
}

CountOptions counting_of(const Options & o)
{
    CountOptions c;
    c.node_budget = o.node_budget;
    return c;
}

std::string edges_text(const Graph & host, const std::vector<std::size_t> & ids)
{
    std::string s;
    for (auto id : ids)
        s += (s.empty() ? "" : " ") + std::to_string(host.edges()[id].u) + "-" + std::to_string(host.edges()[id].v);
    return s;
}

json subgraph_json(const Graph & host, const SubgraphThreshold & t, int digits)
{
    return {{"edges", edges_text(host, t.edge_ids)},
            {"graph6", to_graph6(t.graph)},
            {"vertices", std::to_string(t.vertices.size())},
            {"edge_count", std::to_string(t.edge_count())},
            {"aut", to_string(t.aut)},
            {"copies_in_complete", to_string(t.copies)},
            {"base", to_string(t.base)},
            {"exponent", std::to_string(t.edge_count())},
            {"threshold", root_json(t.threshold(), digits)}};
}

std::string flatten_value(const json & v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string csv_escape(const std::string & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

// Top-level fields as one header row and one value row.
std::string generic_csv(const json & body)
{
    std::string header, row;
    for (auto it = body.begin(); it != body.end(); ++it) {
        header += (header.empty() ? "" : ",") + csv_escape(it.key());
        row += (row.empty() && it == body.begin() ? "" : ",") + csv_escape(flatten_value(it.value()));
    }
    return header + "\n" + row + "\n";
}

std::string render(const Output & o, const std::string & format)
{
    if (format == "json")
        return o.body.dump(2) + "\n";
    if (format == "csv")
        return o.csv ? *o.csv : generic_csv(o.body);
    std::string text;
    for (auto it = o.body.begin(); it != o.body.end(); ++it)
        text += it.key() + ": " + flatten_value(it.value()) + "\n";
    return text;
}

json header(const std::string & command)
{
    return {{"schema", schema}, {"command", command}};
}

// Handlers.

Output cmd_count(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph pattern = pattern_of(o);
    json j = header("count");
    j["graph"] = to_graph6(host);
    j["pattern"] = to_graph6(pattern);
    if (o.labeled) {
        j["count"] = to_string(count_labeled(host, pattern, counting_of(o)));
        j["method"] = "labeled";
    }
    else if (o.family == "clique" || o.family == "complete") {
        j["count"] = to_string(count_cliques(host, o.param));
        j["method"] = "clique";
    }
    else if (o.family == "cycle") {
        j["count"] = to_string(count_cycles(host, o.param, counting_of(o)));
        j["method"] = "cycle";
    }
    else {
        j["count"] = to_string(count_copies(host, pattern, counting_of(o)));
        j["method"] = "copies";
    }
    return {j, std::nullopt};
}

Output cmd_gamma(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    auto g = gamma(host, o.length, counting_of(o));
    json j = header("gamma");
    j["graph"] = to_graph6(host);
    j["length"] = std::to_string(o.length);
    j["gamma"] = to_string(g.value);
    j["pair"] = g.pair ? json{std::to_string(g.pair->first), std::to_string(g.pair->second)} : json(nullptr);
    return {j, std::nullopt};
}

Output cmd_pack(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph pattern = pattern_of(o);
    auto r = packing(host, pattern, o.greedy ? PackingMode::greedy : PackingMode::exact);
    json copies = json::array();
    for (const auto & c : r.chosen)
        copies.push_back(edges_text(host, c.edges));
    json j = header("pack");
    j["graph"] = to_graph6(host);
    j["pattern"] = to_graph6(pattern);
    j["mode"] = o.greedy ? "greedy" : "exact";
    j["packing"] = std::to_string(r.value);
    j["copies"] = copies;
    return {j, std::nullopt};
}

Output cmd_density(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    auto m = max_density(host);
    json w = json::array();
    for (auto v : m.witness)
        w.push_back(std::to_string(v));
    json j = header("density");
    j["graph"] = to_graph6(host);
    j["max_density"] = to_string(m.value());
    j["edges"] = std::to_string(m.edges);
    j["vertices"] = std::to_string(m.vertices);
    j["witness"] = w;
    return {j, std::nullopt};
}

Output cmd_aut(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    json j = header("aut");
    j["graph"] = to_graph6(host);
    j["aut"] = to_string(automorphism_count(host));
    j["canonical"] = to_graph6(canonical_form(host).graph);
    return {j, std::nullopt};
}

Output threshold_output(const Options & o, const std::string & command, const Rational & target)
{
    Graph host = resolve_graph(o.graph, "graph");
    std::size_t n = require_n(o);
    auto r = sparsity_threshold(host, n, target, sparsity_of(o));
    json j = header(command);
    j["graph"] = to_graph6(host);
    j["n"] = std::to_string(n);
    j["target"] = to_string(target);
    j["value"] = root_json(r.value, o.digits);
    j["base"] = to_string(r.binding.base);
    j["exponent"] = std::to_string(r.binding.edge_count());
    j["binding"] = subgraph_json(host, r.binding, o.digits);
    j["lower_bound"] = r.lower_bound;
    j["subgraphs_examined"] = std::to_string(r.subgraphs_examined);
    std::optional<std::string> csv;
    if (o.table) {
        json rows = json::array();
        std::string c = "edges,graph6,vertices,edge_count,aut,copies_in_complete,base,exponent,threshold_lower,threshold_upper\n";
        for (const auto & t : r.table) {
            rows.push_back(subgraph_json(host, t, o.digits));
            Enclosure e = enclose(t.threshold(), o.digits);
            c += csv_escape(edges_text(host, t.edge_ids)) + "," + to_graph6(t.graph) + "," +
                 std::to_string(t.vertices.size()) + "," + std::to_string(t.edge_count()) + "," + to_string(t.aut) +
                 "," + to_string(t.copies) + "," + to_string(t.base) + "," + std::to_string(t.edge_count()) + "," +
                 e.lower_string() + "," + e.upper_string() + "\n";
        }
        j["table"] = rows;
        csv = c;
    }
    return {j, csv};
}

Output cmd_sparse_check(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    auto c = check_sparse(host, n, q, sparsity_of(o));
    json j = header("sparse-check");
    j["graph"] = to_graph6(host);
    j["n"] = std::to_string(n);
    j["q"] = root_json(q, o.digits);
    j["sparse"] = c.sparse;
    j["certified"] = ! o.heuristic;
    j["witness"] = c.witness ? subgraph_json(host, *c.witness, o.digits) : json(nullptr);
    j["witness_expectation"] = c.witness_expectation ? root_json(*c.witness_expectation, o.digits) : json(nullptr);
    return {j, std::nullopt};
}

Output cmd_expect(const Options & o)
{
    Graph pattern = o.graph.empty() ? pattern_of(o) : resolve_graph(o.graph, "graph");
    std::size_t n = require_n(o);
    Root p = require_real(o.p, "p");
    json j = header("expect");
    j["pattern"] = to_graph6(pattern);
    j["n"] = std::to_string(n);
    j["p"] = root_json(p, o.digits);
    j["copies_in_complete"] = to_string(copies_in_complete(n, pattern));
    if (auto exact = p.as_rational())
        j["expectation"] = root_json(Root(expected_copies(n, *exact, pattern)), o.digits);
    else
        j["expectation"] = root_json(expected_copies(n, p, pattern), o.digits);
    return {j, std::nullopt};
}

Output cmd_required_l(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph pattern = pattern_of(o);
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    Root L = required_L(host, pattern, n, q, counting_of(o), sparsity_of(o));
    json j = header("required-l");
    j["graph"] = to_graph6(host);
    j["pattern"] = to_graph6(pattern);
    j["n"] = std::to_string(n);
    j["q"] = root_json(q, o.digits);
    j["N"] = to_string(count_copies(host, pattern, counting_of(o)));
    j["E_q"] = root_json(expected_copies(n, q, pattern), o.digits);
    j["L"] = root_json(L, o.digits);
    return {j, std::nullopt};
}

VerifyOptions verify_options_of(const Options & o)
{
    VerifyOptions v;
    v.sparsity = sparsity_of(o);
    v.counting = counting_of(o);
    v.digits = o.digits;
    return v;
}

std::string reports_csv(const json & reports)
{
    std::string c = "prop_id,relation,lhs,rhs,verdict,witness,note\n";
    for (const auto & r : reports)
        c += csv_escape(r["prop_id"].get<std::string>()) + "," + csv_escape(r["relation"].get<std::string>()) + "," +
             csv_escape(r["lhs"].get<std::string>()) + "," + csv_escape(r["rhs"].get<std::string>()) + "," +
             r["verdict"].get<std::string>() + "," +
             csv_escape(r.contains("witness") && r["witness"].is_string() ? r["witness"].get<std::string>() : "") + "," +
             csv_escape(r.contains("note") && r["note"].is_string() ? r["note"].get<std::string>() : "") + "\n";
    return c;
}

Output cmd_verify_props(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    Graph packed = o.pattern.empty() && o.family.empty() ? families::complete(3) : pattern_of(o);
    VerifyOptions v = verify_options_of(o);
    auto reports = verify_structure(host, n, q, v);
    reports.push_back(verify_packing(host, packed, n, q, v));
    json rs = json::array();
    bool all_pass = true;
    for (const auto & r : reports) {
        rs.push_back(to_json(r));
        all_pass = all_pass && r.verdict != Verdict::fail;
    }
    json j = header("verify props");
    j["graph"] = to_graph6(host);
    j["n"] = std::to_string(n);
    j["q"] = root_json(q, o.digits);
    j["reports"] = rs;
    j["no_failures"] = all_pass;
    return {j, reports_csv(rs)};
}

Output cmd_verify_fit(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph tree = pattern_of(o);
    Rational eps = require_rational(o.eps, "eps");
    Rational d = require_rational(o.d, "d");
    auto part = verify_fit_partition(host, tree, eps, d, verify_options_of(o));
    json classes = json::array();
    std::string c = "d,back_edges,copies\n";
    for (const auto & k : part.classes) {
        json dv = json::array(), bv = json::array();
        std::string ds, bs;
        for (auto x : k.d) {
            dv.push_back(std::to_string(x));
            ds += (ds.empty() ? "" : " ") + std::to_string(x);
        }
        for (auto x : k.back_edges) {
            bv.push_back(std::to_string(x));
            bs += (bs.empty() ? "" : " ") + std::to_string(x);
        }
        classes.push_back({{"d", dv}, {"back_edges", bv}, {"copies", std::to_string(k.copies)}});
        c += ds + "," + bs + "," + std::to_string(k.copies) + "\n";
    }
    json j = header("verify fit");
    j["graph"] = to_graph6(host);
    j["tree"] = to_graph6(tree);
    j["eps"] = to_string(eps);
    j["d"] = to_string(d);
    j["big_floor"] = std::to_string(big_degree_floor(eps, d));
    j["labeled_copies"] = to_string(part.labeled_copies);
    j["classes"] = classes;
    j["report"] = to_json(part.report);
    return {j, c};
}

Output cmd_verify_legal(const Options & o)
{
    if (o.f.empty())
        throw Error("missing --f (comma-separated child counts)");
    std::vector<std::size_t> f = parse_list(o.f);
    unsigned long lo = 0;
    if (o.lo) {
        if (! o.eps.empty() || ! o.d.empty())
            throw Error("give either --lo or --eps with --d");
        lo = *o.lo;
    }
    else {
        lo = big_degree_floor(require_rational(o.eps, "eps"), require_rational(o.d, "d"));
    }
    unsigned long cap = o.cap.value_or(std::max(lo, o.D));
    auto r = count_legal_sequences(f, lo, o.D, cap);
    json j = header("verify legal");
    j["f"] = o.f;
    j["lo"] = std::to_string(lo);
    j["D"] = std::to_string(o.D);
    j["cap"] = std::to_string(cap);
    j["count"] = to_string(r.count);
    j["binomial_bound"] = to_string(r.binomial_bound);
    j["cap_binding"] = r.cap_binding;
    j["report"] = to_json(r.report);
    return {j, std::nullopt};
}

Output cmd_verify_main(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph pattern = pattern_of(o);
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    if (o.L.empty() == o.p.empty())
        throw Error("give exactly one of --L or --p");
    Rational L;
    if (! o.L.empty()) {
        L = parse_rational(o.L);
    }
    else {
        auto qr = q.as_rational();
        if (! qr || sgn(*qr) == 0)
            throw Error("--p needs a rational nonzero --q (use --L otherwise)");
        L = parse_rational(o.p) / *qr;
        L.canonicalize();
    }
    auto r = verify_main_inequality(host, pattern, n, q, L, verify_options_of(o));
    json j = header("verify main");
    j["L"] = to_string(L);
    j["report"] = to_json(r);
    return {j, reports_csv(json::array({to_json(r)}))};
}

Output cmd_peel(const Options & o)
{
    Graph host = resolve_graph(o.graph, "graph");
    Graph pattern = pattern_of(o);
    Rational a;
    if (! o.a.empty()) {
        if (! o.p.empty())
            throw Error("give either --a or --n with --p");
        a = parse_rational(o.a);
    }
    else {
        a = peel_threshold_a(pattern, require_n(o), require_rational(o.p, "p"));
    }
    auto r = peel_min_degree(host, pattern, a, o.seed);
    auto list = [](const std::vector<Vertex> & vs) {
        json out = json::array();
        for (auto v : vs)
            out.push_back(std::to_string(v));
        return out;
    };
    json j = header("peel");
    j["graph"] = to_graph6(host);
    j["pattern"] = to_graph6(pattern);
    j["a"] = to_string(a);
    j["copies"] = std::to_string(r.copies);
    j["hypothesis"] = r.hypothesis;
    j["survivors"] = list(r.survivors);
    j["deletion_order"] = list(r.deletion_order);
    j["min_degree"] = std::to_string(r.min_degree);
    return {j, std::nullopt};
}

Output cmd_ellhat(const Options & o)
{
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    Rational delta = require_rational(o.delta, "delta");
    auto e = ell_hat(n, q, delta);
    json j = header("ellhat");
    j["n"] = std::to_string(n);
    j["q"] = root_json(q, o.digits);
    j["delta"] = to_string(delta);
    j["ell_hat"] = std::to_string(e.value);
    j["below_at_value"] = e.below_at_value;
    j["reached_at_next"] = e.reached_at_next;
    return {j, std::nullopt};
}

Output cmd_pc(const Options & o)
{
    TrialPlan plan;
    plan.n = require_n(o);
    plan.pattern = pattern_of(o);
    plan.trials = o.trials;
    plan.seed = o.seed.value_or(0);
    plan.tolerance = parse_rational(o.tolerance);
    plan.confidence = parse_rational(o.confidence);
    auto r = estimate_pc(plan);
    json j = header("pc");
    j["pattern"] = to_graph6(plan.pattern);
    j.update(to_json(r, o.digits));
    return {j, trace_csv(r)};
}

Output cmd_gen(const Options & o)
{
    if (o.family.empty())
        throw Error("missing --family");
    Family family = parse_family(o.family);
    std::size_t n = require_n(o);
    Root q = require_real(o.q, "q");
    FamilyParams params;
    params.vertices = o.vertices;
    params.kappa = parse_rational(o.kappa);
    params.sizes = parse_list(o.sizes);
    params.legs = parse_list(o.legs);
    params.paths = o.paths;
    params.length = o.path_length;
    params.k = o.k;
    params.r = o.r;
    const std::uint64_t seed = o.seed.value_or(0);
    json instances = json::array();
    std::string c = "index,graph6,vertices,edges,repairs\n";
    for (std::size_t i = 0; i < o.count; ++i) {
        Stream stream(seed, i);
        auto g = generate_sparse(n, q, family, stream, params);
        instances.push_back({{"graph6", to_graph6(g.graph)},
                             {"vertices", std::to_string(g.graph.order())},
                             {"edges", std::to_string(g.graph.size())},
                             {"params", g.params},
                             {"repairs", std::to_string(g.repairs)}});
        c += std::to_string(i) + "," + to_graph6(g.graph) + "," + std::to_string(g.graph.order()) + "," +
             std::to_string(g.graph.size()) + "," + std::to_string(g.repairs) + "\n";
    }
    json j = header("gen");
    j["family"] = to_string(family);
    j["n"] = std::to_string(n);
    j["q"] = root_json(q, o.digits);
    j["seed"] = std::to_string(seed);
    j["instances"] = instances;
    return {j, c};
}

Output cmd_search(const Options & o)
{
    SearchOptions s;
    s.host_cap = o.host_cap;
    s.budget = o.budget;
    s.seed = o.seed.value_or(0);
    s.chains = o.chains;
    s.top_k = o.top_k;
    s.sparsity = sparsity_of(o);
    s.counting = counting_of(o);
    Graph pattern = pattern_of(o);
    std::size_t n = require_n(o);
    auto r = extremal_search(n, require_real(o.q, "q"), pattern, s);
    json j = header("search");
    j.update(to_json(r, s.seed, o.digits));
    return {j, leaderboard_csv(r.leaderboard, r.expectation, s.seed)};
}

Output cmd_sweep(const Options & o)
{
    Graph pattern = pattern_of(o);
    std::size_t n = require_n(o);
    auto r = exhaustive_sweep(n, require_real(o.q, "q"), pattern, o.v_cap, sparsity_of(o), counting_of(o));
    json j = header("sweep");
    j["pattern"] = to_graph6(pattern);
    j["n"] = std::to_string(n);
    j["q"] = root_json(require_real(o.q, "q"), o.digits);
    j["v_cap"] = std::to_string(o.v_cap);
    j.update(to_json(r, o.digits));
    return {j, leaderboard_csv(r.maximizers, r.expectation, 0)};
}

// Appends "--key value" for each key=value line of the config file whose
// flag is not already on the command line, so flags win.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (! path)
        return args;
    std::ifstream in(*path);
    if (! in)
        throw Error("cannot read config file '" + *path + "'");
    auto present = [&](const std::string & flag) {
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string & a) { return a == flag || a.starts_with(flag + "="); });
    };
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(number) + ": expected key=value", number);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        std::string flag = "--" + key;
        if (key.empty() || present(flag))
            continue;
        if (value == "true" || value == "yes" || value == "on")
            args.push_back(flag);
        else if (value == "false" || value == "no" || value == "off")
            continue;
        else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

} // namespace

int run(const std::vector<std::string> & raw_args, std::ostream & out, std::ostream & err)
{
    Options o;
    std::string command;
    std::function<Output(const Options &)> handler;

    CLI::App app{"Exact subgraph counts, sparsity thresholds and checks for G(n,p) containment."};
    app.name("kklab");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "Worker threads (0 = available parallelism)");
    app.add_option("--seed", o.seed, "Master seed for every random stream");
    app.add_option("--out", o.out, "Write the report here instead of stdout");
    app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--digits", o.digits, "Decimal digits in enclosures (>= 4)");
    app.set_help_flag("-h,--help", "Print help; --config FILE reads key=value defaults for any flag");

    auto graph_opt = [&](CLI::App * s) { s->add_option("--graph", o.graph, "Host graph: file, '-' for stdin, family token or g6:<graph6>"); };
    auto pattern_opts = [&](CLI::App * s) {
        s->add_option("--pattern", o.pattern, "Pattern graph: file, family token (K3, C4, P2, S3) or g6:<graph6>");
        s->add_option("--family", o.family, "Pattern family: clique, cycle, path, star");
        s->add_option("--param", o.param, "Family parameter (order, length or leaves)");
    };
    auto count_opts = [&](CLI::App * s) { s->add_option("--node-budget", o.node_budget, "Search-tree node budget"); };
    auto sparsity_opts = [&](CLI::App * s) {
        s->add_option("--edge-cap", o.edge_cap, "Largest host for exact subset enumeration");
        s->add_flag("--heuristic", o.heuristic, "Connected subgraphs only; the result is a lower bound");
        s->add_option("--heuristic-edges", o.heuristic_edges, "Subgraph size limit in heuristic mode");
    };
    auto sub = [&](CLI::App * parent, const std::string & name, const std::string & help,
                   Output (*fn)(const Options &)) {
        CLI::App * s = parent->add_subcommand(name, help);
        s->fallthrough();
        s->callback([&, s, fn] {
            command = s->get_name();
            handler = fn;
        });
        return s;
    };

    auto * count = sub(&app, "count", "Copies of a pattern in a graph", cmd_count);
    graph_opt(count);
    pattern_opts(count);
    count_opts(count);
    count->add_flag("--labeled", o.labeled, "Count labeled copies (injective homomorphisms)");

    auto * gam = sub(&app, "gamma", "Most paths of a given length between two vertices", cmd_gamma);
    graph_opt(gam);
    count_opts(gam);
    gam->add_option("--length", o.length, "Path length in edges")->required();

    auto * pack = sub(&app, "pack", "Maximum number of edge-disjoint copies", cmd_pack);
    graph_opt(pack);
    pattern_opts(pack);
    pack->add_flag("--greedy", o.greedy, "Greedy lower bound instead of the exact value");

    graph_opt(sub(&app, "density", "Maximum density with a witness subgraph", cmd_density));
    graph_opt(sub(&app, "aut", "Automorphism group order and canonical form", cmd_aut));

    for (auto [name, help, fn] : {std::tuple{"qmin", "Least q at which the graph is q-sparse",
                                             +[](const Options & x) { return threshold_output(x, "qmin", Rational(1)); }},
                                  std::tuple{"pe", "Expectation threshold",
                                             +[](const Options & x) { return threshold_output(x, "pe", Rational(1, 2)); }}}) {
        auto * s = sub(&app, name, help, fn);
        graph_opt(s);
        sparsity_opts(s);
        s->add_option("--n", o.n, "Number of vertices of G(n,p)");
        s->add_flag("--table", o.table, "One row per subgraph class");
    }

    auto * sparse = sub(&app, "sparse-check", "Exact q-sparsity check with a witness", cmd_sparse_check);
    graph_opt(sparse);
    sparsity_opts(sparse);
    sparse->add_option("--n", o.n);
    sparse->add_option("--q", o.q, "Rational, decimal or root:B:E for B^(-1/E)");

    auto * expect = sub(&app, "expect", "Expected number of copies in G(n,p)", cmd_expect);
    graph_opt(expect);
    pattern_opts(expect);
    expect->add_option("--n", o.n);
    expect->add_option("--p", o.p);

    auto * reql = sub(&app, "required-l", "Least L with N(H,F) <= E_{Lq} X_F", cmd_required_l);
    graph_opt(reql);
    pattern_opts(reql);
    count_opts(reql);
    sparsity_opts(reql);
    reql->add_option("--n", o.n);
    reql->add_option("--q", o.q);

    CLI::App * verify = app.add_subcommand("verify", "Check the structural bounds and tree-argument steps");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto * props = sub(verify, "props", "Degree, density, edge and packing bounds", cmd_verify_props);
    graph_opt(props);
    pattern_opts(props);
    count_opts(props);
    sparsity_opts(props);
    props->add_option("--n", o.n);
    props->add_option("--q", o.q);
    auto * fit = sub(verify, "fit", "Fit partition of labeled tree copies", cmd_verify_fit);
    graph_opt(fit);
    pattern_opts(fit);
    fit->add_option("--eps", o.eps);
    fit->add_option("--d", o.d);
    auto * legal = sub(verify, "legal", "Legal degree sequences", cmd_verify_legal);
    legal->add_option("--f", o.f, "Child counts, e.g. 1,1,0");
    legal->add_option("--lo", o.lo, "Least big degree");
    legal->add_option("--eps", o.eps);
    legal->add_option("--d", o.d);
    legal->add_option("--D", o.D, "Sum of the big entries");
    legal->add_option("--cap", o.cap, "Largest big entry (default max(lo, D))");
    auto * main_ineq = sub(verify, "main", "N(H,F) < E_{Lq} X_F", cmd_verify_main);
    graph_opt(main_ineq);
    pattern_opts(main_ineq);
    count_opts(main_ineq);
    sparsity_opts(main_ineq);
    main_ineq->add_option("--n", o.n);
    main_ineq->add_option("--q", o.q);
    main_ineq->add_option("--L", o.L);
    main_ineq->add_option("--p", o.p);

    auto * peel = sub(&app, "peel", "Peel to a copy hypergraph of minimum degree a", cmd_peel);
    graph_opt(peel);
    pattern_opts(peel);
    peel->add_option("--a", o.a);
    peel->add_option("--n", o.n);
    peel->add_option("--p", o.p, "Derive a = E_p X_F / n");

    auto * ell = sub(&app, "ellhat", "Largest l with (nq)^(l + delta) < n", cmd_ellhat);
    ell->add_option("--n", o.n);
    ell->add_option("--q", o.q);
    ell->add_option("--delta", o.delta);

    auto * pc = sub(&app, "pc", "Monte Carlo estimate of the containment threshold", cmd_pc);
    pattern_opts(pc);
    pc->add_option("--n", o.n);
    pc->add_option("--trials", o.trials);
    pc->add_option("--tolerance", o.tolerance);
    pc->add_option("--confidence", o.confidence);

    auto * gen = sub(&app, "gen", "Generate certified q-sparse graphs", cmd_gen);
    gen->add_option("--family", o.family, "gnp-repair, clique-union, theta, spider, path-power");
    gen->add_option("--n", o.n);
    gen->add_option("--q", o.q);
    gen->add_option("--count", o.count);
    gen->add_option("--vertices", o.vertices);
    gen->add_option("--kappa", o.kappa);
    gen->add_option("--sizes", o.sizes, "Clique orders, e.g. 3,4");
    gen->add_option("--paths", o.paths);
    gen->add_option("--length", o.path_length);
    gen->add_option("--legs", o.legs, "Leg lengths, e.g. 1,2,2");
    gen->add_option("--k", o.k);
    gen->add_option("--r", o.r);

    auto * search = sub(&app, "search", "Annealing search for hosts with large required L", cmd_search);
    pattern_opts(search);
    count_opts(search);
    sparsity_opts(search);
    search->add_option("--n", o.n);
    search->add_option("--q", o.q);
    search->add_option("--budget", o.budget);
    search->add_option("--host-cap", o.host_cap);
    search->add_option("--chains", o.chains);
    search->add_option("--top-k", o.top_k);

    auto * sweep = sub(&app, "sweep", "Exhaustive maximizer over small hosts", cmd_sweep);
    pattern_opts(sweep);
    count_opts(sweep);
    sparsity_opts(sweep);
    sweep->add_option("--n", o.n);
    sweep->add_option("--q", o.q);
    sweep->add_option("--v-cap", o.v_cap);

    auto fail = [&](int code, const std::string & kind, const std::string & message,
                    const std::optional<std::string> & witness) {
        err << "kklab: " << message << "\n";
        if (witness)
            err << "witness: " << *witness << "\n";
        json j = header(command);
        j["error"] = kind;
        j["message"] = message;
        j["witness"] = witness ? json(*witness) : json(nullptr);
        out << j.dump(2) << "\n";
        return code;
    };

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    catch (const Error & e) {
        err << "kklab: " << e.what() << "\n";
        return 1;
    }

    try {
        if (o.digits < 4)
            throw Error("--digits must be at least 4");
        set_thread_count(o.threads);
        Output result = handler(o);
        std::string text = render(result, o.format);
        if (o.out.empty()) {
            out << text;
        }
        else {
            std::ofstream file(o.out, std::ios::binary);
            if (! file || ! (file << text))
                throw Error("cannot write '" + o.out + "'");
        }
        return 0;
    }
    catch (const PreconditionError & e) {
        return fail(2, "precondition", e.what(), e.witness());
    }
    catch (const ResourceGuardError & e) {
        return fail(3, "resource_guard", e.what(), std::nullopt);
    }
    catch (const ParseError & e) {
        return fail(1, "parse", e.what(), std::nullopt);
    }
    catch (const Error & e) {
        return fail(1, "usage", e.what(), std::nullopt);
    }
}

} // namespace kklab::cli
