#include <kklab/graph_io.hpp>

#include <kklab/errors.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

namespace kklab {

namespace {

constexpr std::string_view graph6_header = ">>graph6<<";

std::string_view strip(std::string_view s)
{
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Graph parse_graph6(std::string_view text)
{
    std::size_t base = 0;
    if (text.starts_with(graph6_header)) {
        text.remove_prefix(graph6_header.size());
        base = graph6_header.size();
    }
    while (! text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);

    std::size_t pos = 0;
    auto byte = [&](std::size_t i) -> unsigned {
        if (i >= text.size())
            throw ParseError("graph6: truncated input", base + i);
        auto c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126)
            throw ParseError("graph6: byte out of range", base + i);
        return c - 63U;
    };

    std::size_t n = 0;
    if (byte(0) < 63) {
        n = byte(0);
        pos = 1;
    }
    else if (byte(1) < 63) {
        n = (std::size_t{byte(1)} << 12) | (std::size_t{byte(2)} << 6) | byte(3);
        pos = 4;
    }
    else {
        n = 0;
        for (std::size_t i = 2; i < 8; ++i)
            n = (n << 6) | byte(i);
        pos = 8;
    }

    std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::size_t needed = (bits + 5) / 6;
    if (text.size() != pos + needed)
        throw ParseError("graph6: expected " + std::to_string(pos + needed) + " bytes, got " +
                             std::to_string(text.size()),
                         base + std::min(text.size(), pos + needed));

    std::vector<Edge> es;
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++k) {
            unsigned chunk = byte(pos + k / 6);
            if ((chunk >> (5 - k % 6)) & 1U)
                es.push_back({i, j});
        }
    if (bits % 6 != 0) {
        unsigned last = byte(pos + needed - 1);
        if (last & ((1U << (6 - bits % 6)) - 1))
            throw ParseError("graph6: nonzero padding bits", base + pos + needed - 1);
    }
    return Graph::from_edges(n, es);
}

std::string to_graph6(const Graph & g)
{
    std::size_t n = g.order();
    std::string out;
    if (n < 63)
        out.push_back(static_cast<char>(n + 63));
    else if (n < 258048) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6)
            out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }
    else {
        out.push_back(126);
        out.push_back(126);
        for (int s = 30; s >= 0; s -= 6)
            out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }
    unsigned chunk = 0, filled = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) {
            chunk = (chunk << 1) | (g.adjacent(i, j) ? 1U : 0U);
            if (++filled == 6) {
                out.push_back(static_cast<char>(chunk + 63));
                chunk = filled = 0;
            }
        }
    if (filled > 0)
        out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
    return out;
}

Graph parse_edge_list(std::string_view text)
{
    std::vector<Edge> es;
    std::set<Edge> seen;
    std::optional<std::size_t> declared;
    std::size_t max_id_plus_one = 0;
    std::size_t line_no = 0;
    bool seen_content = false;

    auto parse_id = [&](std::string_view tok) -> Vertex {
        if (tok.empty() || tok.size() > 9)
            throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" + std::string(tok) + "'", line_no);
        Vertex v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" + std::string(tok) + "'",
                                 line_no);
            v = v * 10 + static_cast<Vertex>(c - '0');
        }
        return v;
    };

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) {
            if (end == text.size())
                break;
            continue;
        }
        if (line.starts_with("n=")) {
            if (seen_content)
                throw ParseError("line " + std::to_string(line_no) + ": header must precede edges", line_no);
            declared = parse_id(strip(line.substr(2)));
            seen_content = true;
            continue;
        }
        seen_content = true;
        std::istringstream in{std::string(line)};
        std::string a, b, extra;
        in >> a >> b;
        if (a.empty() || b.empty() || (in >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'", line_no);
        Vertex u = parse_id(a), v = parse_id(b);
        if (u == v)
            throw ParseError("line " + std::to_string(line_no) + ": loop at vertex " + std::to_string(u), line_no);
        if (declared && (u >= *declared || v >= *declared))
            throw ParseError("line " + std::to_string(line_no) + ": vertex id exceeds declared n", line_no);
        Edge e = make_edge(u, v);
        if (! seen.insert(e).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate edge", line_no);
        es.push_back(e);
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::size_t{e.v} + 1);
        if (end == text.size())
            break;
    }
    return Graph::from_edges(declared.value_or(max_id_plus_one), es);
}

std::string to_edge_list(const Graph & g)
{
    std::ostringstream out;
    std::size_t implied = g.edges().empty() ? 0 : std::size_t{g.edges().back().v} + 1;
    for (const auto & e : g.edges())
        implied = std::max<std::size_t>(implied, std::size_t{e.v} + 1);
    if (implied != g.order())
        out << "n=" << g.order() << '\n';
    for (const auto & e : g.edges())
        out << e.u << ' ' << e.v << '\n';
    return out.str();
}

Graph parse_graph(std::string_view text)
{
    auto s = strip(text);
    bool graph6 = ! s.empty();
    if (s.starts_with(graph6_header))
        s.remove_prefix(graph6_header.size());
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (u < 63 || u > 126) {
            graph6 = false;
            break;
        }
    }
    return graph6 ? parse_graph6(strip(text)) : parse_edge_list(text);
}

Graph read_graph(const std::string & path)
{
    std::string content;
    if (path == "-") {
        content.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    else {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot read '" + path + "'");
        content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse_graph(content);
}

} // namespace kklab
