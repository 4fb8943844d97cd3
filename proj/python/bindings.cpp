#include <kklab/automorphism.hpp>
#include <kklab/cli.hpp>
#include <kklab/counting.hpp>
#include <kklab/errors.hpp>
#include <kklab/expectation.hpp>
#include <kklab/graph_io.hpp>
#include <kklab/report.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kklab;

namespace {

// BigInt crosses the boundary as a decimal string; Python ints are unbounded.
py::int_ to_py(const BigInt & value)
{
    return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(value.get_str().c_str(), nullptr, 10)));
}

py::object to_py(const nlohmann::json & j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

Graph make_graph(std::size_t order, const std::vector<std::pair<Vertex, Vertex>> & pairs)
{
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs)
        edges.push_back(make_edge(a, b));
    return Graph::from_edges(order, edges);
}

py::dict threshold_dict(const SparsityReport & r)
{
    py::dict d;
    d["value"] = to_py(root_json(r.value));
    d["binding_graph6"] = to_graph6(r.binding.graph);
    d["binding_edges"] = r.binding.edge_count();
    d["lower_bound"] = r.lower_bound;
    d["subgraphs_examined"] = r.subgraphs_examined;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact subgraph counts and sparsity thresholds";

    static py::exception<Error> error(m, "Error");
    static py::exception<PreconditionError> precondition(m, "PreconditionError", error.ptr());
    static py::exception<ResourceGuardError> guard(m, "ResourceGuardError", error.ptr());
    static py::exception<ParseError> parse(m, "ParseError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const PreconditionError & e) {
            std::string msg = e.what();
            if (e.witness())
                msg += " (witness: " + *e.witness() + ")";
            py::set_error(precondition, msg.c_str());
        }
        catch (const ResourceGuardError & e) {
            py::set_error(guard, e.what());
        }
        catch (const ParseError & e) {
            py::set_error(parse, e.what());
        }
        catch (const Error & e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("order"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
        .def_static("parse", [](const std::string & text) { return parse_graph(text); },
                    "graph6 text or an edge list")
        .def_static("complete", &families::complete)
        .def_static("cycle", &families::cycle)
        .def_static("path", &families::path, py::arg("edges"))
        .def_static("star", &families::star, py::arg("leaves"))
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("size", &Graph::size)
        .def("edges",
             [](const Graph & g) {
                 std::vector<std::pair<Vertex, Vertex>> out;
                 for (const Edge & e : g.edges())
                     out.emplace_back(e.u, e.v);
                 return out;
             })
        .def("graph6", [](const Graph & g) { return to_graph6(g); })
        .def("__eq__", [](const Graph & a, const Graph & b) { return a == b; })
        .def("__repr__",
             [](const Graph & g) {
                 return "Graph(order=" + std::to_string(g.order()) + ", size=" + std::to_string(g.size()) + ")";
             });

    m.def("count_copies", [](const Graph & h, const Graph & f) { return to_py(count_copies(h, f)); },
          py::arg("host"), py::arg("pattern"), "N(H,F): unlabeled copies of F in H");
    m.def("count_labeled", [](const Graph & h, const Graph & f) { return to_py(count_labeled(h, f)); },
          py::arg("host"), py::arg("pattern"));
    m.def("automorphism_count", [](const Graph & g) { return to_py(automorphism_count(g)); });

    m.def("q_min", [](const Graph & h, std::size_t n) { return threshold_dict(q_min(h, n)); }, py::arg("host"),
          py::arg("n"));
    m.def("check_sparse",
          [](const Graph & h, std::size_t n, const std::string & q) {
              auto c = check_sparse(h, n, parse_real(q));
              py::dict d;
              d["sparse"] = c.sparse;
              if (c.witness) {
                  d["witness_graph6"] = to_graph6(c.witness->graph);
                  d["witness_expectation"] = to_py(root_json(*c.witness_expectation));
              }
              return d;
          },
          py::arg("host"), py::arg("n"), py::arg("q"), "q as a rational or root:B:E token");
    m.def("required_L",
          [](const Graph & h, const Graph & f, std::size_t n, const std::string & q) {
              return to_py(root_json(required_L(h, f, n, parse_real(q))));
          },
          py::arg("host"), py::arg("pattern"), py::arg("n"), py::arg("q"));

    m.def("run_cli",
          [](const std::vector<std::string> & args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = cli::run(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs one kklab command line; returns (exit code, stdout, stderr).");
}
