#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfex/canonical.hpp"
#include "surfex/construction.hpp"
#include "surfex/degseq.hpp"
#include "surfex/embedding.hpp"
#include "surfex/error.hpp"
#include "surfex/extremal.hpp"
#include "surfex/families.hpp"
#include "surfex/io.hpp"
#include "surfex/spectral.hpp"
#include "surfex/walks.hpp"

namespace py = pybind11;
using namespace surfex;

namespace {

std::vector<Edge> to_edges(const std::vector<std::pair<Vertex, Vertex>>& e) {
    std::vector<Edge> out;
    out.reserve(e.size());
    for (auto [u, v] : e) out.emplace_back(u, v);
    return out;
}

py::list edge_list(const Graph& g) {
    py::list l;
    for (const Edge& e : g.edges()) l.append(py::make_tuple(e.u, e.v));
    return l;
}

// Walk counts come back as Python ints.
py::list walk_list(const WalkProfile& p) {
    py::list l;
    py::object pyint = py::module_::import("builtins").attr("int");
    for (const auto& w : p.exact) l.append(pyint(py::str(w.str())));
    return l;
}

py::dict trace_dict(const FaceTrace& t) {
    py::dict d;
    d["f"] = t.f;
    d["genus"] = t.genus;
    d["orientable"] = t.orientable;
    d["faces"] = t.faces;
    return d;
}

} // namespace

PYBIND11_MODULE(surfex, m) {
    m.doc() = "Spectral extremal graphs on surfaces";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ScaleRefusal>(m, "ScaleRefusal", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
    // most derived last: later translators are tried first
    auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", pre.ptr());

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                 return Graph::from_edges(n, to_edges(edges));
             }),
             py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("size", &Graph::size)
        .def("edges", &edge_list)
        .def("degree", &Graph::degree)
        .def("has_edge", &Graph::has_edge)
        .def("degree_sequence", [](const Graph& g) { return g.degree_sequence().values(); })
        .def("is_connected", &Graph::is_connected)
        .def("to_graph6", [](const Graph& g) { return to_graph6(g); })
        .def_static("from_graph6", [](const std::string& s) { return from_graph6(s); })
        .def("to_json", [](const Graph& g) { return to_json(g); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.order()) + " e=" + std::to_string(g.size()) + ">";
        });

    m.def("path_graph", &path_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("complete_graph", &complete_graph);
    m.def("empty_graph", &empty_graph);
    m.def("complete_bipartite", &complete_bipartite);
    m.def("join", &join);
    m.def("k2_join_path", &k2_join_path);
    m.def("complete_split", &complete_split);
    m.def("k2_join_cycle", &k2_join_cycle);
    m.def("kr_pendant", [](std::size_t r, std::size_t n) { return kr_pendant(r, n).graph; });
    m.def("k2_join_pendant", [](std::size_t r, std::size_t n) { return k2_join(kr_pendant(r, n - 2)).graph; },
          "K2 join K_r^{n-2}, order n");
    m.def("isomorphic", &isomorphic);

    m.def(
        "spectral_radius",
        [](const Graph& g, double tol, std::size_t max_iterations) {
            SpectralOptions o;
            o.tol = tol;
            o.max_iterations = max_iterations;
            SpectralResult r = spectral_radius(g, o);
            py::dict d;
            d["rho"] = r.rho;
            d["perron"] = r.perron;
            d["residual"] = r.residual;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("g"), py::arg("tol") = 1e-10, py::arg("max_iterations") = 1000000);
    m.def("rho0", &rho0);
    m.def("bounds", [](std::size_t n, std::size_t gamma) {
        BoundEnvelope b = bounds(n, gamma);
        py::dict d;
        d["rho0"] = b.rho0;
        d["lower"] = b.lower;
        d["upper"] = b.upper;
        d["ellingham_zha"] = b.ellingham_zha;
        d["n_threshold"] = b.n_threshold;
        return d;
    });

    m.def("walk_counts", [](const Graph& g, std::size_t L) { return walk_list(walk_counts(g, L)); });
    m.def("walk_compare", [](const Graph& a, const Graph& b, std::size_t lmax) {
        WalkComparison c = walk_compare(a, b, lmax);
        py::dict d;
        d["equal"] = c.equal;
        d["k"] = c.k;
        d["sign"] = c.sign;
        return d;
    });
    m.def("zhang_rho", [](const std::vector<std::pair<std::size_t, Graph>>& parts) {
        std::vector<ZhangPart> p;
        for (const auto& [n, h] : parts) p.push_back({n, h});
        return zhang_rho(p);
    });
    m.def(
        "max_w3_degseq",
        [](const std::vector<std::size_t>& degrees, const std::string& realizations) {
            W3SearchOptions o;
            if (realizations == "no-isolated-edge") o.realizations = W3SearchOptions::Realizations::no_isolated_edge;
            else if (realizations == "connected") o.realizations = W3SearchOptions::Realizations::connected;
            else if (realizations != "all") throw PreconditionError("unknown realization class '" + realizations + "'");
            W3SearchResult r = max_w3_degseq(DegreeSequence(degrees), o);
            py::dict d;
            d["w3"] = r.w3;
            d["exhaustive"] = r.exhaustive;
            d["witness"] = r.witness;
            return d;
        },
        py::arg("degrees"), py::arg("realizations") = "all");

    m.def("construct_ex", [](std::size_t n, std::size_t gamma) {
        ConstructionTrace t = construct_ex(n, gamma);
        py::dict d;
        d["graph"] = t.graph;
        d["path"] = t.witness.path_order;
        std::vector<std::pair<Vertex, Vertex>> added;
        for (const Edge& e : t.added_edges) added.emplace_back(e.u, e.v);
        d["added_edges"] = added;
        return d;
    });
    m.def("has_minor", [](const Graph& g, const Graph& h) { return has_minor(g, h); });
    m.def("is_planar", &is_planar);

    m.def("trace_scheme_json", [](const std::string& text) { return trace_dict(trace_faces(EmbeddingScheme::from_json(text))); });
    m.def("k6_projective_json", [] { return k6_projective_scheme().to_json(); });
    m.def("k7_torus_json", [] { return k7_torus_scheme().to_json(); });
    m.def(
        "min_euler_genus",
        [](const Graph& g, bool orientable_only) {
            GenusResult r = min_euler_genus(g, orientable_only);
            py::dict d;
            d["genus"] = r.genus;
            d["orientable"] = r.orientable;
            d["exhaustive"] = r.exhaustive;
            d["certificate"] = r.certificate.to_json();
            return d;
        },
        py::arg("g"), py::arg("orientable_only") = false);
    m.def("triangulation_genus", [](const Graph& g) -> py::object {
        auto s = find_triangulation(g);
        if (!s) return py::none();
        return trace_dict(trace_faces(*s));
    });
}
