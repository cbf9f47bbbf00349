#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nse/certificate_io.hpp"
#include "nse/gmatrix.hpp"
#include "nse/graph.hpp"
#include "nse/line1d.hpp"
#include "nse/plane2d.hpp"

namespace py = pybind11;
using namespace nse;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  out.reserve(g.edges().size());
  for (const Edge& e : g.edges()) out.emplace_back(e.i, e.j);
  return out;
}

py::dict report_to_dict(const VerificationReport& rep) {
  py::list checks;
  for (const VerificationCheck& c : rep.checks) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["residual"] = c.residual;
    d["detail"] = c.detail;
    checks.append(d);
  }
  py::dict out;
  out["ok"] = rep.ok;
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "line and circle embedding certificates for graphs";

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             return Graph(n, edges);
           }),
           py::arg("n"), py::arg("edges"),
           "Simple undirected graph on nodes 0..n-1.")
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("edges",
                             [](const Graph& g) { return edge_pairs(g); })
      .def("has_edge", &Graph::has_edge, py::arg("i"), py::arg("j"))
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) +
               ", m=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly(
          "kind",
          [](const Certificate& c) { return certificate_kind_name(c.kind); })
      .def_property_readonly(
          "graph", [](const Certificate& c) { return c.matrix.graph; })
      .def_property_readonly(
          "matrix",
          [](const Certificate& c) -> Matrix { return c.matrix.to_dense(); })
      .def_property_readonly(
          "eigenvalues",
          [](const Certificate& c) -> Vector { return c.eigen.eigenvalues; })
      .def_property_readonly(
          "corank", [](const Certificate& c) { return c.eigen.corank; })
      .def_property_readonly(
          "n_negative",
          [](const Certificate& c) { return c.eigen.n_negative; })
      .def_property_readonly(
          "embedding",
          [](const Certificate& c) -> Matrix { return c.embedding; })
      .def_property_readonly(
          "tolerance", [](const Certificate& c) { return c.tolerance; })
      .def_property_readonly(
          "report", [](const Certificate& c) { return c.report; })
      .def("to_json",
           [](const Certificate& c) { return certificate_to_json(c); })
      .def("to_svg",
           [](const Certificate& c) { return certificate_to_svg(c); })
      .def("__repr__", [](const Certificate& c) {
        return "Certificate(kind=" + certificate_kind_name(c.kind) +
               ", n=" + std::to_string(c.matrix.graph.node_count()) +
               ", corank=" + std::to_string(c.eigen.corank) + ")";
      });

  m.def(
      "embed_line",
      [](const Graph& g, double tol, std::uint64_t seed) {
        LineOptions opts;
        opts.tol_scale = tol;
        opts.seed = seed;
        return embed_line(g, opts);
      },
      py::arg("graph"), py::arg("tol") = 1e-9, py::arg("seed") = 0,
      "Either a path embedding of the connected graph or a well-signed\n"
      "matrix with one negative eigenvalue and corank at least 2.",
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "embed_plane",
      [](const Graph& g, double tol, std::uint64_t seed) {
        PlaneOptions opts;
        opts.tol_scale = tol;
        opts.seed = seed;
        return embed_plane(g, opts);
      },
      py::arg("graph"), py::arg("tol") = 1e-9, py::arg("seed") = 0,
      "Either an outerplanar unit-circle embedding of the 2-connected graph\n"
      "or a well-signed matrix with one negative eigenvalue and corank at\n"
      "least 3.",
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "verify_certificate",
      [](const Certificate& cert, double tol) {
        return report_to_dict(
            verify_certificate(cert, cert.matrix.graph, tol));
      },
      py::arg("certificate"), py::arg("tol") = 1e-9,
      "Re-check every property a certificate claims; returns a dict with\n"
      "'ok' and the individual 'checks'.");

  m.def("parse_edge_list", &parse_edge_list, py::arg("text"),
        "Parse the 1-based edge-list format ('n m' header, one 'i j' line\n"
        "per edge).");
  m.def("write_edge_list", &write_edge_list, py::arg("graph"),
        "Render a graph in the 1-based edge-list format.");

  m.def(
      "certificate_from_json",
      [](const std::string& text) { return certificate_from_json(text).cert; },
      py::arg("text"), "Parse a certificate from its JSON form.");
}
