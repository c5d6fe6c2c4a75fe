#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magspec/builder.hpp"
#include "magspec/error.hpp"
#include "magspec/fiber.hpp"
#include "magspec/forms.hpp"
#include "magspec/generators.hpp"
#include "magspec/graph.hpp"
#include "magspec/io.hpp"
#include "magspec/spectral.hpp"
#include "magspec/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace magspec;

namespace {

SweepOptions sweep_options(int grid, double flat_tol) {
  SweepOptions s;
  s.grid = grid;
  s.flat_tol = flat_tol;
  return s;
}

InvariantOptions invariant_options(std::size_t tree_cap) {
  InvariantOptions o;
  o.tree_cap = tree_cap;
  return o;
}

py::list intervals(const std::vector<Interval>& bands) {
  py::list out;
  for (const Interval& b : bands) out.append(py::make_tuple(b.lo, b.hi));
  return out;
}

py::dict report_dict(const InvariantReport& r) {
  return py::dict("beta"_a = r.beta, "d"_a = r.d, "I"_a = r.I, "I_alpha"_a = r.I_alpha,
                  "I_mu_phi"_a = r.I_mu_phi, "I_mu_phi_min"_a = r.I_mu_phi_min,
                  "tree_count"_a = r.tree_count, "lattice_image_ok"_a = r.lattice_image_ok,
                  "flux_kernel_dim"_a = r.flux_kernel_dim);
}

py::dict summary_dict(const BandSpectrum& s, double bound_4I) {
  return py::dict("grid"_a = s.grid_n, "bands"_a = intervals(s.bands), "flat"_a = s.flat,
                  "measure"_a = s.measure, "width_sum"_a = s.width_sum, "bound_4I"_a = bound_4I);
}

py::array_t<double> table_array(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  py::array_t<double> out({rows.size(), cols});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) view(i, j) = rows[i][j];
  return out;
}

py::list edge_list(const FundamentalGraph& g) {
  py::list out;
  for (const Edge& e : g.edges())
    out.append(py::dict("tail"_a = e.tail, "head"_a = e.head, "index"_a = e.index, "alpha"_a = e.alpha));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Magnetic Laplacians on periodic graphs";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<FundamentalGraph>(m, "Graph")
      .def_static("from_json", [](const std::string& text) { return graph_from_json(text); }, "text"_a)
      .def_static("load", &read_graph_file, "path"_a)
      .def("to_json", &graph_to_json)
      .def_property_readonly("dim", &FundamentalGraph::dim)
      .def_property_readonly("vertex_count", &FundamentalGraph::vertex_count)
      .def_property_readonly("edge_count", &FundamentalGraph::edge_count)
      .def_property_readonly("betti", &FundamentalGraph::betti)
      .def_property_readonly("vertex_names", &FundamentalGraph::vertex_names)
      .def_property_readonly("potential", &FundamentalGraph::potential)
      .def_property_readonly("edges", &edge_list)
      .def("degree", &FundamentalGraph::degree, "vertex"_a)
      .def("with_phases",
           [](const FundamentalGraph& g, const std::vector<double>& alpha) {
             if (static_cast<int>(alpha.size()) != g.edge_count())
               throw Error(ErrorCode::DimensionMismatch, "one phase per edge expected");
             return g.with_phases(OneForm::magnetic(alpha));
           },
           "alpha"_a)
      .def("with_potential", &FundamentalGraph::with_potential, "potential"_a)
      .def("__repr__", [](const FundamentalGraph& g) {
        return "<magspec.Graph dim=" + std::to_string(g.dim()) + " vertices=" + std::to_string(g.vertex_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("zd", &make_zd, "dim"_a);
  m.def("hexagonal", &make_hexagonal);
  m.def("kagome", &make_kagome);
  m.def("path", &make_path, "n"_a);
  m.def("decorated", &make_decorated, "dim"_a, "decoration"_a);
  m.def("five_vertex", &make_five_vertex_example);
  m.def(
      "random_graph",
      [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_periodic_graph(rng);
      },
      "seed"_a);

  m.def(
      "invariants",
      [](const FundamentalGraph& g, std::size_t tree_cap) {
        return report_dict(compute_invariants(g, invariant_options(tree_cap)).report);
      },
      "graph"_a, "tree_cap"_a = kDefaultTreeCap);

  m.def(
      "fiber_matrix",
      [](const FundamentalGraph& g, const std::vector<double>& theta, bool with_potential) {
        return fiber_matrix(g, g.index_form(), g.magnetic_form(), theta, with_potential);
      },
      "graph"_a, "theta"_a, "with_potential"_a = true);

  m.def(
      "bands",
      [](const FundamentalGraph& g, int grid, double flat_tol, std::size_t tree_cap) {
        GraphInvariants inv = compute_invariants(g, invariant_options(tree_cap));
        BandSpectrum s = spectrum_bands(g, inv, sweep_options(grid, flat_tol));
        return summary_dict(s, 4.0 * inv.report.I);
      },
      "graph"_a, "grid"_a = 0, "flat_tol"_a = 1e-8, "tree_cap"_a = kDefaultTreeCap);

  m.def(
      "band_table",
      [](const FundamentalGraph& g, int grid, std::size_t tree_cap) {
        GraphInvariants inv = compute_invariants(g, invariant_options(tree_cap));
        SweepOptions s = sweep_options(grid, 1e-8);
        s.keep_table = true;
        BandSpectrum spec = spectrum_bands(g, inv, s);
        return py::make_tuple(table_array(spec.thetas, static_cast<std::size_t>(g.dim())),
                              table_array(spec.eigenvalues, static_cast<std::size_t>(g.vertex_count())));
      },
      "graph"_a, "grid"_a = 0, "tree_cap"_a = kDefaultTreeCap);

  m.def(
      "verify",
      [](const FundamentalGraph& g, int grid, std::uint64_t seed, std::size_t tree_cap) {
        VerifyOptions v;
        v.sweep = sweep_options(grid, 1e-8);
        v.tree_cap = tree_cap;
        v.seed = seed;
        VerificationReport r = run_verification(g, v);
        py::list checks;
        for (const CheckResult& c : r.checks)
          checks.append(py::dict("name"_a = c.name, "passed"_a = c.passed, "worst"_a = c.worst,
                                 "detail"_a = c.detail));
        const CheckResult* fail = r.first_failure();
        return py::dict("passed"_a = r.passed(), "invariants"_a = report_dict(r.invariants),
                        "checks"_a = checks, "first_failure"_a = fail ? py::object(py::str(fail->name)) : py::none());
      },
      "graph"_a, "grid"_a = 0, "seed"_a = 1, "tree_cap"_a = kDefaultTreeCap);

  m.def(
      "butterfly",
      [](const FundamentalGraph& g, int max_q, int grid) {
        py::list rows;
        for (const ButterflyRow& r : butterfly(g, max_q, sweep_options(grid, 1e-8)))
          rows.append(py::dict("p"_a = r.p, "q"_a = r.q, "flux"_a = r.flux, "bands"_a = intervals(r.bands)));
        return rows;
      },
      "graph"_a, "max_q"_a, "grid"_a = 0);

  m.def(
      "build_periodic",
      [](const FundamentalGraph& g, bool minimal, std::size_t tree_cap) {
        OneForm mu = g.index_form();
        OneForm phi = g.magnetic_form();
        if (minimal) {
          GraphInvariants inv = compute_invariants(g, invariant_options(tree_cap));
          mu = inv.pair_mu;
          phi = inv.pair_phi;
        }
        PeriodicGraph p = build_periodic(g, mu, phi, tree_cap);
        return py::make_tuple(p.graph, p.embedding.positions);
      },
      "graph"_a, "minimal"_a = false, "tree_cap"_a = kDefaultTreeCap);

  m.def("supercell", &supercell, "graph"_a, "multipliers"_a);
  m.def("landau_supercell", &landau_supercell, "graph"_a, "p"_a, "q"_a);
}
