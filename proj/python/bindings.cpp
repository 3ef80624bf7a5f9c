#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "graphsl/dirichlet.hpp"
#include "graphsl/error.hpp"
#include "graphsl/exhaustion.hpp"
#include "graphsl/experiment.hpp"
#include "graphsl/generators.hpp"
#include "graphsl/io.hpp"
#include "graphsl/liouville.hpp"
#include "graphsl/radial.hpp"

namespace py = pybind11;
using namespace graphsl;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const VertexField& f) {
    Array out(static_cast<py::ssize_t>(f.size()));
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

VertexField to_field(const Array& a, std::size_t expected) {
    if (a.ndim() != 1 || static_cast<std::size_t>(a.size()) != expected)
        throw Error(ErrorCode::InvalidParameter,
                    "field must be a 1-d array of length " + std::to_string(expected));
    return VertexField(std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict trace_dict(const IterationTrace& tr) {
    py::list steps;
    for (const auto& s : tr.steps) {
        py::dict d;
        d["j"] = s.j;
        d["root_value"] = s.root_value;
        d["sup_delta"] = s.sup_delta;
        d["min_over_ball"] = s.min_over_ball;
        d["max_over_ball"] = s.max_over_ball;
        d["bounds_ok"] = s.bounds_ok;
        d["monotone_ok"] = s.monotone_ok;
        steps.append(d);
    }
    py::dict out;
    out["steps"] = steps;
    out["final"] = to_array(tr.final_field);
    out["status"] = std::string(to_string(tr.status));
    out["all_bounds_ok"] = tr.all_bounds_ok();
    out["all_monotone_ok"] = tr.all_monotone_ok();
    out["csv"] = trace_csv(tr);
    return out;
}

template <class Fn>
py::tuple run_command(Fn fn, const ExperimentConfig& config) {
    std::ostringstream log;
    const int code = fn(config, log);
    return py::make_tuple(code, log.str());
}

}  // namespace

PYBIND11_MODULE(_graphsl, m) {
    m.doc() = "Schroedinger operators Delta - V on weighted graphs";

    py::register_exception<Error>(m, "GraphslError", PyExc_RuntimeError);

    py::class_<WeightedGraph>(m, "WeightedGraph")
        .def_property_readonly("size", &WeightedGraph::size)
        .def_property_readonly("root", &WeightedGraph::root)
        .def_property_readonly("edge_count", &WeightedGraph::edge_count)
        .def_property_readonly("truncation_radius", &WeightedGraph::truncation_radius)
        .def("hops", &WeightedGraph::hops)
        .def("measure", &WeightedGraph::measure)
        .def("degree", &WeightedGraph::degree)
        .def("in_halo", &WeightedGraph::in_halo)
        .def("neighbors", [](const WeightedGraph& g, Vertex x) {
            const auto n = g.neighbors(x);
            return std::vector<Vertex>(n.begin(), n.end());
        })
        .def("__len__", &WeightedGraph::size);

    py::class_<PseudoMetric>(m, "PseudoMetric")
        .def("from_root", &PseudoMetric::from_root)
        .def("distances_from_root", [](const PseudoMetric& d) {
            const auto s = d.distances_from_root();
            return std::vector<double>(s.begin(), s.end());
        })
        .def_property_readonly("jump_size", &PseudoMetric::jump_size)
        .def_property_readonly("max_intrinsic_defect", &PseudoMetric::max_intrinsic_defect)
        .def_property_readonly("intrinsic", &PseudoMetric::intrinsic);

    m.def("build_model_tree",
          [](std::size_t b, std::size_t depth, double c) {
              return build_model_tree({b, depth, c});
          },
          py::arg("b"), py::arg("depth"), py::arg("c") = 1.0);
    m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
    m.def("format_graph", &format_graph);
    m.def("hop_metric", [](const WeightedGraph& g) { return path_metric(g, unit_lengths(g)); });
    m.def("intrinsic_metric",
          [](const WeightedGraph& g) { return path_metric(g, intrinsic_lengths(g)); });

    m.def("shifted_potential",
          [](const WeightedGraph& g, const PseudoMetric& d, double alpha, double scale) {
              return to_array(make_potential(g, d, {PotentialForm::ShiftedPower, alpha, scale, 1.0}));
          },
          py::arg("graph"), py::arg("metric"), py::arg("alpha"), py::arg("scale") = 1.0,
          "V = scale * (1 + d)^(-alpha)");

    m.def("laplacian",
          [](const WeightedGraph& g, const Array& f, Vertex x) {
              return laplacian(g, to_field(f, g.size()), x);
          },
          py::arg("graph"), py::arg("f"), py::arg("x"));

    m.def("solve_dirichlet",
          [](const WeightedGraph& g, std::vector<Vertex> interior, const Array& V, const Array& f,
             const Array& bc) {
              const DirichletProblem p{std::move(interior), to_field(V, g.size()),
                                       to_field(f, g.size()), to_field(bc, g.size())};
              const auto sol = solve(g, p);
              return py::make_tuple(to_array(sol.u), sol.max_residual);
          },
          py::arg("graph"), py::arg("interior"), py::arg("potential"), py::arg("f"), py::arg("g"),
          "Solve (Delta - V) u = f on the interior with u = g outside; returns (u, max_residual).");

    m.def("radial_dirichlet",
          [](std::size_t b, double c, const std::vector<double>& V, std::size_t R, double gamma) {
              return radial_dirichlet(b, c, V, R, gamma).values;
          },
          py::arg("b"), py::arg("c"), py::arg("potential"), py::arg("radius"), py::arg("gamma"));

    m.def("dirichlet_exhaustion",
          [](const WeightedGraph& g, const PseudoMetric& d, const Array& V, double gamma,
             const std::vector<std::size_t>& radii, double tol) {
              ExhaustionOptions o;
              o.tolerance = tol;
              return trace_dict(dirichlet_exhaustion(g, d, to_field(V, g.size()), gamma, radii, o));
          },
          py::arg("graph"), py::arg("metric"), py::arg("potential"), py::arg("gamma"),
          py::arg("radii"), py::arg("tol") = 1e-8);

    m.def("make_barrier",
          [](std::size_t b, double alpha, double c0, double mu_c) {
              const auto h = make_barrier(b, alpha, c0, mu_c);
              py::dict d;
              d["beta"] = h.beta;
              d["epsilon"] = h.epsilon;
              d["r_hat"] = h.r_hat;
              d["c_hat"] = h.c_hat;
              return d;
          },
          py::arg("b"), py::arg("alpha"), py::arg("c0") = 1.0, py::arg("mu_c") = 1.0);

    m.def("check_summability",
          [](std::size_t b, double lambda_cap, double alpha) {
              const auto r = check_summability(ModelTreeSpec{b, 1, 1.0}, lambda_cap, alpha);
              return py::make_tuple(std::string(to_string(r.verdict)), r.limit_ratio);
          },
          py::arg("b"), py::arg("lambda_cap"), py::arg("alpha"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("tree_b", &ExperimentConfig::tree_b)
        .def_readwrite("tree_depth", &ExperimentConfig::tree_depth)
        .def_readwrite("measure_c", &ExperimentConfig::measure_c)
        .def_readwrite("alpha_grid", &ExperimentConfig::alpha_grid)
        .def_readwrite("potential_scale", &ExperimentConfig::potential_scale)
        .def_readwrite("gamma", &ExperimentConfig::gamma)
        .def_readwrite("lambda_cap", &ExperimentConfig::lambda_cap)
        .def_readwrite("lambda_xi", &ExperimentConfig::lambda_xi)
        .def_readwrite("radii", &ExperimentConfig::radii)
        .def_readwrite("tol", &ExperimentConfig::tol)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("normalize_m", &ExperimentConfig::normalize_m)
        .def_readwrite("quadrature_nodes", &ExperimentConfig::quadrature_nodes)
        .def_readwrite("problem_file", &ExperimentConfig::problem_file);

    m.def("run_dichotomy", [](const ExperimentConfig& c) { return run_command(cmd_dichotomy, c); },
          "Returns (exit_code, log).");
    m.def("run_verify", [](const ExperimentConfig& c) { return run_command(cmd_verify, c); },
          "Returns (exit_code, log).");
    m.def("run_solve", [](const ExperimentConfig& c) { return run_command(cmd_solve, c); },
          "Returns (exit_code, log).");
}
