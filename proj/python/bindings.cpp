#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hartree/beta.hpp"
#include "hartree/io.hpp"
#include "hartree/scf.hpp"
#include "hartree/verify.hpp"

namespace py = pybind11;
using namespace hartree;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict observables_dict(const Observables& o) {
    py::dict d;
    d["K"] = o.K;
    d["A"] = o.A;
    d["R"] = o.R;
    d["N"] = o.N;
    d["J"] = o.J;
    d["E"] = o.E;
    return d;
}

py::object report_object(const VerificationReport& r) {
    return py::module_::import("json").attr("loads")(io::report_json(r).dump());
}

}  // namespace

PYBIND11_MODULE(_hartree, m) {
    m.doc() = "Radial Hartree atom solver and bound verifier";

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("n_points", &SolverConfig::n_points)
        .def_readwrite("r_min", &SolverConfig::r_min)
        .def_readwrite("r_max", &SolverConfig::r_max)
        .def_readwrite("mixing", &SolverConfig::mixing)
        .def_readwrite("tol_density", &SolverConfig::tol_density)
        .def_readwrite("tol_eigen", &SolverConfig::tol_eigen)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations);

    py::class_<HartreeState>(m, "HartreeState")
        .def_readonly("Z", &HartreeState::Z)
        .def_readonly("N", &HartreeState::N)
        .def_readonly("mu", &HartreeState::mu)
        .def_readonly("converged", &HartreeState::converged)
        .def_readonly("iterations", &HartreeState::iterations)
        .def_property_readonly("status", [](const HartreeState& s) { return to_string(s.status); })
        .def_property_readonly("r", [](const HartreeState& s) { return to_array(s.grid()->nodes()); })
        .def_property_readonly("psi", [](const HartreeState& s) { return to_array(s.psi.values()); })
        .def_property_readonly("rho", [](const HartreeState& s) { return to_array(s.rho.values()); })
        .def_property_readonly("phi", [](const HartreeState& s) { return to_array(s.phi.values()); })
        .def_property_readonly("warnings", [](const HartreeState& s) { return s.diagnostics.warnings; })
        .def("observables", [](const HartreeState& s) { return observables_dict(observables(s)); })
        .def("save", [](const HartreeState& s, const std::string& path) { io::write_state(s, path); },
             py::arg("path"));

    m.def("load_state", [](const std::string& path) { return io::read_state(path); }, py::arg("path"));

    m.def("solve",
          [](double Z, double N, const SolverConfig& config) {
              py::gil_scoped_release release;
              return scf_solve(Z, N, config);
          },
          py::arg("Z"), py::arg("N"), py::arg("config") = SolverConfig{},
          "Hartree ground state at fixed mass N.");

    m.def("critical_charge",
          [](double Z, const SolverConfig& config) {
              CriticalChargeResult res = [&] {
                  py::gil_scoped_release release;
                  return critical_charge(Z, config);
              }();
              return py::make_tuple(res.N_c, std::move(res.state));
          },
          py::arg("Z"), py::arg("config") = SolverConfig{},
          "Critical mass N_c(Z) and the state found there.");

    m.def("verify", [](const HartreeState& s) { return report_object(verify_state(s)); }, py::arg("state"),
          "Verification report as a dict.");

    m.def("family_ids", &family_ids);

    m.def("minimize_beta",
          [](const std::string& family, int restarts, std::uint64_t seed, int n_points) {
              BetaOptions opt;
              opt.restarts = restarts;
              opt.seed = seed;
              opt.n_points = n_points;
              const auto fam = make_family(family);
              BetaEstimate est = [&] {
                  py::gil_scoped_release release;
                  return minimize_beta(fam, opt);
              }();
              return py::module_::import("json").attr("loads")(io::beta_json(est).dump());
          },
          py::arg("family") = "exppoly", py::arg("restarts") = 20, py::arg("seed") = 42,
          py::arg("n_points") = 4000);

    m.def("beta_ratio",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> rho, double r_min, double r_max) {
              auto grid = build_grid(static_cast<int>(rho.size()), r_min, r_max);
              return beta_ratio(RadialFunction(grid, std::vector<double>(rho.data(), rho.data() + rho.size())));
          },
          py::arg("rho"), py::arg("r_min"), py::arg("r_max"),
          "Beta ratio of a density sampled on the log grid with the given end points.");

    m.def("grid_nodes",
          [](int n_points, double r_min, double r_max) { return to_array(build_grid(n_points, r_min, r_max)->nodes()); },
          py::arg("n_points"), py::arg("r_min"), py::arg("r_max"));
}
