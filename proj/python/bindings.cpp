#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "et6/closure.hpp"
#include "et6/eigenstructure.hpp"
#include "et6/oracle.hpp"
#include "et6/presets.hpp"
#include "et6/solver.hpp"

namespace py = pybind11;
using namespace et6;

namespace {

py::dict snapshot_dict(const Snapshot& snap, const GasSpec& spec) {
  std::vector<double> x, rho, vx, T, p, Pi;
  for (int i = 0; i < snap.grid.N; ++i) {
    const State6 s = primitive_from_conserved(snap.grid.cells[i], spec);
    x.push_back(snap.grid.x(i));
    rho.push_back(s.rho);
    vx.push_back(s.v.x());
    T.push_back(s.T);
    p.push_back(pressure(s, spec));
    Pi.push_back(s.Pi);
  }
  py::dict d;
  d["t"] = snap.t;
  d["x"] = x;
  d["rho"] = rho;
  d["vx"] = vx;
  d["T"] = T;
  d["p"] = p;
  d["Pi"] = Pi;
  return d;
}

py::dict series_dict(const TimeSeries& ts) {
  py::list snaps;
  for (const Snapshot& s : ts.snapshots) snaps.append(snapshot_dict(s, ts.gas));
  std::vector<double> t, mass, entropy;
  for (const DiagnosticRow& r : ts.diagnostics) {
    t.push_back(r.t);
    mass.push_back(r.total_F);
    entropy.push_back(r.total_entropy);
  }
  py::dict d;
  d["snapshots"] = snaps;
  d["t"] = t;
  d["total_F"] = mass;
  d["total_entropy"] = entropy;
  d["steps"] = ts.steps;
  d["projections"] = ts.total_projections;
  return d;
}

}  // namespace

PYBIND11_MODULE(_et6, m) {
  m.doc() = "Six-field extended thermodynamics: closure, eigenstructure and 1D solver.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_OverflowError);
  py::register_exception<SolverAbort>(m, "SolverAbort", PyExc_RuntimeError);

  m.attr("MIN_D") = kMinDegreesOfFreedom;

  py::class_<GasSpec>(m, "GasSpec")
      .def(py::init<double, double, double, double>(), py::arg("D") = 5.0, py::arg("m") = 1.0,
           py::arg("kB") = 1.0, py::arg("tau") = 1.0)
      .def_property_readonly("D", &GasSpec::D)
      .def_property_readonly("m", &GasSpec::m)
      .def_property_readonly("kB", &GasSpec::kB)
      .def_property_readonly("tau", &GasSpec::tau)
      .def_property_readonly("R", &GasSpec::R)
      .def("__repr__", [](const GasSpec& g) {
        return "GasSpec(D=" + std::to_string(g.D()) + ", tau=" + std::to_string(g.tau()) + ")";
      });

  py::class_<State6>(m, "State6")
      .def(py::init([](double rho, Vec3 v, double T, double Pi) { return State6{rho, v, T, Pi}; }),
           py::arg("rho") = 1.0, py::arg("v") = Vec3::Zero(), py::arg("T") = 1.0, py::arg("Pi") = 0.0)
      .def_readwrite("rho", &State6::rho)
      .def_readwrite("v", &State6::v)
      .def_readwrite("T", &State6::T)
      .def_readwrite("Pi", &State6::Pi);

  m.def("state_from_ratio", &state_from_ratio, py::arg("rho"), py::arg("v"), py::arg("T"), py::arg("Z"),
        py::arg("gas"));
  m.def("to_conserved", [](const State6& s, const GasSpec& g) { return conserved_from_primitive(s, g).to_vector(); },
        "(F, F_x, F_y, F_z, G_ll, F_ll)");
  m.def("to_primitive", [](const Vec6& u, const GasSpec& g) { return primitive_from_conserved(Conserved6::from_vector(u), g); });
  m.def("pressure", &pressure);
  m.def("upper_ratio_bound", &upper_ratio_bound);

  m.def("multipliers", [](const State6& s, const GasSpec& g) {
    const Multipliers mul = multipliers_from_state(s, g);
    py::dict d;
    d["xi"] = mul.xi;
    d["zeta"] = mul.zeta;
    d["Omega"] = mul.Omega;
    d["log_zeta"] = mul.log_zeta;
    d["log_Omega"] = mul.log_Omega;
    return d;
  });
  m.def("fluxes", [](const State6& s, const GasSpec& g) {
    const FluxSet f = closed_fluxes(s, g);
    py::dict d;
    d["F_ik"] = f.F_ik;
    d["F_llk"] = f.F_llk;
    d["G_llk"] = f.G_llk;
    return d;
  });
  m.def("production", &production_bgk);
  m.def("nonequilibrium_entropy", &nonequilibrium_entropy, py::arg("Z"), py::arg("gas"));
  m.def("entropy", [](const State6& s, const GasSpec& g) {
    const EntropyParts e = entropy_parts(s, g);
    py::dict d;
    d["h"] = e.h;
    d["h_eq"] = e.h_eq;
    d["k"] = e.k;
    d["g_over_T"] = e.g_over_T;
    return d;
  });
  m.def("main_field", [](const State6& s, const GasSpec& g) { return main_field(s, g).to_vector(); },
        "(lambda, lambda_x, lambda_y, lambda_z, mu_ll, lambda_ll)");
  m.def("entropy_gradient_fd", [](const Vec6& u, const GasSpec& g) {
    return entropy_gradient_fd(Conserved6::from_vector(u), g);
  });

  m.def("wave_speeds", [](const State6& s, const GasSpec& g, Vec3 n) {
    const WaveFan fan = wave_fan(conserved_from_primitive(s, g), n.normalized(), g);
    return std::vector<double>(fan.speeds.begin(), fan.speeds.end());
  }, py::arg("state"), py::arg("gas"), py::arg("n") = Vec3::UnitX());
  m.def("k_condition", [](const GasSpec& g) {
    const KConditionReport r = k_condition(conserved_from_primitive(State6{}, g), Vec3::UnitX(), g);
    std::vector<double> dPi;
    for (const KConditionEntry& e : r.entries) dPi.push_back(e.delta_Pi);
    py::dict d;
    d["pass"] = r.overall_pass;
    d["marginal"] = r.any_marginal;
    d["weak_pass"] = r.weak_pass;
    d["delta_Pi"] = dPi;
    return d;
  });
  m.def("oracle_max_error", [](const State6& s, const GasSpec& g) {
    return std::max(oracle_flux_check(s, g).max_rel_err(), oracle_constraint_check(s, g).max_rel_err());
  });

  m.def("run_relaxation", [](double Z0, double tau, double t_end, double D) {
    return series_dict(run_scenario(presets::homogeneous_relaxation(Z0, tau, t_end, D)));
  }, py::arg("Z0"), py::arg("tau"), py::arg("t_end") = 1.0, py::arg("D") = 5.0);
  m.def("run_sod", [](double tau, int N, double D) {
    return series_dict(run_scenario(presets::sod(tau, N, D)));
  }, py::arg("tau"), py::arg("N") = 400, py::arg("D") = 5.0);
  m.def("ns_limit", [](double tau, int N) {
    const Scenario sc = presets::ns_limit(tau, 5.0, N);
    const NsLimitReport r = ns_limit_diagnostic(run_scenario(sc), sc.gas);
    py::dict d;
    d["nu"] = r.nu;
    d["max_deviation"] = r.max_deviation;
    d["l2_deviation"] = r.l2_deviation;
    return d;
  }, py::arg("tau") = 1e-3, py::arg("N") = 400);
}
