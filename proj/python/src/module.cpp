// Thin bindings over the C++ core; everything heavy stays in C++.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pressure_lab/domination.hpp"
#include "pressure_lab/errors.hpp"
#include "pressure_lab/pressure.hpp"
#include "pressure_lab/run.hpp"
#include "pressure_lab/transition.hpp"

#include <sstream>

namespace py = pybind11;
using namespace pressure_lab;

namespace {

py::dict estimate_dict(const PressureEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["method"] = to_string(e.method);
  d["bound_kind"] = to_string(e.bound_kind);
  d["parameters"] = e.parameters;
  py::list series;
  for (const auto& p : e.series) series.append(py::make_tuple(p.x, p.value));
  d["series"] = series;
  d["flags"] = e.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Topological pressure estimators for surface diffeomorphisms";
  m.attr("__version__") = PRESSURE_LAB_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<EmptyCatalog>(m, "EmptyCatalog", base.ptr());
  py::register_exception<NoSaddle>(m, "NoSaddle", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<SystemDef>(m, "System")
      .def_static("cat_map", &SystemDef::cat_map)
      .def_static("standard_map", &SystemDef::standard_map, py::arg("k"))
      .def_static("identity", &SystemDef::identity, py::arg("period") = 1.0)
      .def_static("linear_torus", &SystemDef::linear_torus, py::arg("matrix"))
      .def_static("shear", &SystemDef::shear, py::arg("amplitude"), py::arg("axis"), py::arg("period"))
      .def("then", &SystemDef::then)
      .def("inverse", &SystemDef::inverse)
      .def("eval", &SystemDef::eval)
      .def("jacobian", &SystemDef::jacobian)
      .def_property_readonly("period", &SystemDef::period)
      .def_property_readonly("name", &SystemDef::name)
      .def("__repr__", [](const SystemDef& s) { return "<System " + s.name() + ">"; });

  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero)
      .def_static("constant", &Potential::constant, py::arg("c"))
      .def_static("expression", [](const std::string& s) { return Potential::expression(s); })
      .def_static("geometric", &Potential::geometric, py::arg("m"))
      .def("scaled", &Potential::scaled)
      .def("shifted", &Potential::shifted)
      .def("__call__", &Potential::operator())
      .def("__repr__", [](const Potential& p) { return "<Potential " + p.describe() + ">"; });

  py::class_<PeriodicOrbit>(m, "PeriodicOrbit")
      .def_readonly("point", &PeriodicOrbit::point)
      .def_readonly("period", &PeriodicOrbit::period)
      .def_readonly("multiplier", &PeriodicOrbit::multiplier)
      .def_readonly("exponents", &PeriodicOrbit::exponents)
      .def_property_readonly("classification",
                             [](const PeriodicOrbit& o) { return to_string(o.classification); })
      .def_property_readonly("lambda_plus", &PeriodicOrbit::lambda_plus)
      .def_property_readonly("delta", [](const PeriodicOrbit& o) { return delta(o); });

  py::class_<OrbitCatalog>(m, "OrbitCatalog")
      .def_readonly("orbits", &OrbitCatalog::orbits)
      .def_readonly("max_period", &OrbitCatalog::max_period)
      .def_property_readonly("exhaustiveness", [](const OrbitCatalog& c) { return to_string(c.exhaustiveness); })
      .def("fixed_point_count", &OrbitCatalog::fixed_point_count)
      .def("__len__", &OrbitCatalog::size);

  m.def(
      "find_periodic_orbits",
      [](const SystemDef& sys, int max_period, int grid_density, std::uint64_t seed, int threads) {
        OrbitSearchOptions o;
        o.max_period = max_period;
        o.grid_density = grid_density;
        o.seed = seed;
        o.threads = threads;
        py::gil_scoped_release release;
        return find_periodic_orbits(sys, o);
      },
      py::arg("system"), py::arg("max_period"), py::arg("grid_density") = 16, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "periodic_pressure",
      [](const OrbitCatalog& c, const SystemDef& sys, const Potential& phi) {
        const auto p = periodic_pressure(c, sys, phi);
        auto d = estimate_dict(p.estimate);
        d["argmax"] = p.argmax;
        return d;
      },
      py::arg("catalog"), py::arg("system"), py::arg("potential"));

  m.def(
      "bowen_pressure",
      [](const SystemDef& sys, const Potential& phi, int n_min, int n_max, double epsilon,
         int grid_density, std::uint64_t seed) {
        BowenOptions b;
        b.n_min = n_min;
        b.n_max = n_max;
        b.epsilon = epsilon;
        b.grid_density = grid_density;
        b.seed = seed;
        BowenPressure r;
        {
          py::gil_scoped_release release;
          r = bowen_pressure(sys, phi, b);
        }
        auto d = estimate_dict(r.estimate);
        d["differences"] = r.differences;
        d["budget_exceeded"] = r.budget_exceeded;
        return d;
      },
      py::arg("system"), py::arg("potential"), py::arg("n_min") = 6, py::arg("n_max") = 10,
      py::arg("epsilon") = 0.05, py::arg("grid_density") = 48, py::arg("seed") = 0);

  m.def(
      "sigma_k",
      [](const SystemDef& sys, const Potential& phi, int k, std::vector<int> n_list, int basepoint_grid,
         int angle_grid, std::uint64_t seed) {
        GrassmannOptions g;
        g.n_list = std::move(n_list);
        g.basepoint_grid = basepoint_grid;
        g.angle_grid = angle_grid;
        g.seed = seed;
        SigmaK s;
        {
          py::gil_scoped_release release;
          s = sigma_k(sys, phi, k, g);
        }
        auto d = estimate_dict(s.estimate);
        d["n_list"] = s.n_list;
        d["per_n_sup"] = s.per_n_sup;
        return d;
      },
      py::arg("system"), py::arg("potential"), py::arg("k"), py::arg("n_list") = std::vector<int>{1, 2, 4, 8, 16},
      py::arg("basepoint_grid") = 64, py::arg("angle_grid") = 256, py::arg("seed") = 0);

  m.def(
      "sft_pressure",
      [](const Eigen::MatrixXi& transitions, std::optional<Eigen::VectorXd> symbol_potential) {
        const auto n = transitions.rows();
        const auto model = SftModel::with_symbol_potential(
            transitions, symbol_potential.value_or(Eigen::VectorXd::Zero(n)));
        return estimate_dict(sft_pressure(model));
      },
      py::arg("transitions"), py::arg("symbol_potential") = py::none());

  m.def(
      "domination_verdict",
      [](const SystemDef& sys, const PeriodicOrbit& o, int n) {
        switch (n_domination_verdict(sys, o, n)) {
          case Verdict::dominated: return "dominated";
          case Verdict::not_dominated: return "not-dominated";
          default: return "indeterminate";
        }
      },
      py::arg("system"), py::arg("orbit"), py::arg("n"));

  m.def(
      "pressure_curve",
      [](const OrbitCatalog& c, const SystemDef& sys, int m_, std::vector<double> ts) {
        const auto rep = pressure_curve(c, sys, m_, ts);
        py::dict d;
        std::vector<double> values;
        for (const auto& p : rep.curve) values.push_back(p.value);
        d["t"] = ts;
        d["value"] = values;
        d["kinks"] = rep.kinks;
        d["t0"] = rep.t0 ? py::cast(*rep.t0) : py::none();
        return d;
      },
      py::arg("catalog"), py::arg("system"), py::arg("m"), py::arg("t"));

  m.def(
      "transition_point",
      [](const OrbitCatalog& c, const SystemDef& sys, int m_) {
        const auto tp = transition_point(c, sys, m_);
        return py::make_tuple(tp.t0, tp.orbit);
      },
      py::arg("catalog"), py::arg("system"), py::arg("m"));

  m.def(
      "run",
      [](const std::string& command, const std::string& config, std::optional<std::string> out,
         std::optional<std::uint64_t> seed, std::optional<int> threads) {
        RunRequest r;
        r.command = parse_command(command);
        r.config_path = config;
        r.out_dir = std::move(out);
        r.seed = seed;
        r.threads = threads;
        r.quiet = true;
        std::ostringstream log;
        RunResult res;
        {
          py::gil_scoped_release release;
          res = run(r, log);
        }
        py::dict d;
        d["exit_code"] = res.exit_code;
        d["message"] = res.message;
        d["out_dir"] = res.out_dir;
        py::dict files;
        for (const auto& [k, v] : res.files) files[py::str(k)] = py::bytes(v);
        d["files"] = files;
        return d;
      },
      py::arg("command"), py::arg("config"), py::arg("out") = py::none(), py::arg("seed") = py::none(),
      py::arg("threads") = py::none());
}
