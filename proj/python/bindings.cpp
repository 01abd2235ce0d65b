#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tfapprox/convolution.hpp"
#include "tfapprox/experiments.hpp"
#include "tfapprox/io.hpp"
#include "tfapprox/pipeline.hpp"

namespace py = pybind11;
using namespace tfapprox;

namespace {

py::array_t<cplx> values(const GridFunction& f) {
  const auto& g = f.grid();
  std::vector<py::ssize_t> shape(g.dim(), g.points_per_axis());
  py::array_t<cplx> out(shape);
  std::copy(f.samples().begin(), f.samples().end(), out.mutable_data());
  return out;
}

py::array_t<double> grid_axis(const Grid& g) {
  py::array_t<double> out(std::vector<py::ssize_t>{g.points_per_axis()});
  double* p = out.mutable_data();
  for (int k = 0; k < g.points_per_axis(); ++k) p[k] = g.coord(k);
  return out;
}

py::dict report_dict(const ApproximationReport& r) {
  py::dict d;
  d["target"] = r.target;
  d["window"] = r.window;
  d["norm"] = r.norm_id;
  d["eps"] = r.eps;
  d["e_truncate"] = r.e_truncate;
  d["e_mollify"] = r.e_mollify;
  d["e_discretize"] = r.e_discretize;
  d["e_total"] = r.e_total;
  d["rho"] = r.rho;
  d["delta"] = r.delta;
  d["node_count"] = r.node_count;
  d["wall_ms"] = r.wall_ms;
  d["success"] = r.success;
  d["failed_stage"] = r.failed_stage;
  return d;
}

GridFunction from_array(const Grid& grid, py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
  if (static_cast<std::size_t>(a.size()) != grid.size()) {
    throw InvalidArgument("array size does not match the grid");
  }
  return GridFunction(grid, std::vector<cplx>(a.data(), a.data() + a.size()));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Approximation by finite combinations of shifted dilates of one window";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<WindowZeroMean>(m, "WindowZeroMean", base.ptr());
  static PyObject* budget_type = py::exception<BudgetInfeasible>(m, "BudgetInfeasible", base.ptr()).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetInfeasible& e) {
      py::object exc = py::reinterpret_borrow<py::object>(budget_type)(e.what());
      exc.attr("report") = report_dict(e.report());
      PyErr_SetObject(budget_type, exc.ptr());
    }
  });

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, double, double>(), py::arg("dim"), py::arg("extent"), py::arg("spacing"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("extent", &Grid::half_extent)
      .def_property_readonly("spacing", &Grid::spacing)
      .def_property_readonly("points_per_axis", &Grid::points_per_axis)
      .def_property_readonly("axis", &grid_axis)
      .def("dual", &Grid::dual)
      .def("refined", &Grid::refined)
      .def("__repr__", [](const Grid& g) {
        return "Grid(dim=" + std::to_string(g.dim()) + ", extent=" + format_number(g.half_extent()) +
               ", spacing=" + format_number(g.spacing()) + ")";
      });

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init(&from_array), py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", &GridFunction::grid)
      .def_property_readonly("values", &values)
      .def_property_readonly("source",
                             [](const GridFunction& f) -> py::object {
                               if (!f.source()) return py::none();
                               return py::str(f.source()->to_string());
                             })
      .def("__add__", &GridFunction::operator+)
      .def("__sub__", &GridFunction::operator-)
      .def("__mul__", [](const GridFunction& f, cplx c) { return f * c; })
      .def("__rmul__", [](const GridFunction& f, cplx c) { return f * c; })
      .def("__len__", &GridFunction::size);

  m.def("sample", [](const std::string& spec, const Grid& g) { return sample(FunctionSpec::parse(spec), g); },
        py::arg("spec"), py::arg("grid"), "Samples a function spec such as 'hat(2)|shift(1)' on the grid.");
  m.def("canonical_spec", [](const std::string& spec) { return FunctionSpec::parse(spec).to_string(); });
  m.def("weighted_lp_norm",
        [](const GridFunction& f, double p, double s) { return weighted_lp_norm(f, p, Weight(s, f.grid().dim())); },
        py::arg("f"), py::arg("p"), py::arg("s") = 0.0);
  m.def("norm", [](const GridFunction& f, const std::string& spec) { return norm(f, NormSpec::parse(spec, f.grid().dim())); },
        py::arg("f"), py::arg("norm"), "Norm given by text such as 'lp(1,1)', 'shubin(1)' or 'lp(2,0)+katsnelson(1,1)'.");
  m.def("fourier", &fourier);
  m.def("convolve", [](const GridFunction& f, const GridFunction& g) { return convolve(f, g); });
  m.def("translate", [](const GridFunction& f, std::vector<double> a, bool interp) { return translate(f, a, interp); },
        py::arg("f"), py::arg("shift"), py::arg("interpolate") = false);
  m.def("modulate", [](const GridFunction& f, std::vector<double> y) { return modulate(f, y); });
  m.def("dilate_compress", &dilate_compress);
  m.def("mollify_error",
        [](const GridFunction& f, const std::string& window, double rho, const std::string& n) {
          return mollify_error(f, sample(FunctionSpec::parse(window), f.grid()), rho, NormSpec::parse(n, f.grid().dim()));
        },
        py::arg("f"), py::arg("window"), py::arg("rho"), py::arg("norm"));
  m.def("discretized_conv_error",
        [](const GridFunction& g, const GridFunction& f, double delta, const std::string& n) {
          return discretized_conv_error(g, f, build_regular_bupu(f.grid(), delta), NormSpec::parse(n, f.grid().dim()));
        },
        py::arg("g"), py::arg("f"), py::arg("delta"), py::arg("norm"));
  m.def("discretize",
        [](const GridFunction& k, double delta) {
          std::vector<std::pair<std::vector<double>, cplx>> out;
          for (const auto& a : discretize(k, build_regular_bupu(k.grid(), delta)).atoms()) out.emplace_back(a.node, a.coef);
          return out;
        },
        py::arg("k"), py::arg("delta"));

  m.def("c1_constant", [](double s, int dim, double radius) { return c1_constant(Weight(s, dim), radius); },
        py::arg("s"), py::arg("dim") = 1, py::arg("radius") = 1.0);
  m.def("check_submultiplicative",
        [](double s, int dim, std::int64_t pairs, double radius, std::uint64_t seed, double constant) {
          const auto r = check_submultiplicative(Weight(s, dim), pairs, radius, seed, constant);
          return py::make_tuple(r.violations, r.worst_ratio);
        },
        py::arg("s"), py::arg("dim") = 1, py::arg("pairs") = 10000, py::arg("radius") = 50.0, py::arg("seed") = 1,
        py::arg("constant") = 1.0);

  py::class_<Approximant>(m, "Approximant")
      .def_readonly("rho", &Approximant::rho)
      .def_property_readonly("window", [](const Approximant& a) { return a.window.to_string(); })
      .def_property_readonly("atoms",
                             [](const Approximant& a) {
                               std::vector<std::pair<std::vector<double>, cplx>> out;
                               for (const auto& at : a.atoms.atoms()) out.emplace_back(at.node, at.coef);
                               return out;
                             })
      .def("evaluate", &Approximant::evaluate);

  m.def("approximate",
        [](const GridFunction& f, const std::string& window, double eps, const std::string& n) {
          auto r = approximate(f, FunctionSpec::parse(window), eps, NormSpec::parse(n, f.grid().dim()));
          return py::make_tuple(std::move(r.approximant), report_dict(r.report));
        },
        py::arg("f"), py::arg("window"), py::arg("eps"), py::arg("norm"));

  m.def("selftest",
        [](std::uint64_t seed) {
          std::vector<std::tuple<std::string, bool, std::string>> out;
          for (auto& r : run_selftest({seed, std::nullopt})) out.emplace_back(r.name, r.passed, r.detail);
          return out;
        },
        py::arg("seed") = 1);
}
