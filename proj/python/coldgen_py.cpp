#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coldgen/coldgen.hpp"

namespace py = pybind11;
using namespace coldgen;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

ScalarField to_field(const Array& a, double dx, double dy) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array shaped (ny, nx)");
  const Grid g{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), dx, dy};
  g.validate();
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ScalarField& f) {
  Array out({f.grid().ny, f.grid().nx});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

MaskArray to_array(const ChannelMask& m) {
  MaskArray out({m.grid().ny, m.grid().nx});
  for (std::size_t c = 0; c < m.size(); ++c) out.mutable_data()[c] = m[c] ? 1 : 0;
  return out;
}

ChannelMask to_mask(const MaskArray& a, const Grid& grid) {
  if (a.ndim() != 2 || a.shape(0) != grid.ny || a.shape(1) != grid.nx)
    throw py::value_error("mask shape does not match the configured grid (ny, nx)");
  ChannelMask m(grid);
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (a.data()[c] > 1) throw py::value_error("mask values must be 0 or 1");
    m.set_index(c, a.data()[c] == 1);
  }
  return m;
}

RunConfig checked(const std::string& text) {
  auto cfg = parse_config(text);
  cfg.validate();
  return cfg;
}

py::dict design_dict(const DesignReport& r) {
  py::dict d;
  d["report"] = report_to_json(r).dump();
  d["mask"] = to_array(r.mask);
  d["temperature"] = to_array(r.temperature);
  if (r.v) d["v"] = to_array(*r.v);
  return d;
}

}  // namespace

PYBIND11_MODULE(_coldgen, m) {
  m.doc() = "Native core of the coldgen cold-plate design tool";
  m.attr("__version__") = std::string(tool_version);

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NoSinkError>(m, "NoSinkError", base.ptr());
  py::register_exception<InstabilityError>(m, "InstabilityError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("default_config", [] { return config_to_json(RunConfig{}).dump(); });
  m.def("normalize_config", [](const std::string& text) { return config_to_json(checked(text)).dump(); },
        py::arg("config"));

  m.def(
      "baseline",
      [](const std::string& text) {
        const auto cfg = checked(text);
        py::gil_scoped_release nogil;
        const auto layout = cfg.layout();
        auto mask = generate_baseline_parallel(cfg.grid, layout, cfg.baseline.channel_width, cfg.baseline.pitch);
        auto report = evaluate_mask("baseline", mask, layout, cfg.material, cfg.loop.solver);
        report.baseline = cfg.baseline;
        py::gil_scoped_acquire gil;
        return design_dict(report);
      },
      py::arg("config"));

  m.def(
      "generate",
      [](const std::string& text) {
        const auto cfg = checked(text);
        DesignReport report;
        {
          py::gil_scoped_release nogil;
          report = run_generative_design(cfg.grid, cfg.layout(), cfg.material, cfg.rd, cfg.loop);
        }
        return design_dict(report);
      },
      py::arg("config"));

  m.def(
      "evaluate",
      [](const std::string& text, const MaskArray& mask, const std::string& name) {
        const auto cfg = checked(text);
        return design_dict(evaluate_mask(name, to_mask(mask, cfg.grid), cfg.layout(), cfg.material, cfg.loop.solver));
      },
      py::arg("config"), py::arg("mask"), py::arg("name") = "solve");

  m.def(
      "solve_steady",
      [](const Array& q, const Array& h, double dx, double dy, double k, double thickness, double t_coolant,
         double tol, long max_iter) {
        const auto qf = to_field(q, dx, dy);
        const auto hf = to_field(h, dx, dy);
        MaterialParams mat;
        mat.k = k;
        mat.thickness = thickness;
        mat.t_coolant = t_coolant;
        const auto r = solve_steady(qf, hf, mat, SolverOptions{tol, max_iter});
        return py::make_tuple(to_array(r.temperature), r.iterations, r.final_residual, r.converged);
      },
      py::arg("q"), py::arg("h"), py::arg("dx") = 0.001, py::arg("dy") = 0.001, py::arg("k") = 148.0,
      py::arg("thickness") = 0.001, py::arg("t_coolant") = 25.0, py::arg("tol") = 1e-4,
      py::arg("max_iter") = 200000);

  m.def(
      "gray_scott_step",
      [](const Array& u, const Array& v, double dx, double dy, double d_u, double d_v, double f, double kappa,
         double dt, double length_unit) {
        RDParams p{d_u, d_v, f, kappa, dt, length_unit};
        auto s = gray_scott_step(RDState{to_field(u, dx, dy), to_field(v, dx, dy), 0}, p);
        return py::make_tuple(to_array(s.u), to_array(s.v));
      },
      py::arg("u"), py::arg("v"), py::arg("dx") = 0.001, py::arg("dy") = 0.001, py::arg("d_u") = 0.16,
      py::arg("d_v") = 0.08, py::arg("f") = 0.055, py::arg("kappa") = 0.062, py::arg("dt") = 0.5,
      py::arg("length_unit") = 0.001);

  m.def(
      "threshold_mask",
      [](const Array& v, double tau) { return to_array(threshold_mask(to_field(v, 1.0, 1.0), tau)); },
      py::arg("v"), py::arg("tau") = 0.3);
}
