/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The sonotherm Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sonotherm/analysis.hpp"
#include "sonotherm/cli.hpp"
#include "sonotherm/config.hpp"
#include "sonotherm/error.hpp"

namespace py = pybind11;
using namespace sonotherm;
using nlohmann::json;

namespace {

py::array_t<double> to_array(const std::vector<double>& v, int ny, int nx) {
  return py::array_t<double>({ny, nx}, v.data());
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

Config config_from_text(const std::string& text, const std::vector<std::string>& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what(), "");
  }
  for (const std::string& s : overrides) apply_override(doc, s);
  return parse_config(doc);
}

Envelope envelope_by_name(const Config& c, const std::string& name) {
  if (name.empty()) return c.envelope;
  if (name == "static") return Envelope::static_drive();
  if (name == "square") return c.envelope.kind == Envelope::Kind::kSquare ? c.envelope : Envelope::square(50.0, 0.9);
  throw ValidationError("expected static or square", "envelope");
}

py::dict intensity_field(const Config& c, double plane_z, double extent, double res) {
  if (!(res > 0.0)) throw ValidationError("must be > 0", "res");
  if (!(extent > 0.0)) throw ValidationError("must be > 0", "extent");
  const int n = static_cast<int>(std::lround(extent / res)) + 1;
  const double z = std::isnan(plane_z) ? c.drive.focus.z : plane_z;
  const PlaneGridSpec spec = PlaneGridSpec::centered({c.drive.focus.x, c.drive.focus.y, z}, n, n, res, res);
  const StimulusSetup setup = c.stimulus_setup();
  IntensityGrid g;
  {
    py::gil_scoped_release release;
    g = intensity_grid(setup.assembly, setup.medium, setup.drive, spec);
  }
  py::dict out;
  out["intensity"] = to_array(g.values, n, n);
  out["origin"] = std::vector<double>{spec.origin.x, spec.origin.y, spec.origin.z};
  out["res"] = res;
  try {
    const FocalMetrics m = focal_metrics(g, {c.drive.focus.x, c.drive.focus.y, z});
    out["peak"] = m.peak;
    out["peak_location"] = std::vector<double>{m.peak_location.x, m.peak_location.y, m.peak_location.z};
    out["width_6db"] = m.width_6db;
  } catch (const ValidationError&) {
    out["peak"] = find_peak(spec, g.values).value;
  }
  return out;
}

py::dict run_simulation(const Config& c, const std::string& envelope, double duration, const std::string& mode,
                        const std::vector<double>& snapshots, const std::string& out_dir) {
  if (!(duration > 0.0)) throw ValidationError("must be > 0", "duration");
  StimulusSetup setup = c.stimulus_setup();
  if (mode == "resolved") {
    setup.solver.envelope_mode = EnvelopeMode::kResolved;
  } else if (mode == "mean") {
    setup.solver.envelope_mode = EnvelopeMode::kMeanFactor;
  } else if (!mode.empty()) {
    throw ValidationError("expected mean or resolved", "mode");
  }
  const Envelope env = envelope_by_name(c, envelope);
  SimulationRun run;
  {
    py::gil_scoped_release release;
    run = simulate(setup, env, duration, snapshots);
    if (!out_dir.empty()) export_run(run, out_dir);
  }
  py::dict out;
  out["times"] = to_array(run.times);
  out["delta_t"] = to_array(run.probe_delta_t);
  py::dict maps;
  for (const SurfaceSnapshot& s : run.snapshots) maps[py::float_(s.time)] = to_array(s.delta_t, run.surface.ny, run.surface.nx);
  out["snapshots"] = maps;
  out["dt"] = run.meta.dt;
  out["envelope"] = env.name();
  const auto t_star = time_to_threshold(run, c.perception);
  out["time_to_threshold"] = t_star ? py::cast(*t_star) : py::none();
  return out;
}

py::dict calibrate(const Config& c, double target_dt, double target_t) {
  CalibrationResult r;
  {
    py::gil_scoped_release release;
    r = calibrate_eta(c.stimulus_setup(), target_dt, target_t);
  }
  py::dict out;
  out["eta"] = r.eta;
  out["unit_delta_t"] = r.unit_delta_t;
  out["baseline_delta_t"] = r.baseline_delta_t;
  out["confirmed_delta_t"] = r.confirmed_delta_t;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Airborne-ultrasound skin heating simulator";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<Config>(m, "Config")
      .def(py::init([](const std::string& text, const std::vector<std::string>& overrides) {
             return config_from_text(text, overrides);
           }),
           py::arg("json_text") = "{}", py::arg("overrides") = std::vector<std::string>{})
      .def_static("load", [](const std::string& path) { return load_config(path); })
      .def("to_json", [](const Config& c) { return to_json(c).dump(); })
      .def_property_readonly("element_count", [](const Config& c) { return c.assembly().all_transducers().size(); })
      .def_property_readonly("enabled_element_count", [](const Config& c) { return c.assembly().enabled_count(); })
      .def_property_readonly("focus", [](const Config& c) {
        return std::vector<double>{c.drive.focus.x, c.drive.focus.y, c.drive.focus.z};
      })
      .def_property("absorbed_fraction", [](const Config& c) { return c.skin.absorbed_fraction; },
                    [](Config& c, double eta) {
                      c.skin.absorbed_fraction = eta;
                      c.skin.validate();
                    });

  m.def("focus_pressure", [](const Config& c) {
    const StimulusSetup s = c.stimulus_setup();
    const std::complex<double> p = pressure_at(s.assembly, s.medium, s.drive, c.drive.focus);
    return p;
  }, "Complex pressure at the configured focus, Pa");
  m.def("intensity_field", &intensity_field, py::arg("config"), py::arg("plane_z") = std::nan(""),
        py::arg("extent") = 0.08, py::arg("res") = 1e-3,
        "Intensity on a square grid in the plane z = plane_z (default: focus depth), centered on the focus");
  m.def("simulate", &run_simulation, py::arg("config"), py::arg("envelope") = "", py::arg("duration") = 5.0,
        py::arg("mode") = "", py::arg("snapshots") = std::vector<double>{}, py::arg("out_dir") = "",
        "Thermal simulation; returns times, probe delta_t and surface snapshots");
  m.def("calibrate", &calibrate, py::arg("config"), py::arg("target_dt") = 5.4, py::arg("target_t") = 5.0,
        "Absorbed fraction reproducing the target static rise");
  m.def("time_to_threshold",
        [](const std::vector<double>& t, const std::vector<double>& dt, double threshold) -> std::optional<double> {
          return time_to_threshold(t, dt, threshold);
        },
        py::arg("times"), py::arg("delta_t"), py::arg("threshold") = 0.2);
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr)");
}
