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

#include "sonotherm/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sonotherm/analysis.hpp"
#include "sonotherm/config.hpp"
#include "sonotherm/error.hpp"
#include "sonotherm/grid_io.hpp"

namespace sonotherm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  // field
  std::string plane;
  double extent = 0.08;
  double res = 1e-3;
  // simulate
  std::string envelope;
  std::string mode;
  double duration = 5.0;
  std::vector<double> snapshots;
  // calibrate
  double target_dt = 5.4;
  double target_t = 5.0;
  bool write = false;
  // reproduce
  std::string figure;
};

Config load_with_overrides(const Options& o) {
  json doc = read_json_file(o.config_path);
  for (const std::string& s : o.overrides) apply_override(doc, s);
  return parse_config(doc);
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_manifest(const fs::path& out, const std::string& command, const Options& o, const Config& config,
                    const json& extra = json::object()) {
  json manifest{{"command", command},
                {"config", o.config_path},
                {"overrides", o.overrides},
                {"resolved_config", to_json(config)},
                {"tool_version", "0.1.0"}};
  manifest.update(extra);
  write_text_file(out / "manifest.json", manifest.dump(2) + "\n");
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// Stability limit as the uniform-grid formula with the surface spacing, next to the exact bound.
json stability_json(const Config& c) {
  const ThermalGrid g = initial_grid(c.thermal_grid, c.skin, InitialState::kUniform, c.solver.bottom);
  const HeatSolver solver(g, c.skin, c.solver.bottom);
  const auto& z = g.depths();
  return {{"uniform_formula_dt_s", uniform_stability_limit(c.skin.diffusivity(), g.dx(), g.dy(), z[1] - z[0])},
          {"exact_dt_s", solver.max_stable_dt()},
          {"depth_nodes", z.size()}};
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Config c = load_with_overrides(o);
  const ArrayAssembly a = c.assembly();
  json report{{"valid", true},
              {"config", o.config_path},
              {"units", a.units().size()},
              {"elements", a.all_transducers().size()},
              {"enabled_units", a.enabled_unit_indices()},
              {"enabled_elements", a.enabled_count()},
              {"wavenumber_rad_per_m", c.medium.wavenumber()},
              {"wavelength_m", c.medium.wavelength()},
              {"focus", vec_json(c.drive.focus)},
              {"envelope", c.envelope.name()},
              {"mean_intensity_factor", mean_intensity_factor(c.envelope)},
              {"thermal_diffusivity_m2_s", c.skin.diffusivity()},
              {"stability", stability_json(c)},
              {"assembly_hash", hex64(a.hash())}};
  // Surfaces a focus that sits inside an element as a config error.
  (void)focus_phases(a, c.medium, c.drive.focus);
  out << report.dump(2) << "\n";
  return kExitOk;
}

double parse_plane(const std::string& text, double fallback) {
  if (text.empty()) return fallback;
  if (text.rfind("z=", 0) != 0) throw ValidationError("expected z=<meters>", "--plane");
  try {
    std::size_t used = 0;
    const double z = std::stod(text.substr(2), &used);
    if (used != text.size() - 2) throw std::invalid_argument(text);
    return z;
  } catch (const std::exception&) {
    throw ValidationError("expected z=<meters>", "--plane");
  }
}

int cmd_field(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.res > 0.0)) throw ValidationError("must be > 0", "--res");
  if (!(o.extent > 0.0)) throw ValidationError("must be > 0", "--extent");
  const Config c = load_with_overrides(o);
  const double z = parse_plane(o.plane, c.drive.focus.z);
  const int n = static_cast<int>(std::lround(o.extent / o.res)) + 1;
  const PlaneGridSpec spec = PlaneGridSpec::centered({c.drive.focus.x, c.drive.focus.y, z}, n, n, o.res, o.res);
  const StimulusSetup setup = c.stimulus_setup();
  const PressureGrid pressure = pressure_grid(setup.assembly, setup.medium, setup.drive, spec);
  const IntensityGrid intensity = to_intensity(pressure, setup.medium);

  const fs::path dir = prepare_out(o.out_dir);
  write_grid_csv(dir / "intensity.csv", spec, intensity.values, "intensity_W_m2");
  write_pgm(dir / "intensity.pgm", spec, intensity.values, "intensity_W_m2");
  write_pressure_csv(dir / "pressure.csv", spec, pressure.values);

  json summary{{"grid", {{"nx", n}, {"ny", n}, {"res_m", o.res}, {"plane_z_m", z}}},
               {"max_intensity_W_m2", find_peak(spec, intensity.values).value}};
  try {
    const FocalMetrics m = focal_metrics(intensity, {c.drive.focus.x, c.drive.focus.y, z});
    const json metrics{{"peak_W_m2", m.peak},
                       {"peak_location_m", vec_json(m.peak_location)},
                       {"focus_m", vec_json(c.drive.focus)},
                       {"peak_offset_m", distance(m.peak_location, c.drive.focus)},
                       {"half_wavelength_m", 0.5 * c.medium.wavelength()},
                       {"width_6dB_m", m.width_6db},
                       {"width_6dB_x_m", m.width_u},
                       {"width_6dB_y_m", m.width_v}};
    write_text_file(dir / "focal_metrics.json", metrics.dump(2) + "\n");
    summary["focal_metrics"] = metrics;
  } catch (const ValidationError& e) {
    err << json{{"warning", "focal metrics omitted: " + e.message()}, {"path", e.path()}}.dump() << "\n";
  }
  write_manifest(dir, "field", o, c, {{"field", {{"plane", o.plane}, {"extent", o.extent}, {"res", o.res}}}});
  out << summary.dump(2) << "\n";
  return kExitOk;
}

Envelope choose_envelope(const std::string& name, const Envelope& configured) {
  if (name.empty()) return configured;
  if (name == "static") return Envelope::static_drive();
  if (name == "square") {
    return configured.kind == Envelope::Kind::kSquare ? configured : Envelope::square(50.0, 0.9);
  }
  throw ValidationError("expected static or square", "--envelope");
}

void apply_mode(const std::string& mode, SolverSettings& solver) {
  if (mode.empty()) return;
  if (mode == "mean") {
    solver.envelope_mode = EnvelopeMode::kMeanFactor;
  } else if (mode == "resolved") {
    solver.envelope_mode = EnvelopeMode::kResolved;
  } else {
    throw ValidationError("expected mean or resolved", "--mode");
  }
}

json run_summary(const SimulationRun& run, const PerceptionModel& perception) {
  const auto t_star = time_to_threshold(run, perception);
  return {{"envelope", run.meta.envelope.name()},
          {"duration_s", run.times.back()},
          {"final_delta_T_C", run.probe_delta_t.back()},
          {"time_to_threshold_s", t_star ? json(*t_star) : json("not reached")},
          {"absorbed_fraction", run.meta.skin.absorbed_fraction}};
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (!(o.duration > 0.0)) throw ValidationError("must be > 0", "--duration");
  Config c = load_with_overrides(o);
  c.envelope = choose_envelope(o.envelope, c.envelope);
  apply_mode(o.mode, c.solver);
  const StimulusSetup setup = c.stimulus_setup();
  const SimulationRun run = simulate(setup, c.envelope, o.duration, o.snapshots);
  const fs::path dir = prepare_out(o.out_dir);
  export_run(run, dir);
  write_manifest(dir, "simulate", o, c, {{"simulate", {{"duration", o.duration}, {"snapshots", o.snapshots}}}});
  out << run_summary(run, c.perception).dump(2) << "\n";
  return kExitOk;
}

json calibration_json(const CalibrationResult& r) {
  return {{"eta", r.eta},
          {"target_delta_T_C", r.target_delta_t},
          {"target_time_s", r.target_time},
          {"unit_eta_delta_T_C", r.unit_delta_t},
          {"baseline_delta_T_C", r.baseline_delta_t},
          {"confirmed_delta_T_C", r.confirmed_delta_t}};
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  if (!(o.target_dt > 0.0)) throw ValidationError("must be > 0", "--target-dt");
  if (!(o.target_t > 0.0)) throw ValidationError("must be > 0", "--target-t");
  Config c = load_with_overrides(o);
  const auto started = std::chrono::steady_clock::now();
  const CalibrationResult r = calibrate_eta(c.stimulus_setup(), o.target_dt, o.target_t);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json report = calibration_json(r);
  if (o.write) {
    const fs::path dir = prepare_out(o.out_dir);
    c.skin.absorbed_fraction = r.eta;
    write_text_file(dir / "config.calibrated.json", to_json(c).dump(2) + "\n");
    write_manifest(dir, "calibrate", o, c, {{"calibration", report}});
    report["written"] = (dir / "config.calibrated.json").string();
  }
  report["elapsed_s"] = seconds;
  out << report.dump(2) << "\n";
  return kExitOk;
}

int reproduce_fig2(const Options& o, Config c, std::ostream& out) {
  const fs::path dir = prepare_out(o.out_dir);
  const ReferenceMeasurements ref;
  StimulusSetup setup = c.stimulus_setup();
  const CalibrationResult cal = calibrate_eta(setup, ref.static_5s, 5.0);
  setup.skin.absorbed_fraction = cal.eta;
  c.skin.absorbed_fraction = cal.eta;

  const Envelope modulated = Envelope::square(50.0, 0.9);
  SimulationRun static_run = simulate(setup, Envelope::static_drive(), 30.0);
  // The modulated drive is integrated with the envelope resolved in time.
  StimulusSetup resolved = setup;
  resolved.solver.envelope_mode = EnvelopeMode::kResolved;
  SimulationRun am_run = simulate(resolved, modulated, 30.0);

  const json cal_json = calibration_json(cal);
  export_run(static_run, dir / "static", {{"calibration", cal_json}});
  export_run(am_run, dir / "modulated", {{"calibration", cal_json}});

  const std::vector<double> at{5.0, 30.0};
  const ComparisonReport cmp = compare_runs(static_run, am_run, at);
  const double model_ratio = cmp.rows[0].ratio.value_or(0.0);
  const double measured_ratio = ref.modulated_5s / ref.static_5s;
  const double growth = cmp.rows[1].delta_t_a / cmp.rows[0].delta_t_a;
  const auto t_static = time_to_threshold(static_run, c.perception);
  const auto t_am = time_to_threshold(am_run, c.perception);
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json("not reached"); };

  json report{
      {"calibration", cal_json},
      {"rows", cmp.to_json()},
      {"modulated_over_static_5s", {{"model", model_ratio}, {"measured", measured_ratio}, {"gap", model_ratio - measured_ratio}}},
      {"static_30s_over_5s", {{"model", growth}, {"measured", ref.static_30s / ref.static_5s}}},
      {"modulated_30s_over_5s",
       {{"model", cmp.rows[1].delta_t_b / cmp.rows[0].delta_t_b}, {"measured", ref.modulated_30s / ref.modulated_5s}}},
      {"time_to_threshold_s", {{"static", opt(t_static)}, {"modulated", opt(t_am)}}},
      {"note",
       "heat equation is linear, so the modulated rise scales with the duty ratio; the measured modulated/static "
       "ratio is lower than the duty ratio"},
      {"reference_measurements", to_json(ref)}};
  write_text_file(dir / "comparison.json", report.dump(2) + "\n");

  std::ostringstream csv;
  csv << "time_s,static_delta_T_C,modulated_delta_T_C,ratio\n";
  for (const ComparisonRow& r : cmp.rows) {
    csv << format_number(r.time) << "," << format_number(r.delta_t_a) << "," << format_number(r.delta_t_b) << ","
        << (r.ratio ? format_number(*r.ratio) : std::string()) << "\n";
  }
  write_text_file(dir / "comparison.csv", csv.str());
  write_manifest(dir, "reproduce fig2", o, c);

  out << "eta = " << format_number(cal.eta) << "\n";
  out << "time_s  static_C  modulated_C  ratio   (measured: static 5.4 / 8.6, modulated 4.5 / 5.4)\n";
  for (const ComparisonRow& r : cmp.rows) {
    out << format_number(r.time) << "  " << format_number(r.delta_t_a) << "  " << format_number(r.delta_t_b) << "  "
        << (r.ratio ? format_number(*r.ratio) : std::string("-")) << "\n";
  }
  out << "modulated/static at 5 s: model " << format_number(model_ratio) << ", measured "
      << format_number(measured_ratio) << (std::abs(model_ratio - measured_ratio) > 0.02 ? "  [GAP]" : "") << "\n";
  return kExitOk;
}

int reproduce_fig3(const Options& o, Config c, std::ostream& out) {
  const fs::path dir = prepare_out(o.out_dir);
  StimulusSetup setup = c.stimulus_setup();
  const CalibrationResult cal = calibrate_eta(setup, ReferenceMeasurements{}.static_5s, 5.0);
  setup.skin.absorbed_fraction = cal.eta;
  c.skin.absorbed_fraction = cal.eta;
  const std::vector<double> snaps{30.0};
  const SimulationRun run = simulate(setup, Envelope::static_drive(), 30.0, snaps);

  const IntensityGrid intensity = surface_intensity(setup);
  const GridPeak ipeak = find_peak(intensity.spec, intensity.values);
  const double acoustic_width =
      level_widths(intensity.spec, intensity.values, ipeak.ix, ipeak.iy, 0.25 * ipeak.value).mean();
  const MapShape shape = map_shape(run.surface, run.snapshots.front().delta_t, 0.5);
  const Vec3 focus_projection = setup.surface_center;
  const double offset = distance(shape.peak_location, focus_projection);
  const double half_lambda = 0.5 * setup.medium.wavelength();

  const json report{{"calibration", calibration_json(cal)},
                    {"peak_delta_T_C", shape.peak.value},
                    {"peak_location_m", vec_json(shape.peak_location)},
                    {"peak_offset_from_focus_m", offset},
                    {"half_wavelength_m", half_lambda},
                    {"half_max_diameter_m", shape.contour_width},
                    {"acoustic_6dB_width_m", acoustic_width},
                    {"competing_maxima", shape.competing_maxima},
                    {"single_dominant_peak", shape.competing_maxima == 0 && offset <= half_lambda}};
  export_run(run, dir, {{"calibration", calibration_json(cal)}, {"fig3", report}});
  write_manifest(dir, "reproduce fig3", o, c);
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  if (o.figure != "fig2" && o.figure != "fig3") {
    throw ValidationError("unknown figure '" + o.figure + "'; valid names: fig2, fig3", "figure");
  }
  Config c = load_with_overrides(o);
  return o.figure == "fig2" ? reproduce_fig2(o, std::move(c), out) : reproduce_fig3(o, std::move(c), out);
}

json error_json(const std::string& kind, const std::string& message, const std::string& path = {}) {
  json e{{"error", message}, {"kind", kind}};
  if (!path.empty()) e["path"] = path;
  return e;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Airborne-ultrasound skin heating simulator", "sonotherm"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--set", o.overrides, "Override a config value, e.g. --set skin.convection_h=5");
    sub->add_option("--out", o.out_dir, "Output directory");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a configuration and print derived constants");
  validate->add_option("config", o.config_path, "Configuration file")->required();
  validate->add_option("--set", o.overrides, "Override a config value");

  CLI::App* field = app.add_subcommand("field", "Focus the array and write the intensity field on a plane");
  field->add_option("config", o.config_path, "Configuration file")->required();
  field->add_option("--plane", o.plane, "Plane, z=<m> (default: focus depth)");
  field->add_option("--extent", o.extent, "Square grid side, m");
  field->add_option("--res", o.res, "Grid spacing, m");
  add_common(field);

  CLI::App* sim = app.add_subcommand("simulate", "Run the thermal simulation and export the results");
  sim->add_option("config", o.config_path, "Configuration file")->required();
  sim->add_option("--envelope", o.envelope, "static or square (default: from config)");
  sim->add_option("--mode", o.mode, "mean or resolved envelope integration (default: from config)");
  sim->add_option("--duration", o.duration, "Simulated time, s");
  sim->add_option("--snapshots", o.snapshots, "Surface map times, s")->delimiter(',');
  add_common(sim);

  CLI::App* cal = app.add_subcommand("calibrate", "Fit the absorbed fraction to a measured temperature rise");
  cal->add_option("config", o.config_path, "Configuration file")->required();
  cal->add_option("--target-dt", o.target_dt, "Target rise, deg C");
  cal->add_option("--target-t", o.target_t, "Time of the target rise, s");
  cal->add_flag("--write", o.write, "Write config.calibrated.json into --out");
  add_common(cal);

  CLI::App* rep = app.add_subcommand("reproduce", "Regenerate a figure's data bundle (fig2 or fig3)");
  rep->add_option("figure", o.figure, "fig2 | fig3")->required();
  o.config_path = std::string(SONOTHERM_REF_DIR) + "/sec24.json";
  rep->add_option("--config", o.config_path, "Configuration file");
  add_common(rep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (field->parsed()) return cmd_field(o, out, err);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (cal->parsed()) return cmd_calibrate(o, out);
    if (rep->parsed()) return cmd_reproduce(o, out);
  } catch (const ValidationError& e) {
    err << error_json("validation", e.message(), e.path()).dump() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    err << error_json("solver", e.what()).dump() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << error_json("runtime", e.what()).dump() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace sonotherm
