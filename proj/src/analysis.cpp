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

#include "sonotherm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sonotherm/error.hpp"
#include "sonotherm/grid_io.hpp"
#include "sonotherm/hash.hpp"

namespace sonotherm {

void PerceptionModel::validate(const std::string& path) const {
  if (!(warm_threshold > 0.0)) throw ValidationError("must be > 0", path + ".warm_threshold");
  if (!std::isfinite(acclimation_T)) throw ValidationError("must be finite", path + ".acclimation_T");
}

nlohmann::json to_json(const ReferenceMeasurements& ref) {
  return {{"static_delta_T_5s_C", ref.static_5s},
          {"modulated_delta_T_5s_C", ref.modulated_5s},
          {"static_delta_T_30s_C", ref.static_30s},
          {"modulated_delta_T_30s_C", ref.modulated_30s},
          {"warm_threshold_C", ref.warm_threshold},
          {"modulation", {{"freq_hz", 50.0}, {"duty", 0.9}}},
          {"focus_distance_m", 0.296}};
}

std::optional<double> time_to_threshold(std::span<const double> times, std::span<const double> delta_t,
                                        double threshold) {
  if (times.size() != delta_t.size()) throw ValidationError("times and values differ in length", "run");
  if (times.size() < 2) throw ValidationError("need at least two samples", "run");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (delta_t[i] < threshold) continue;
    if (i == 0) return times[0];
    const double w = (threshold - delta_t[i - 1]) / (delta_t[i] - delta_t[i - 1]);
    return times[i - 1] + w * (times[i] - times[i - 1]);
  }
  return std::nullopt;
}

std::optional<double> time_to_threshold(const SimulationRun& run, const PerceptionModel& model) {
  model.validate();
  return time_to_threshold(run.times, run.probe_delta_t, model.warm_threshold);
}

nlohmann::json ComparisonReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const ComparisonRow& r : rows) {
    nlohmann::json row{{"time_s", r.time}, {"delta_T_a_C", r.delta_t_a}, {"delta_T_b_C", r.delta_t_b}};
    row["ratio_b_over_a"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
    rows_json.push_back(std::move(row));
  }
  return rows_json;
}

ComparisonReport compare_runs(const SimulationRun& a, const SimulationRun& b, std::span<const double> at_times) {
  if (distance(a.probe, b.probe) > 1e-12 || a.probe_ix != b.probe_ix || a.probe_iy != b.probe_iy) {
    throw ValidationError("runs use different probe locations", "runs");
  }
  if (a.times.size() != b.times.size()) throw ValidationError("runs use different output times", "runs");
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) throw ValidationError("runs use different output times", "runs");
  }
  ComparisonReport report;
  for (const double t : at_times) {
    ComparisonRow row;
    row.time = t;
    row.delta_t_a = probe_delta_t_at(a, t);
    row.delta_t_b = probe_delta_t_at(b, t);
    if (std::abs(row.delta_t_a) >= 1e-6) row.ratio = row.delta_t_b / row.delta_t_a;
    report.rows.push_back(row);
  }
  return report;
}

std::string snapshot_stem(double time) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "map_%.1fs", time);
  return buf;
}

nlohmann::json run_metadata_json(const SimulationRun& run) {
  const RunMetadata& m = run.meta;
  nlohmann::json env{{"kind", m.envelope.name()}};
  if (m.envelope.kind == Envelope::Kind::kSquare) {
    env["freq_hz"] = m.envelope.mod_frequency;
    env["duty"] = m.envelope.duty;
  }
  const SkinModel& s = m.skin;
  const EnergySample last = run.energy.empty() ? EnergySample{} : run.energy.back();
  nlohmann::json meta{
      {"envelope", env},
      {"absorbed_fraction", s.absorbed_fraction},
      {"assembly_hash", hex64(m.assembly_hash)},
      {"skin",
       {{"conductivity", s.conductivity},
        {"density", s.density},
        {"specific_heat", s.specific_heat},
        {"absorbed_fraction", s.absorbed_fraction},
        {"convection_h", s.convection_h},
        {"ambient_T", s.ambient_T},
        {"core_T", s.core_T},
        {"slab_thickness", s.slab_thickness},
        {"perfusion_rate", s.perfusion_rate}}},
      {"thermal_grid",
       {{"nx", m.grid.nx},
        {"ny", m.grid.ny},
        {"dx", m.grid.dx},
        {"dy", m.grid.dy},
        {"surface_dz", m.grid.surface_dz},
        {"dz_growth", m.grid.dz_growth},
        {"depth_bisections", m.grid.depth_bisections},
        {"depth_nodes", m.depth_nodes}}},
      {"solver",
       {{"envelope_mode", to_string(m.solver.envelope_mode)},
        {"output_interval", m.solver.output_interval},
        {"resolved_dt", m.solver.resolved_dt},
        {"safety", m.solver.safety},
        {"initial_state", to_string(m.solver.initial_state)},
        {"bottom", to_string(m.solver.bottom)},
        {"dt", m.dt},
        {"steps", m.steps},
        {"flux_factor", m.flux_factor}}},
      {"probe", {run.probe.x, run.probe.y, run.probe.z}},
      {"probe_cell", {run.probe_ix, run.probe_iy}},
      {"samples", run.times.size()},
      {"duration_s", run.times.empty() ? 0.0 : run.times.back()},
      {"final_probe_delta_T_C", run.probe_delta_t.empty() ? 0.0 : run.probe_delta_t.back()},
      {"energy_J", {{"absorbed", last.absorbed}, {"lost", last.lost}, {"stored", last.stored}}},
      {"reference_measurements", to_json(ReferenceMeasurements{})},
  };
  nlohmann::json snaps = nlohmann::json::array();
  for (const SurfaceSnapshot& snap : run.snapshots) snaps.push_back(snapshot_stem(snap.time));
  meta["snapshots"] = snaps;
  return meta;
}

std::vector<std::filesystem::path> export_run(const SimulationRun& run, const std::filesystem::path& out_dir,
                                              const nlohmann::json& extra_meta) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  std::ostringstream ts;
  ts << "time_s,delta_T_C\n";
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    ts << format_number(run.times[i]) << "," << format_number(run.probe_delta_t[i]) << "\n";
  }
  written.push_back(out_dir / "timeseries.csv");
  write_text_file(written.back(), ts.str());

  for (const SurfaceSnapshot& snap : run.snapshots) {
    const std::string stem = snapshot_stem(snap.time);
    written.push_back(out_dir / (stem + ".csv"));
    write_grid_csv(written.back(), run.surface, snap.delta_t, "delta_T_C");
    written.push_back(out_dir / (stem + ".pgm"));
    write_pgm(written.back(), run.surface, snap.delta_t, "delta_T_C");
  }

  nlohmann::json meta = run_metadata_json(run);
  if (extra_meta.is_object()) meta.update(extra_meta);
  written.push_back(out_dir / "meta.json");
  write_text_file(written.back(), meta.dump(2) + "\n");
  return written;
}

void read_timeseries_csv(const std::filesystem::path& path, std::vector<double>& times,
                         std::vector<double>& delta_t) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "time_s,delta_T_C") throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");
  times.clear();
  delta_t.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    times.push_back(std::stod(line.substr(0, comma)));
    delta_t.push_back(std::stod(line.substr(comma + 1)));
  }
}

MapShape map_shape(const PlaneGridSpec& spec, const std::vector<double>& values, double level) {
  MapShape shape;
  shape.peak = find_peak(spec, values);
  shape.peak_location = spec.cell_center(shape.peak.ix, shape.peak.iy);
  shape.contour_width = level_widths(spec, values, shape.peak.ix, shape.peak.iy, level * shape.peak.value).mean();
  for (const GridPeak& p : local_maxima(spec, values, 0.5 * shape.peak.value)) {
    if (p.ix != shape.peak.ix || p.iy != shape.peak.iy) ++shape.competing_maxima;
  }
  return shape;
}

}  // namespace sonotherm
