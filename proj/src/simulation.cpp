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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sonotherm/error.hpp"
#include "sonotherm/thermal.hpp"

namespace sonotherm {

IntensityGrid surface_intensity(const StimulusSetup& setup) {
  return intensity_grid(setup.assembly, setup.medium, setup.drive, setup.grid.surface_plane(setup.surface_center));
}

SimulationRun run_thermal(std::span<const double> flux, const PlaneGridSpec& surface, const Envelope& envelope,
                          const SkinModel& skin, const ThermalGridSpec& grid, const SolverSettings& solver,
                          double duration, const Vec3& probe, std::span<const double> snapshot_times) {
  envelope.validate();
  skin.validate();
  grid.validate();
  solver.validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ValidationError("must be > 0", "duration");
  if (surface.nx != grid.nx || surface.ny != grid.ny || surface.dx != grid.dx || surface.dy != grid.dy) {
    throw ValidationError("surface plane does not match the thermal grid", "thermal_grid");
  }
  if (flux.size() != surface.size()) throw ValidationError("flux map size does not match the surface", "flux");

  SimulationRun run;
  run.surface = surface;
  run.probe = probe;
  const Vec3 rel = probe - surface.origin;
  if (std::abs(dot(rel, surface.normal())) > 1e-6) throw ValidationError("probe is off the skin surface plane", "probe");
  const double fx = dot(rel, surface.u_axis) / surface.dx;
  const double fy = dot(rel, surface.v_axis) / surface.dy;
  if (fx < -0.5 || fy < -0.5 || fx > surface.nx - 0.5 || fy > surface.ny - 0.5) {
    throw ValidationError("probe lies outside the thermal grid", "probe");
  }
  run.probe_ix = std::clamp(static_cast<int>(std::lround(fx)), 0, surface.nx - 1);
  run.probe_iy = std::clamp(static_cast<int>(std::lround(fy)), 0, surface.ny - 1);
  const std::size_t probe_cell = surface.index(run.probe_ix, run.probe_iy);

  const double interval = solver.output_interval;
  for (const double s : snapshot_times) {
    if (!(s >= 0.0) || s > duration * (1.0 + 1e-9)) {
      throw ValidationError("snapshot time " + std::to_string(s) + " s outside [0, duration]", "snapshots");
    }
  }

  HeatSolver heat(initial_grid(grid, skin, solver.initial_state, solver.bottom), skin, solver.bottom);
  const std::vector<double> start_surface(heat.grid().surface().begin(), heat.grid().surface().end());
  const double probe_start = start_surface[probe_cell];

  double dt_cap = solver.safety * heat.max_stable_dt();
  if (solver.envelope_mode == EnvelopeMode::kResolved) dt_cap = std::min(dt_cap, solver.resolved_dt);
  const double mean_factor = mean_intensity_factor(envelope);

  // Output times k * interval, with a shorter final interval if duration is not a multiple.
  std::vector<double> outputs{0.0};
  for (std::size_t n = 1;; ++n) {
    const double t = static_cast<double>(n) * interval;
    if (t >= duration * (1.0 - 1e-12) || std::abs(t - duration) <= 1e-9 * interval) {
      outputs.push_back(duration);
      break;
    }
    outputs.push_back(t);
  }

  std::vector<std::size_t> snapshot_slots;
  for (const double s : snapshot_times) {
    const auto it = std::min_element(outputs.begin(), outputs.end(),
                                     [&](double a, double b) { return std::abs(a - s) < std::abs(b - s); });
    snapshot_slots.push_back(static_cast<std::size_t>(it - outputs.begin()));
  }
  auto record = [&](std::size_t slot) {
    const auto surf = heat.grid().surface();
    run.times.push_back(outputs[slot]);
    run.probe_delta_t.push_back(slot == 0 ? 0.0 : surf[probe_cell] - probe_start);
    run.energy.push_back({heat.ledger().absorbed, heat.ledger().lost(), heat.stored_energy()});
    for (std::size_t s = 0; s < snapshot_slots.size(); ++s) {
      if (snapshot_slots[s] != slot) continue;
      SurfaceSnapshot snap{snapshot_times[s], std::vector<double>(surf.size())};
      for (std::size_t c = 0; c < surf.size(); ++c) snap.delta_t[c] = surf[c] - start_surface[c];
      run.snapshots.push_back(std::move(snap));
    }
  };

  record(0);
  std::size_t steps = 0;
  double dt_used = 0.0;
  for (std::size_t slot = 1; slot < outputs.size(); ++slot) {
    const double t0 = outputs[slot - 1];
    const double span = outputs[slot] - t0;
    const auto substeps = static_cast<std::size_t>(std::ceil(span / dt_cap - 1e-9));
    const double dt = span / static_cast<double>(substeps);
    dt_used = std::max(dt_used, dt);
    for (std::size_t s = 0; s < substeps; ++s) {
      double factor = mean_factor;
      if (solver.envelope_mode == EnvelopeMode::kResolved) {
        const double e = envelope_value(envelope, t0 + static_cast<double>(s) * dt);
        factor = e * e;
      }
      heat.advance(flux, factor, dt);
      ++steps;
    }
    record(slot);
  }
  std::stable_sort(run.snapshots.begin(), run.snapshots.end(),
                   [](const SurfaceSnapshot& a, const SurfaceSnapshot& b) { return a.time < b.time; });

  run.meta.envelope = envelope;
  run.meta.skin = skin;
  run.meta.grid = grid;
  run.meta.solver = solver;
  run.meta.dt = dt_used;
  run.meta.steps = steps;
  run.meta.depth_nodes = static_cast<std::size_t>(heat.grid().nz());
  run.meta.flux_factor = solver.envelope_mode == EnvelopeMode::kMeanFactor ? mean_factor : 1.0;
  return run;
}

SimulationRun simulate(const StimulusSetup& setup, const Envelope& envelope, double duration,
                       std::span<const double> snapshot_times) {
  const IntensityGrid intensity = surface_intensity(setup);
  const std::vector<double> flux = surface_flux(intensity, intensity.spec, setup.skin);
  SimulationRun run = run_thermal(flux, intensity.spec, envelope, setup.skin, setup.grid, setup.solver, duration,
                                  setup.probe, snapshot_times);
  run.meta.assembly_hash = setup.assembly.hash();
  return run;
}

double probe_delta_t_at(const SimulationRun& run, double t) {
  const auto& ts = run.times;
  if (ts.empty() || t < ts.front() - 1e-12 || t > ts.back() + 1e-9) {
    throw ValidationError("time " + std::to_string(t) + " s outside the run", "time");
  }
  const auto hi = std::lower_bound(ts.begin(), ts.end(), t - 1e-12);
  if (hi == ts.end()) return run.probe_delta_t.back();
  const auto i = static_cast<std::size_t>(hi - ts.begin());
  if (i == 0 || std::abs(ts[i] - t) <= 1e-12) return run.probe_delta_t[i];
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return (1.0 - w) * run.probe_delta_t[i - 1] + w * run.probe_delta_t[i];
}

CalibrationResult calibrate_eta(const StimulusSetup& setup, double target_delta_t, double target_time) {
  if (!(target_delta_t > 0.0) || !std::isfinite(target_delta_t)) {
    throw ValidationError("must be > 0", "target_delta_t");
  }
  if (!(target_time > 0.0) || !std::isfinite(target_time)) throw ValidationError("must be > 0", "target_time");

  const Envelope env = Envelope::static_drive();
  const IntensityGrid intensity = surface_intensity(setup);
  SkinModel unit_skin = setup.skin;
  unit_skin.absorbed_fraction = 1.0;
  const std::vector<double> unit_flux = surface_flux(intensity, intensity.spec, unit_skin);

  auto rise = [&](double eta) {
    std::vector<double> flux(unit_flux.size());
    std::transform(unit_flux.begin(), unit_flux.end(), flux.begin(), [&](double q) { return eta * q; });
    SkinModel skin = setup.skin;
    skin.absorbed_fraction = eta;
    const SimulationRun run =
        run_thermal(flux, intensity.spec, env, skin, setup.grid, setup.solver, target_time, setup.probe);
    return probe_delta_t_at(run, target_time);
  };

  CalibrationResult result;
  result.target_delta_t = target_delta_t;
  result.target_time = target_time;
  result.unit_delta_t = rise(1.0);
  // A steady start makes the rise linear in eta; a uniform start adds a free cooling offset.
  result.baseline_delta_t = setup.solver.initial_state == InitialState::kSteady ? 0.0 : rise(0.0);
  const double slope = result.unit_delta_t - result.baseline_delta_t;
  if (!(slope > 0.0)) {
    std::ostringstream msg;
    msg << "unit absorbed fraction gives a probe rise of " << slope
        << " deg C; the array does not heat the probe (check focus, probe and enabled units)";
    throw SolverError(msg.str());
  }
  result.eta = (target_delta_t - result.baseline_delta_t) / slope;
  if (result.eta < 0.0) throw SolverError("target rise is below the unforced drift; no non-negative eta");
  result.confirmed_delta_t = rise(result.eta);
  if (std::abs(result.confirmed_delta_t - target_delta_t) > 1e-2) {
    std::ostringstream msg;
    msg << "confirming run reached " << result.confirmed_delta_t << " deg C instead of " << target_delta_t;
    throw SolverError(msg.str());
  }
  return result;
}

}  // namespace sonotherm
