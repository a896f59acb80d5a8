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

#ifndef SONOTHERM_THERMAL_HPP
#define SONOTHERM_THERMAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sonotherm/acoustics.hpp"
#include "sonotherm/field_grid.hpp"
#include "sonotherm/modulation.hpp"

namespace sonotherm {

/// Homogeneous skin slab. `absorbed_fraction` converts incident intensity into surface heat flux.
struct SkinModel {
  double conductivity = 0.37;      ///< W/(m K)
  double density = 1109.0;         ///< kg/m^3
  double specific_heat = 3391.0;   ///< J/(kg K)
  double absorbed_fraction = 1.0;  ///< eta
  double convection_h = 10.0;      ///< W/(m^2 K)
  double ambient_T = 25.0;         ///< deg C
  double core_T = 33.0;            ///< deg C
  double slab_thickness = 10e-3;   ///< m
  double perfusion_rate = 0.0;     ///< 1/s

  void validate(const std::string& path = "skin") const;
  double diffusivity() const { return conductivity / (density * specific_heat); }
  double volumetric_heat_capacity() const { return density * specific_heat; }
};

/**
 * Discretization of the slab under the irradiated patch.
 *
 * Laterally: nx x ny cells of dx x dy, cell-centered, adiabatic side walls. In depth:
 * nodes from z = 0 (skin surface) to slab_thickness, spacing starting at surface_dz and
 * growing geometrically by dz_growth; each depth_bisections pass halves every interval.
 */
struct ThermalGridSpec {
  int nx = 81;
  int ny = 81;
  double dx = 1e-3;
  double dy = 1e-3;
  double surface_dz = 1e-4;
  double dz_growth = 1.15;
  int depth_bisections = 0;

  void validate(const std::string& path = "thermal_grid") const;
  std::vector<double> depth_nodes(double thickness) const;
  /// Surface plane (skin side facing the array) centered on `center`.
  PlaneGridSpec surface_plane(const Vec3& center) const;
  /// Every spacing halved: 2n-1 lateral cells over the same extent, depth intervals bisected.
  ThermalGridSpec refined() const;
};

/// Temperature field (deg C). Index (i, j, k) = (x cell, y cell, depth node); k = 0 is the surface.
class ThermalGrid {
 public:
  ThermalGrid(int nx, int ny, double dx, double dy, std::vector<double> depths, double fill);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return static_cast<int>(depths_.size()); }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  const std::vector<double>& depths() const { return depths_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  double& at(int i, int j, int k) { return temperatures_[index(i, j, k)]; }
  double at(int i, int j, int k) const { return temperatures_[index(i, j, k)]; }

  std::span<double> temperatures() { return temperatures_; }
  std::span<const double> temperatures() const { return temperatures_; }
  std::span<const double> surface() const {
    return std::span<const double>(temperatures_).first(static_cast<std::size_t>(nx_) * ny_);
  }

 private:
  int nx_;
  int ny_;
  double dx_;
  double dy_;
  std::vector<double> depths_;
  std::vector<double> temperatures_;
};

enum class BottomBoundary { kClamped, kAdiabatic };
enum class EnvelopeMode { kMeanFactor, kResolved };
enum class InitialState { kSteady, kUniform };

struct SolverSettings {
  EnvelopeMode envelope_mode = EnvelopeMode::kMeanFactor;
  double output_interval = 0.1;  ///< s between recorded samples
  double resolved_dt = 1e-3;     ///< upper bound on dt in resolved mode, s
  double safety = 0.9;           ///< fraction of the explicit stability limit used for dt
  InitialState initial_state = InitialState::kSteady;
  BottomBoundary bottom = BottomBoundary::kClamped;

  void validate(const std::string& path = "solver") const;
};

std::string to_string(EnvelopeMode mode);
std::string to_string(InitialState state);
std::string to_string(BottomBoundary bottom);

/// q = eta * I. `intensity.spec` must equal `surface`.
std::vector<double> surface_flux(const IntensityGrid& intensity, const PlaneGridSpec& surface, const SkinModel& skin);

/// Energy crossing the slab boundaries since the start of integration, J.
struct EnergyLedger {
  double absorbed = 0.0;   ///< surface heat flux in
  double convected = 0.0;  ///< convective loss at the surface
  double bottom = 0.0;     ///< conduction into the clamped bottom layer
  double perfused = 0.0;   ///< perfusion sink
  double lost() const { return convected + bottom + perfused; }
};

/**
 * Explicit forward-time central-space integrator for
 *   dT/dt = kappa lap(T) - w (T - core_T)
 * on a ThermalGrid, finite-volume form. Surface nodes own half an interval and receive
 * flux - h (T - ambient_T); bottom nodes are clamped at core_T or adiabatic.
 */
class HeatSolver {
 public:
  HeatSolver(ThermalGrid initial, const SkinModel& skin, BottomBoundary bottom);

  /// Largest dt for which every node update is a convex combination.
  double max_stable_dt() const { return max_stable_dt_; }

  /// One step with surface flux flux_scale * flux (W/m^2, nx*ny cells).
  /// Throws SolverError on a stability violation or a non-finite result.
  void advance(std::span<const double> flux, double flux_scale, double dt);

  const ThermalGrid& grid() const { return current_; }
  const EnergyLedger& ledger() const { return ledger_; }
  /// sum over non-clamped nodes of rho c V (T - T_initial), J.
  double stored_energy() const;

 private:
  SkinModel skin_;
  BottomBoundary bottom_;
  ThermalGrid initial_;
  ThermalGrid current_;
  std::vector<double> next_;
  std::vector<double> layer_volume_;      // per depth node, per unit lateral area
  std::vector<double> down_conductance_;  // k / h_k between node k and k+1, per unit area
  double max_stable_dt_ = 0.0;
  EnergyLedger ledger_;
};

/// Explicit stability limit 0.5 / (kappa (1/dx^2 + 1/dy^2 + 1/dz^2)) for a uniform grid.
double uniform_stability_limit(double diffusivity, double dx, double dy, double dz);

/// Single step of the heat equation; pure wrapper around HeatSolver.
ThermalGrid step(const ThermalGrid& grid, const SkinModel& skin, std::span<const double> flux, double dt,
                 BottomBoundary bottom = BottomBoundary::kClamped);

/// Unforced steady state (laterally uniform), or uniform core_T.
ThermalGrid initial_grid(const ThermalGridSpec& spec, const SkinModel& skin, InitialState state,
                         BottomBoundary bottom);

struct SurfaceSnapshot {
  double time = 0.0;
  std::vector<double> delta_t;  ///< surface temperature change, nx*ny, deg C
};

struct EnergySample {
  double absorbed = 0.0;
  double lost = 0.0;
  double stored = 0.0;
};

struct RunMetadata {
  Envelope envelope;
  std::uint64_t assembly_hash = 0;
  SkinModel skin;
  ThermalGridSpec grid;
  SolverSettings solver;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t depth_nodes = 0;
  double flux_factor = 1.0;  ///< envelope factor applied in mean-factor mode
};

/// Output of one thermal simulation. times[0] = 0 and probe_delta_t[0] = 0.
struct SimulationRun {
  std::vector<double> times;
  std::vector<double> probe_delta_t;
  std::vector<SurfaceSnapshot> snapshots;
  std::vector<EnergySample> energy;  ///< one per entry of `times`
  PlaneGridSpec surface;
  Vec3 probe;
  int probe_ix = 0;
  int probe_iy = 0;
  RunMetadata meta;
};

/// Everything that defines a stimulus except the envelope.
struct StimulusSetup {
  ArrayAssembly assembly;
  MediumParams medium;
  DriveVector drive;
  Vec3 surface_center;  ///< center of the irradiated skin patch
  Vec3 probe;           ///< surface point whose temperature is tracked
  SkinModel skin;
  ThermalGridSpec grid;
  SolverSettings solver;
};

/// Surface intensity map for the setup, W/m^2, on grid.surface_plane(surface_center).
IntensityGrid surface_intensity(const StimulusSetup& setup);

/**
 * Integrates the slab under a fixed spatial flux map scaled by the envelope.
 * `flux` is the full-drive surface flux (eta already applied). Snapshot times are
 * rounded to the nearest output time.
 */
SimulationRun run_thermal(std::span<const double> flux, const PlaneGridSpec& surface, const Envelope& envelope,
                          const SkinModel& skin, const ThermalGridSpec& grid, const SolverSettings& solver,
                          double duration, const Vec3& probe, std::span<const double> snapshot_times = {});

/// Acoustic field once, then run_thermal.
SimulationRun simulate(const StimulusSetup& setup, const Envelope& envelope, double duration,
                       std::span<const double> snapshot_times = {});

/// Probe temperature change at time t, linear between samples.
double probe_delta_t_at(const SimulationRun& run, double t);

struct CalibrationResult {
  double eta = 0.0;
  double target_delta_t = 0.0;
  double target_time = 0.0;
  double unit_delta_t = 0.0;      ///< probe rise at target_time with eta = 1
  double baseline_delta_t = 0.0;  ///< probe rise with eta = 0 (0 from a steady start)
  double confirmed_delta_t = 0.0;
};

/**
 * Absorbed fraction that makes a static stimulus raise the probe by target_delta_t at
 * target_time. The rise is affine in eta, so one eta = 1 run (plus an eta = 0 run when the
 * start is not an equilibrium) fixes it; a third run confirms within 1e-2 deg C.
 */
CalibrationResult calibrate_eta(const StimulusSetup& setup, double target_delta_t = 5.4, double target_time = 5.0);

}  // namespace sonotherm

#endif  // SONOTHERM_THERMAL_HPP
