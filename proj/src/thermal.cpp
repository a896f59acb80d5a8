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

#include "sonotherm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sonotherm/error.hpp"

namespace sonotherm {

void SkinModel::validate(const std::string& path) const {
  auto positive = [&](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("must be > 0", path + "." + key);
  };
  positive(conductivity, "conductivity");
  positive(density, "density");
  positive(specific_heat, "specific_heat");
  positive(slab_thickness, "slab_thickness");
  if (!(absorbed_fraction >= 0.0) || !std::isfinite(absorbed_fraction)) {
    throw ValidationError("must be >= 0", path + ".absorbed_fraction");
  }
  if (!(convection_h >= 0.0)) throw ValidationError("must be >= 0", path + ".convection_h");
  if (!(perfusion_rate >= 0.0)) throw ValidationError("must be >= 0", path + ".perfusion_rate");
  if (!std::isfinite(ambient_T)) throw ValidationError("must be finite", path + ".ambient_T");
  if (!std::isfinite(core_T)) throw ValidationError("must be finite", path + ".core_T");
}

void ThermalGridSpec::validate(const std::string& path) const {
  if (nx < 3) throw ValidationError("must be >= 3", path + ".nx");
  if (ny < 3) throw ValidationError("must be >= 3", path + ".ny");
  if (!(dx > 0.0)) throw ValidationError("must be > 0", path + ".dx");
  if (!(dy > 0.0)) throw ValidationError("must be > 0", path + ".dy");
  if (!(surface_dz > 0.0)) throw ValidationError("must be > 0", path + ".surface_dz");
  if (!(dz_growth >= 1.0)) throw ValidationError("must be >= 1", path + ".dz_growth");
  if (depth_bisections < 0) throw ValidationError("must be >= 0", path + ".depth_bisections");
}

std::vector<double> ThermalGridSpec::depth_nodes(double thickness) const {
  std::vector<double> z{0.0};
  double h = surface_dz;
  // Stop early rather than leave a final interval shorter than half the current spacing.
  while (thickness - (z.back() + h) >= 0.5 * h) {
    z.push_back(z.back() + h);
    h *= dz_growth;
  }
  z.push_back(thickness);
  for (int pass = 0; pass < depth_bisections; ++pass) {
    std::vector<double> fine;
    fine.reserve(2 * z.size() - 1);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
      fine.push_back(z[i]);
      fine.push_back(0.5 * (z[i] + z[i + 1]));
    }
    fine.push_back(z.back());
    z = std::move(fine);
  }
  return z;
}

PlaneGridSpec ThermalGridSpec::surface_plane(const Vec3& center) const {
  return PlaneGridSpec::centered(center, nx, ny, dx, dy);
}

ThermalGridSpec ThermalGridSpec::refined() const {
  ThermalGridSpec out = *this;
  out.nx = 2 * nx - 1;
  out.ny = 2 * ny - 1;
  out.dx = 0.5 * dx;
  out.dy = 0.5 * dy;
  out.depth_bisections = depth_bisections + 1;
  return out;
}

ThermalGrid::ThermalGrid(int nx, int ny, double dx, double dy, std::vector<double> depths, double fill)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy), depths_(std::move(depths)) {
  if (nx_ < 3 || ny_ < 3) throw ValidationError("thermal grid needs nx, ny >= 3", "thermal_grid");
  if (depths_.size() < 2) throw ValidationError("thermal grid needs >= 2 depth nodes", "thermal_grid");
  for (std::size_t k = 0; k + 1 < depths_.size(); ++k) {
    if (!(depths_[k + 1] > depths_[k])) throw ValidationError("depth nodes must increase", "thermal_grid");
  }
  temperatures_.assign(static_cast<std::size_t>(nx_) * ny_ * depths_.size(), fill);
}

std::string to_string(EnvelopeMode mode) { return mode == EnvelopeMode::kMeanFactor ? "mean" : "resolved"; }
std::string to_string(InitialState state) { return state == InitialState::kSteady ? "steady" : "uniform"; }
std::string to_string(BottomBoundary bottom) {
  return bottom == BottomBoundary::kClamped ? "clamped" : "adiabatic";
}

void SolverSettings::validate(const std::string& path) const {
  if (!(output_interval > 0.0)) throw ValidationError("must be > 0", path + ".output_interval");
  if (!(resolved_dt > 0.0)) throw ValidationError("must be > 0", path + ".resolved_dt");
  if (!(safety > 0.0 && safety <= 1.0)) throw ValidationError("must be within (0, 1]", path + ".safety");
}

std::vector<double> surface_flux(const IntensityGrid& intensity, const PlaneGridSpec& surface, const SkinModel& skin) {
  const PlaneGridSpec& s = intensity.spec;
  const bool same = s.nx == surface.nx && s.ny == surface.ny && std::abs(s.dx - surface.dx) <= 1e-12 * surface.dx &&
                    std::abs(s.dy - surface.dy) <= 1e-12 * surface.dy && distance(s.origin, surface.origin) <= 1e-12 &&
                    distance(s.u_axis, surface.u_axis) <= 1e-12 && distance(s.v_axis, surface.v_axis) <= 1e-12;
  if (!same) throw ValidationError("intensity grid does not match the skin surface grid", "grid");
  std::vector<double> q(intensity.values.size());
  std::transform(intensity.values.begin(), intensity.values.end(), q.begin(),
                 [&](double i) { return skin.absorbed_fraction * i; });
  return q;
}

// --- HeatSolver -------------------------------------------------------------

HeatSolver::HeatSolver(ThermalGrid initial, const SkinModel& skin, BottomBoundary bottom)
    : skin_(skin), bottom_(bottom), initial_(initial), current_(std::move(initial)) {
  skin_.validate();
  const auto& z = current_.depths();
  const int nz = current_.nz();
  layer_volume_.resize(nz);
  down_conductance_.assign(nz, 0.0);
  for (int k = 0; k < nz; ++k) {
    const double above = k > 0 ? z[k] - z[k - 1] : 0.0;
    const double below = k + 1 < nz ? z[k + 1] - z[k] : 0.0;
    layer_volume_[k] = 0.5 * (above + below);
    if (k + 1 < nz) down_conductance_[k] = skin_.conductivity / below;
  }
  next_.resize(current_.temperatures().size());

  const double rc = skin_.volumetric_heat_capacity();
  const double kappa = skin_.diffusivity();
  const double lateral = kappa * (2.0 / (current_.dx() * current_.dx()) + 2.0 / (current_.dy() * current_.dy()));
  const int last_free = bottom_ == BottomBoundary::kClamped ? nz - 2 : nz - 1;
  double worst = 0.0;
  for (int k = 0; k <= last_free; ++k) {
    double rate = lateral + skin_.perfusion_rate;
    rate += ((k > 0 ? down_conductance_[k - 1] : 0.0) + down_conductance_[k]) / (rc * layer_volume_[k]);
    if (k == 0) rate += skin_.convection_h / (rc * layer_volume_[0]);
    worst = std::max(worst, rate);
  }
  max_stable_dt_ = 1.0 / worst;
}

void HeatSolver::advance(std::span<const double> flux, double flux_scale, double dt) {
  const int nx = current_.nx();
  const int ny = current_.ny();
  const int nz = current_.nz();
  const std::size_t plane = static_cast<std::size_t>(nx) * ny;
  if (flux.size() != plane) throw ValidationError("flux map size does not match the surface layer", "flux");
  if (!(dt > 0.0)) throw ValidationError("must be > 0", "dt");
  if (dt > max_stable_dt_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "explicit step dt = " << dt << " s exceeds the stability limit " << max_stable_dt_ << " s";
    throw SolverError(msg.str());
  }

  const double rc = skin_.volumetric_heat_capacity();
  const double kappa = skin_.diffusivity();
  const double cx = kappa / (current_.dx() * current_.dx());
  const double cy = kappa / (current_.dy() * current_.dy());
  const double w = skin_.perfusion_rate;
  const double area = current_.dx() * current_.dy();
  const bool clamped = bottom_ == BottomBoundary::kClamped;
  const int last_free = clamped ? nz - 2 : nz - 1;
  const std::span<const double> t = current_.temperatures();

  double absorbed = 0.0;
  double convected = 0.0;
  double to_bottom = 0.0;
  double perfused = 0.0;
  bool finite = true;

  for (int k = 0; k < nz; ++k) {
    const double* layer = t.data() + static_cast<std::size_t>(k) * plane;
    double* out = next_.data() + static_cast<std::size_t>(k) * plane;
    if (k > last_free) {
      std::copy(layer, layer + plane, out);
      continue;
    }
    const double* up = k > 0 ? layer - plane : nullptr;
    const double* down = k + 1 < nz ? layer + plane : nullptr;
    const double g_up = k > 0 ? down_conductance_[k - 1] : 0.0;
    const double g_down = down_conductance_[k];
    const double inv_cap = 1.0 / (rc * layer_volume_[k]);
    const double perf_energy = w * rc * layer_volume_[k];
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * nx;
      const double* south = j > 0 ? layer + row - nx : layer + row;
      const double* north = j + 1 < ny ? layer + row + nx : layer + row;
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = row + i;
        const double tc = layer[c];
        const double west = i > 0 ? layer[c - 1] : tc;
        const double east = i + 1 < nx ? layer[c + 1] : tc;
        double rate = cx * (west + east - 2.0 * tc) + cy * (south[i] + north[i] - 2.0 * tc) - w * (tc - skin_.core_T);
        double vertical = 0.0;
        if (up) vertical += g_up * (up[c] - tc);
        if (down) vertical += g_down * (down[c] - tc);
        if (k == 0) {
          const double q = flux_scale * flux[c];
          const double loss = skin_.convection_h * (tc - skin_.ambient_T);
          vertical += q - loss;
          absorbed += q;
          convected += loss;
        }
        if (clamped && k == last_free) to_bottom += g_down * (tc - down[c]);
        perfused += perf_energy * (tc - skin_.core_T);
        const double v = tc + dt * (rate + vertical * inv_cap);
        finite = finite && std::isfinite(v);
        out[c] = v;
      }
    }
  }
  if (!finite) {
    const auto bad = std::find_if(next_.begin(), next_.end(), [](double v) { return !std::isfinite(v); });
    const std::size_t idx = static_cast<std::size_t>(bad - next_.begin());
    std::ostringstream msg;
    msg << "non-finite temperature at (i, j, k) = (" << idx % nx << ", " << (idx / nx) % ny << ", " << idx / plane
        << ") with dt = " << dt << " s";
    throw SolverError(msg.str());
  }
  std::copy(next_.begin(), next_.end(), current_.temperatures().begin());
  ledger_.absorbed += dt * area * absorbed;
  ledger_.convected += dt * area * convected;
  ledger_.bottom += dt * area * to_bottom;
  ledger_.perfused += dt * area * perfused;
}

double HeatSolver::stored_energy() const {
  const int nx = current_.nx();
  const int ny = current_.ny();
  const int nz = current_.nz();
  const std::size_t plane = static_cast<std::size_t>(nx) * ny;
  const int last_free = bottom_ == BottomBoundary::kClamped ? nz - 2 : nz - 1;
  const double rc_area = skin_.volumetric_heat_capacity() * current_.dx() * current_.dy();
  const auto now = current_.temperatures();
  const auto then = initial_.temperatures();
  double total = 0.0;
  for (int k = 0; k <= last_free; ++k) {
    double layer = 0.0;
    for (std::size_t c = static_cast<std::size_t>(k) * plane; c < static_cast<std::size_t>(k + 1) * plane; ++c) {
      layer += now[c] - then[c];
    }
    total += rc_area * layer_volume_[k] * layer;
  }
  return total;
}

double uniform_stability_limit(double diffusivity, double dx, double dy, double dz) {
  return 0.5 / (diffusivity * (1.0 / (dx * dx) + 1.0 / (dy * dy) + 1.0 / (dz * dz)));
}

ThermalGrid step(const ThermalGrid& grid, const SkinModel& skin, std::span<const double> flux, double dt,
                 BottomBoundary bottom) {
  HeatSolver solver(grid, skin, bottom);
  solver.advance(flux, 1.0, dt);
  return solver.grid();
}

ThermalGrid initial_grid(const ThermalGridSpec& spec, const SkinModel& skin, InitialState state,
                         BottomBoundary bottom) {
  spec.validate();
  skin.validate();
  ThermalGrid grid(spec.nx, spec.ny, spec.dx, spec.dy, spec.depth_nodes(skin.slab_thickness), skin.core_T);
  const bool singular = bottom == BottomBoundary::kAdiabatic && skin.convection_h == 0.0 && skin.perfusion_rate == 0.0;
  if (state == InitialState::kUniform || singular) return grid;

  // Laterally uniform steady state of the discrete operator: tridiagonal solve over depth.
  const auto& z = grid.depths();
  const int nz = grid.nz();
  const double rc = skin.volumetric_heat_capacity();
  std::vector<double> lower(nz, 0.0), diag(nz, 0.0), upper(nz, 0.0), rhs(nz, 0.0);
  for (int k = 0; k < nz; ++k) {
    const double g_up = k > 0 ? skin.conductivity / (z[k] - z[k - 1]) : 0.0;
    const double g_down = k + 1 < nz ? skin.conductivity / (z[k + 1] - z[k]) : 0.0;
    const double volume = 0.5 * ((k > 0 ? z[k] - z[k - 1] : 0.0) + (k + 1 < nz ? z[k + 1] - z[k] : 0.0));
    const double perf = skin.perfusion_rate * rc * volume;
    if (k == nz - 1 && bottom == BottomBoundary::kClamped) {
      diag[k] = 1.0;
      rhs[k] = skin.core_T;
      continue;
    }
    lower[k] = -g_up;
    upper[k] = -g_down;
    diag[k] = g_up + g_down + perf;
    rhs[k] = perf * skin.core_T;
    if (k == 0) {
      diag[k] += skin.convection_h;
      rhs[k] += skin.convection_h * skin.ambient_T;
    }
  }
  for (int k = 1; k < nz; ++k) {
    const double m = lower[k] / diag[k - 1];
    diag[k] -= m * upper[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  std::vector<double> profile(nz);
  profile[nz - 1] = rhs[nz - 1] / diag[nz - 1];
  for (int k = nz - 2; k >= 0; --k) profile[k] = (rhs[k] - upper[k] * profile[k + 1]) / diag[k];

  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < spec.ny; ++j) {
      for (int i = 0; i < spec.nx; ++i) grid.at(i, j, k) = profile[k];
    }
  }
  return grid;
}

}  // namespace sonotherm
