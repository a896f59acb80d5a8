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

#include "sonotherm/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sonotherm/error.hpp"

namespace sonotherm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Contribution of one element at distance d (> 0) along `r`, without drive.
std::complex<double> element_term(const Transducer& t, double k, double attenuation, const Vec3& r, double d) {
  const double cos_theta = std::clamp(dot(t.normal, r) / d, -1.0, 1.0);
  const double magnitude =
      t.source_strength * directivity(k * t.radius, std::acos(cos_theta)) * std::exp(-attenuation * d) / d;
  return std::polar(magnitude, k * d);
}

}  // namespace

void MediumParams::validate(const std::string& path) const {
  if (!(sound_speed > 0.0)) throw ValidationError("must be > 0", path + ".sound_speed");
  if (!(density > 0.0)) throw ValidationError("must be > 0", path + ".density");
  if (!(frequency > 0.0)) throw ValidationError("must be > 0", path + ".frequency");
  if (!(attenuation >= 0.0)) throw ValidationError("must be >= 0", path + ".attenuation");
}

DriveVector DriveVector::scaled(double factor) const {
  DriveVector out = *this;
  for (double& a : out.amplitude) a *= factor;
  return out;
}

double directivity(double ka, double theta) {
  const double x = std::abs(ka * std::sin(theta));
  if (x < 1e-6) return 1.0 - x * x / 8.0;
  return 2.0 * std::cyl_bessel_j(1.0, x) / x;
}

DriveVector focus_phases(const ArrayAssembly& assembly, const MediumParams& medium, const Vec3& focal_point) {
  const double k = medium.wavenumber();
  const auto& elements = assembly.enabled_transducers();
  DriveVector drive;
  drive.amplitude.assign(elements.size(), 1.0);
  drive.phase.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double d = distance(focal_point, elements[i].position);
    if (d < elements[i].radius) {
      throw ValidationError("focus lies inside element " + std::to_string(i) + " (distance " +
                                std::to_string(d) + " m < radius)",
                            "drive.focus");
    }
    double phase = std::fmod(-k * d, kTwoPi);
    if (phase < 0.0) phase += kTwoPi;
    if (phase >= kTwoPi) phase -= kTwoPi;
    drive.phase[i] = phase;
  }
  return drive;
}

std::complex<double> pressure_at(const ArrayAssembly& assembly, const MediumParams& medium,
                                 const DriveVector& drive, const Vec3& point) {
  const auto& elements = assembly.enabled_transducers();
  if (drive.amplitude.size() != elements.size() || drive.phase.size() != elements.size()) {
    throw ValidationError("drive length " + std::to_string(drive.amplitude.size()) + " != enabled element count " +
                              std::to_string(elements.size()),
                          "drive");
  }
  const double k = medium.wavenumber();
  std::complex<double> p{0.0, 0.0};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double a = drive.amplitude[i];
    if (a == 0.0) continue;
    const Vec3 r = point - elements[i].position;
    const double d = norm(r);
    if (d < 1e-9) throw ValidationError("field point coincides with element " + std::to_string(i), "point");
    p += a * element_term(elements[i], k, medium.attenuation, r, d) * std::polar(1.0, drive.phase[i]);
  }
  return p;
}

double intensity_from_pressure(std::complex<double> p, const MediumParams& medium) {
  return std::norm(p) / (2.0 * medium.impedance());
}

double intensity_at(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                    const Vec3& point) {
  return intensity_from_pressure(pressure_at(assembly, medium, drive, point), medium);
}

PressureGrid pressure_grid(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                           const PlaneGridSpec& spec) {
  spec.validate();
  PressureGrid grid{spec, std::vector<std::complex<double>>(spec.size())};
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      try {
        grid.values[spec.index(ix, iy)] = pressure_at(assembly, medium, drive, spec.cell_center(ix, iy));
      } catch (const ValidationError& e) {
        throw ValidationError(e.message(), "grid cell (" + std::to_string(ix) + ", " + std::to_string(iy) + ")");
      }
    }
  }
  return grid;
}

IntensityGrid to_intensity(const PressureGrid& pressure, const MediumParams& medium) {
  IntensityGrid out{pressure.spec, std::vector<double>(pressure.values.size())};
  std::transform(pressure.values.begin(), pressure.values.end(), out.values.begin(),
                 [&](std::complex<double> p) { return intensity_from_pressure(p, medium); });
  return out;
}

IntensityGrid intensity_grid(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                             const PlaneGridSpec& spec) {
  return to_intensity(pressure_grid(assembly, medium, drive, spec), medium);
}

FocalMetrics focal_metrics(const IntensityGrid& grid, const Vec3& focus) {
  const PlaneGridSpec& spec = grid.spec;
  spec.validate();
  const double off_plane = std::abs(dot(focus - spec.origin, spec.normal()));
  if (off_plane > 1e-6) {
    throw ValidationError("focus is " + std::to_string(off_plane) + " m off the grid plane", "focus");
  }
  const GridPeak peak = find_peak(spec, grid.values);
  if (peak.ix == 0 || peak.iy == 0 || peak.ix == spec.nx - 1 || peak.iy == spec.ny - 1) {
    throw ValidationError("intensity peak on the grid boundary; grid too small", "grid");
  }
  const LevelWidths w = level_widths(spec, grid.values, peak.ix, peak.iy, 0.25 * peak.value);
  FocalMetrics m;
  m.peak = peak.value;
  m.peak_location = spec.cell_center(peak.ix, peak.iy);
  m.width_u = w.along_u;
  m.width_v = w.along_v;
  m.width_6db = w.mean();
  return m;
}

}  // namespace sonotherm
