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

#ifndef SONOTHERM_ACOUSTICS_HPP
#define SONOTHERM_ACOUSTICS_HPP

#include <complex>
#include <numbers>
#include <vector>

#include "sonotherm/field_grid.hpp"
#include "sonotherm/geometry.hpp"

namespace sonotherm {

/// Propagation medium (ambient air by default) and carrier frequency.
struct MediumParams {
  double sound_speed = 343.0;  ///< m/s
  double density = 1.204;      ///< kg/m^3
  double attenuation = 0.12;   ///< amplitude attenuation at the carrier, Np/m
  double frequency = 40e3;     ///< Hz

  void validate(const std::string& path = "medium") const;
  double wavenumber() const { return 2.0 * std::numbers::pi * frequency / sound_speed; }
  double wavelength() const { return sound_speed / frequency; }
  double impedance() const { return density * sound_speed; }
};

/// Per-enabled-transducer drive: amplitude in [0, 1] and phase in [0, 2*pi).
struct DriveVector {
  std::vector<double> amplitude;
  std::vector<double> phase;

  std::size_t size() const { return amplitude.size(); }
  DriveVector scaled(double factor) const;
};

/// Baffled-piston far-field factor 2*J1(x)/x with x = ka*sin(theta); 1 on axis.
double directivity(double ka, double theta);

/// Phases that bring every enabled element into phase at `focal_point`; amplitudes 1.
/// Throws ValidationError if the focus lies within one radius of an element.
DriveVector focus_phases(const ArrayAssembly& assembly, const MediumParams& medium, const Vec3& focal_point);

/// Complex pressure amplitude (Pa) at `point`, summed over enabled elements in index order.
std::complex<double> pressure_at(const ArrayAssembly& assembly, const MediumParams& medium,
                                 const DriveVector& drive, const Vec3& point);

/// Plane-wave time-averaged intensity |p|^2 / (2 rho c), W/m^2.
double intensity_at(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                    const Vec3& point);

double intensity_from_pressure(std::complex<double> p, const MediumParams& medium);

using PressureGrid = FieldGrid<std::complex<double>>;
using IntensityGrid = FieldGrid<double>;

/// Pressure at every cell center of `spec`; each cell is an independent pressure_at call.
PressureGrid pressure_grid(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                           const PlaneGridSpec& spec);

IntensityGrid intensity_grid(const ArrayAssembly& assembly, const MediumParams& medium, const DriveVector& drive,
                             const PlaneGridSpec& spec);

IntensityGrid to_intensity(const PressureGrid& pressure, const MediumParams& medium);

struct FocalMetrics {
  double peak = 0.0;  ///< W/m^2
  Vec3 peak_location;
  double width_6db = 0.0;  ///< mean of the two in-plane -6 dB (I >= peak/4) diameters, m
  double width_u = 0.0;
  double width_v = 0.0;
};

/// Throws ValidationError if `focus` is off the grid plane or the peak sits on the grid boundary.
FocalMetrics focal_metrics(const IntensityGrid& grid, const Vec3& focus);

}  // namespace sonotherm

#endif  // SONOTHERM_ACOUSTICS_HPP
