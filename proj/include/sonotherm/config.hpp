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

#ifndef SONOTHERM_CONFIG_HPP
#define SONOTHERM_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonotherm/analysis.hpp"
#include "sonotherm/hash.hpp"
#include "sonotherm/thermal.hpp"

namespace sonotherm {

struct DriveSettings {
  Vec3 focus{0.0, 0.0, 0.296};
  double amplitude = 1.0;  ///< common amplitude applied on top of the focusing phases
};

/**
 * Fully resolved run configuration. JSON layout:
 *
 *   medium        {sound_speed, density, attenuation, frequency}
 *   units         [{origin, rotation, rows, cols, pitch, omitted, radius, source_strength}]
 *   enabled       [unit indices]            (default: all)
 *   drive         {focus, amplitude}
 *   envelope      {kind: static} | {kind: square, freq_hz, duty}
 *   skin          SkinModel fields
 *   thermal_grid  ThermalGridSpec fields
 *   solver        {envelope_mode, output_interval, resolved_dt, safety, initial_state, bottom}
 *   probe         [x, y, z]                 (default: drive.focus)
 *   perception    {warm_threshold, acclimation_T}
 *
 * `rotation` is a quaternion [w, x, y, z] or {axis: [x, y, z], angle: rad}. Every section but
 * `units` is optional; unknown keys are rejected.
 */
struct Config {
  MediumParams medium;
  std::vector<ArrayUnit> units;
  std::vector<std::size_t> enabled;
  DriveSettings drive;
  Envelope envelope;
  SkinModel skin;
  ThermalGridSpec thermal_grid;
  SolverSettings solver;
  std::optional<Vec3> probe;
  PerceptionModel perception;

  ArrayAssembly assembly() const;
  Vec3 probe_point() const { return probe.value_or(drive.focus); }
  /// Focus phases for drive.focus, amplitudes drive.amplitude; skin patch centered on the focus.
  StimulusSetup stimulus_setup() const;
};

/// Parses and validates; ValidationError carries the dotted key path of the problem.
Config parse_config(const nlohmann::json& doc);

/// ValidationError with path "<file>" for a missing or unparsable file.
nlohmann::json read_json_file(const std::filesystem::path& path);

Config load_config(const std::filesystem::path& path);

/// Assembly section of a configuration file.
ArrayAssembly load_assembly(const std::filesystem::path& path);

/// Canonical JSON for a config; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const Config& config);

/// Applies "a.b.0.c=value" to `doc`. The value is parsed as JSON, falling back to a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace sonotherm

#endif  // SONOTHERM_CONFIG_HPP
