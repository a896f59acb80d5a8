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

#ifndef SONOTHERM_ANALYSIS_HPP
#define SONOTHERM_ANALYSIS_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonotherm/thermal.hpp"

namespace sonotherm {

/// Warmth detection threshold for the palm.
struct PerceptionModel {
  double warm_threshold = 0.2;  ///< deg C
  double acclimation_T = 33.0;  ///< deg C

  void validate(const std::string& path = "perception") const;
};

/// Reference skin-temperature measurements the simulator is compared against, deg C.
struct ReferenceMeasurements {
  double static_5s = 5.4;
  double modulated_5s = 4.5;
  double static_30s = 8.6;
  double modulated_30s = 5.4;
  double warm_threshold = 0.2;
};

nlohmann::json to_json(const ReferenceMeasurements& ref);

/// First time the series reaches the threshold, linearly interpolated; nullopt if never.
std::optional<double> time_to_threshold(std::span<const double> times, std::span<const double> delta_t,
                                        double threshold);
std::optional<double> time_to_threshold(const SimulationRun& run, const PerceptionModel& model);

struct ComparisonRow {
  double time = 0.0;
  double delta_t_a = 0.0;
  double delta_t_b = 0.0;
  std::optional<double> ratio;  ///< b / a, omitted when |a| < 1e-6
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  nlohmann::json to_json() const;
};

/// Throws ValidationError when the runs differ in probe or output times.
ComparisonReport compare_runs(const SimulationRun& a, const SimulationRun& b, std::span<const double> at_times);

/// "map_30.0s" style stem for a snapshot time.
std::string snapshot_stem(double time);

/**
 * Writes timeseries.csv, map_<t>s.csv and map_<t>s.pgm per snapshot, and meta.json into
 * `out_dir` (created if needed). `extra_meta` is merged into meta.json. Returns the paths
 * written. Identical runs produce byte-identical files.
 */
std::vector<std::filesystem::path> export_run(const SimulationRun& run, const std::filesystem::path& out_dir,
                                              const nlohmann::json& extra_meta = nlohmann::json::object());

nlohmann::json run_metadata_json(const SimulationRun& run);

/// Reads back a timeseries.csv written by export_run.
void read_timeseries_csv(const std::filesystem::path& path, std::vector<double>& times,
                         std::vector<double>& delta_t);

/// Shape of a surface map: dominant peak and contour width at a fraction of it.
struct MapShape {
  GridPeak peak;
  Vec3 peak_location;
  double contour_width = 0.0;  ///< mean diameter of the >= level*peak region through the peak, m
  std::size_t competing_maxima = 0;  ///< other local maxima above half the peak
};

MapShape map_shape(const PlaneGridSpec& spec, const std::vector<double>& values, double level);

}  // namespace sonotherm

#endif  // SONOTHERM_ANALYSIS_HPP
