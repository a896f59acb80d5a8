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

#ifndef SONOTHERM_GRID_IO_HPP
#define SONOTHERM_GRID_IO_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "sonotherm/field_grid.hpp"

namespace sonotherm {

/// printf "%.6g"; every exported number goes through this.
std::string format_number(double value);

/// Header `x_m,y_m,<value_name>`; one row per cell, x fastest. x and y are the cell center
/// projected onto the u and v axes (world x, y for an axis-aligned plane).
void write_grid_csv(const std::filesystem::path& path, const PlaneGridSpec& spec, const std::vector<double>& values,
                    const std::string& value_name);

void write_pressure_csv(const std::filesystem::path& path, const PlaneGridSpec& spec,
                        const std::vector<std::complex<double>>& values);

/**
 * Plain PGM (P2), maxval 65535, value = min + pixel * (max - min) / 65535. The first image row
 * is the largest v index. The scale is recorded in header comment lines:
 *   # quantity <name>
 *   # min <value>
 *   # max <value>
 */
void write_pgm(const std::filesystem::path& path, const PlaneGridSpec& spec, const std::vector<double>& values,
               const std::string& quantity);

/// Throws std::runtime_error with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace sonotherm

#endif  // SONOTHERM_GRID_IO_HPP
