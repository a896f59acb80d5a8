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

#ifndef SONOTHERM_FIELD_GRID_HPP
#define SONOTHERM_FIELD_GRID_HPP

#include <cstddef>
#include <vector>

#include "sonotherm/vec3.hpp"

namespace sonotherm {

/// Planar sampling lattice. Cell (ix, iy) is centered at origin + ix*dx*u + iy*dy*v.
struct PlaneGridSpec {
  Vec3 origin;
  Vec3 u_axis{1.0, 0.0, 0.0};
  Vec3 v_axis{0.0, 1.0, 0.0};
  int nx = 1;
  int ny = 1;
  double dx = 1e-3;
  double dy = 1e-3;

  /// nx x ny cells in the plane z = center.z, centered on `center`, axis-aligned.
  static PlaneGridSpec centered(const Vec3& center, int nx, int ny, double dx, double dy);

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix);
  }
  Vec3 cell_center(int ix, int iy) const { return origin + u_axis * (ix * dx) + v_axis * (iy * dy); }
  Vec3 normal() const { return cross(u_axis, v_axis); }

  bool operator==(const PlaneGridSpec&) const = default;
};

/// Values sampled on a PlaneGridSpec, x index fastest.
template <typename T>
struct FieldGrid {
  PlaneGridSpec spec;
  std::vector<T> values;

  const T& at(int ix, int iy) const { return values[spec.index(ix, iy)]; }
};

/// Location of the largest value on a grid.
struct GridPeak {
  int ix = 0;
  int iy = 0;
  double value = 0.0;
};

GridPeak find_peak(const PlaneGridSpec& spec, const std::vector<double>& values);

/**
 * Width of the contiguous run of cells with value >= level through (ix, iy),
 * along u (first) and v (second), in meters. A run that reaches the grid edge
 * is measured up to the edge.
 */
struct LevelWidths {
  double along_u = 0.0;
  double along_v = 0.0;
  bool touches_edge = false;
  double mean() const { return 0.5 * (along_u + along_v); }
};

LevelWidths level_widths(const PlaneGridSpec& spec, const std::vector<double>& values, int ix, int iy,
                         double level);

/// Strict 8-neighbour local maxima whose value is >= min_value.
std::vector<GridPeak> local_maxima(const PlaneGridSpec& spec, const std::vector<double>& values,
                                   double min_value);

}  // namespace sonotherm

#endif  // SONOTHERM_FIELD_GRID_HPP
