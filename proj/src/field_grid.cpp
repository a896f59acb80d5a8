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

#include "sonotherm/field_grid.hpp"

#include <cmath>

#include "sonotherm/error.hpp"

namespace sonotherm {

PlaneGridSpec PlaneGridSpec::centered(const Vec3& center, int nx, int ny, double dx, double dy) {
  PlaneGridSpec spec;
  spec.nx = nx;
  spec.ny = ny;
  spec.dx = dx;
  spec.dy = dy;
  spec.origin = center - spec.u_axis * (0.5 * (nx - 1) * dx) - spec.v_axis * (0.5 * (ny - 1) * dy);
  return spec;
}

void PlaneGridSpec::validate() const {
  if (nx < 1 || ny < 1) throw ValidationError("grid needs nx, ny >= 1", "grid");
  if (!(dx > 0.0) || !(dy > 0.0)) throw ValidationError("grid spacing must be > 0", "grid");
  if (std::abs(norm(u_axis) - 1.0) > 1e-9 || std::abs(norm(v_axis) - 1.0) > 1e-9 ||
      std::abs(dot(u_axis, v_axis)) > 1e-9) {
    throw ValidationError("grid axes must be orthonormal", "grid");
  }
}

GridPeak find_peak(const PlaneGridSpec& spec, const std::vector<double>& values) {
  GridPeak best{0, 0, values.empty() ? 0.0 : values.front()};
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double v = values[spec.index(ix, iy)];
      if (v > best.value) best = {ix, iy, v};
    }
  }
  return best;
}

LevelWidths level_widths(const PlaneGridSpec& spec, const std::vector<double>& values, int ix, int iy,
                         double level) {
  LevelWidths w;
  // Counts cells >= level on a line through the start cell; get(n) reads the n-th cell on it.
  auto run = [&](int start, int count, auto get) {
    int lo = start;
    int hi = start;
    while (lo > 0 && get(lo - 1) >= level) --lo;
    while (hi < count - 1 && get(hi + 1) >= level) ++hi;
    if (lo == 0 || hi == count - 1) w.touches_edge = true;
    return hi - lo + 1;
  };
  w.along_u = run(ix, spec.nx, [&](int n) { return values[spec.index(n, iy)]; }) * spec.dx;
  w.along_v = run(iy, spec.ny, [&](int n) { return values[spec.index(ix, n)]; }) * spec.dy;
  return w;
}

std::vector<GridPeak> local_maxima(const PlaneGridSpec& spec, const std::vector<double>& values,
                                   double min_value) {
  std::vector<GridPeak> out;
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double v = values[spec.index(ix, iy)];
      if (v < min_value) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = ix + dx;
          const int jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= spec.nx || jy >= spec.ny) continue;
          if (values[spec.index(jx, jy)] >= v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) out.push_back({ix, iy, v});
    }
  }
  return out;
}

}  // namespace sonotherm
