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

#include "sonotherm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <string>

#include "sonotherm/error.hpp"
#include "sonotherm/hash.hpp"

namespace sonotherm {

void ArrayUnit::validate(const std::string& path) const {
  if (rows < 1) throw ValidationError("must be >= 1", path + ".rows");
  if (cols < 1) throw ValidationError("must be >= 1", path + ".cols");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw ValidationError("must be > 0", path + ".pitch");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("must be > 0", path + ".radius");
  if (!(source_strength >= 0.0) || !std::isfinite(source_strength)) {
    throw ValidationError("must be >= 0", path + ".source_strength");
  }
  const double qn = std::sqrt(orientation.w * orientation.w + orientation.x * orientation.x +
                              orientation.y * orientation.y + orientation.z * orientation.z);
  if (std::abs(qn - 1.0) > 1e-9) throw ValidationError("quaternion is not unit length", path + ".rotation");

  std::set<GridCell> seen;
  for (std::size_t i = 0; i < omitted.size(); ++i) {
    const GridCell& c = omitted[i];
    const std::string cell_path = path + ".omitted[" + std::to_string(i) + "]";
    if (c.row < 0 || c.row >= rows || c.col < 0 || c.col >= cols) {
      throw ValidationError("cell outside the rows x cols grid", cell_path);
    }
    if (!seen.insert(c).second) throw ValidationError("duplicate omitted cell", cell_path);
  }
}

std::size_t ArrayUnit::element_count() const {
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) - omitted.size();
}

std::vector<Vec3> ArrayUnit::local_positions() const {
  const std::set<GridCell> skip(omitted.begin(), omitted.end());
  std::vector<Vec3> out;
  out.reserve(element_count());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (skip.contains(GridCell{r, c})) continue;
      out.push_back({r * pitch, c * pitch, 0.0});
    }
  }
  return out;
}

std::vector<Transducer> ArrayUnit::transducers() const {
  const Vec3 normal = normalized(orientation.apply({0.0, 0.0, 1.0}));
  std::vector<Transducer> out;
  for (const Vec3& p : local_positions()) {
    out.push_back({origin + orientation.apply(p), normal, radius, source_strength});
  }
  return out;
}

ArrayUnit default_unit(const Vec3& origin, const Rotation& orientation) {
  ArrayUnit unit;
  unit.origin = origin;
  unit.orientation = orientation;
  unit.omitted = {{1, 1}, {2, 1}, {16, 1}};
  return unit;
}

ArrayAssembly::ArrayAssembly(std::vector<ArrayUnit> units, std::vector<bool> enabled)
    : units_(std::move(units)), enabled_(std::move(enabled)) {
  if (units_.empty()) throw ValidationError("at least one unit is required", "units");
  if (enabled_.empty()) enabled_.assign(units_.size(), true);
  if (enabled_.size() != units_.size()) throw ValidationError("mask length differs from unit count", "enabled");
  if (std::none_of(enabled_.begin(), enabled_.end(), [](bool b) { return b; })) {
    throw ValidationError("no enabled units", "enabled");
  }
  for (std::size_t u = 0; u < units_.size(); ++u) {
    units_[u].validate("units[" + std::to_string(u) + "]");
    for (const Transducer& t : units_[u].transducers()) {
      all_.push_back(t);
      if (enabled_[u]) active_.push_back(t);
    }
  }
}

std::vector<std::size_t> ArrayAssembly::enabled_unit_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < enabled_.size(); ++u) {
    if (enabled_[u]) out.push_back(u);
  }
  return out;
}

std::uint64_t ArrayAssembly::hash() const {
  std::uint64_t h = fnv1a64({});
  auto mix = [&h](double v) {
    char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    h = fnv1a64(std::string_view(bytes, sizeof(double)), h);
  };
  for (const Transducer& t : active_) {
    for (double v : {t.position.x, t.position.y, t.position.z, t.normal.x, t.normal.y, t.normal.z, t.radius,
                     t.source_strength}) {
      mix(v);
    }
  }
  return h;
}

ArrayAssembly enable_subset(const ArrayAssembly& assembly, std::span<const std::size_t> unit_indices) {
  std::vector<bool> mask(assembly.units().size(), false);
  for (const std::size_t idx : unit_indices) {
    if (idx >= mask.size()) {
      throw ValidationError("unit index " + std::to_string(idx) + " out of range (have " +
                                std::to_string(mask.size()) + " units)",
                            "enabled");
    }
    mask[idx] = true;
  }
  return ArrayAssembly(assembly.units(), std::move(mask));
}

}  // namespace sonotherm
