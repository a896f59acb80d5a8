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

#ifndef SONOTHERM_GEOMETRY_HPP
#define SONOTHERM_GEOMETRY_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sonotherm/vec3.hpp"

namespace sonotherm {

/// One piston element in world coordinates.
struct Transducer {
  Vec3 position;                 ///< m
  Vec3 normal{0.0, 0.0, 1.0};    ///< unit radiation axis
  double radius = 4.5e-3;        ///< effective piston radius, m
  double source_strength = 1.0;  ///< on-axis pressure at 1 m at full drive, Pa*m
};

struct GridCell {
  int row = 0;
  int col = 0;
  auto operator<=>(const GridCell&) const = default;
};

/**
 * Rectangular array unit. Element (row, col) sits at (row * pitch, col * pitch, 0)
 * in the unit frame; the unit frame is rotated by `orientation` and then translated
 * to `origin`. Elements radiate along the unit frame's +z axis.
 */
struct ArrayUnit {
  Vec3 origin;
  Rotation orientation;
  int rows = 18;
  int cols = 14;
  double pitch = 10.16e-3;
  std::vector<GridCell> omitted;
  double radius = 4.5e-3;
  double source_strength = 1.0;

  /// Throws ValidationError naming `path` + key on the first violated invariant.
  void validate(const std::string& path = "unit") const;

  std::size_t element_count() const;

  /// Unit-frame element positions, row-major, omitted cells skipped.
  std::vector<Vec3> local_positions() const;

  /// World-frame transducers in the same order as local_positions().
  std::vector<Transducer> transducers() const;
};

/// 18x14 unit at 10.16 mm pitch with the three mounting-hole cells omitted (249 elements).
ArrayUnit default_unit(const Vec3& origin = {}, const Rotation& orientation = Rotation::identity());

/**
 * Immutable collection of array units plus an enabled mask.
 *
 * Transducers are ordered unit-major, row-major within a unit. Field sums run over
 * enabled_transducers() in that order.
 */
class ArrayAssembly {
 public:
  explicit ArrayAssembly(std::vector<ArrayUnit> units, std::vector<bool> enabled = {});

  const std::vector<ArrayUnit>& units() const { return units_; }
  const std::vector<bool>& enabled() const { return enabled_; }
  std::vector<std::size_t> enabled_unit_indices() const;

  /// Every transducer, including those of disabled units.
  const std::vector<Transducer>& all_transducers() const { return all_; }
  /// Transducers of enabled units only; this is what a DriveVector indexes.
  const std::vector<Transducer>& enabled_transducers() const { return active_; }
  std::size_t enabled_count() const { return active_.size(); }

  /// FNV-1a over a canonical byte dump of the enabled geometry.
  std::uint64_t hash() const;

 private:
  std::vector<ArrayUnit> units_;
  std::vector<bool> enabled_;
  std::vector<Transducer> all_;
  std::vector<Transducer> active_;
};

/// Copy of `assembly` with only `unit_indices` enabled.
ArrayAssembly enable_subset(const ArrayAssembly& assembly, std::span<const std::size_t> unit_indices);

}  // namespace sonotherm

#endif  // SONOTHERM_GEOMETRY_HPP
