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

#ifndef SONOTHERM_MODULATION_HPP
#define SONOTHERM_MODULATION_HPP

#include <string>
#include <vector>

namespace sonotherm {

/// Binary amplitude envelope applied to the carrier. Square envelopes are "on" at t = 0.
struct Envelope {
  enum class Kind { kStatic, kSquare };

  Kind kind = Kind::kStatic;
  double mod_frequency = 0.0;  ///< Hz, square only
  double duty = 1.0;           ///< fraction of each period that is on, square only

  static Envelope static_drive() { return {}; }
  static Envelope square(double mod_frequency, double duty) { return {Kind::kSquare, mod_frequency, duty}; }

  void validate(const std::string& path = "envelope") const;
  std::string name() const;
  bool operator==(const Envelope&) const = default;
};

/// 0 or 1. Square: on while (t mod T) < duty*T, with a 1e-9-period snap at window edges.
double envelope_value(const Envelope& env, double t);

/// Period average of envelope_value^2: 1 for static, duty for square.
double mean_intensity_factor(const Envelope& env);

/// envelope_value at t = 0, dt, 2dt, ... up to and including `duration`.
std::vector<double> sample_envelope(const Envelope& env, double dt, double duration);

}  // namespace sonotherm

#endif  // SONOTHERM_MODULATION_HPP
