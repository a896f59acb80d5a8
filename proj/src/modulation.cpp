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

#include "sonotherm/modulation.hpp"

#include <cmath>

#include "sonotherm/error.hpp"

namespace sonotherm {

namespace {
// Phase (in periods) within this distance of a window edge is snapped onto the edge.
constexpr double kEdgeSnap = 1e-9;
}  // namespace

void Envelope::validate(const std::string& path) const {
  if (kind == Kind::kStatic) return;
  if (!(mod_frequency > 0.0) || !std::isfinite(mod_frequency)) {
    throw ValidationError("must be > 0", path + ".freq_hz");
  }
  if (!(duty >= 0.0 && duty <= 1.0)) throw ValidationError("must be within [0, 1]", path + ".duty");
}

std::string Envelope::name() const { return kind == Kind::kStatic ? "static" : "square"; }

double envelope_value(const Envelope& env, double t) {
  if (env.kind == Envelope::Kind::kStatic || env.duty >= 1.0) return 1.0;
  if (env.duty <= 0.0) return 0.0;
  const double periods = t * env.mod_frequency;
  double frac = periods - std::floor(periods);
  if (frac > 1.0 - kEdgeSnap) frac = 0.0;
  return frac < env.duty - kEdgeSnap ? 1.0 : 0.0;
}

double mean_intensity_factor(const Envelope& env) {
  if (env.kind == Envelope::Kind::kStatic) return 1.0;
  return env.duty;
}

std::vector<double> sample_envelope(const Envelope& env, double dt, double duration) {
  if (!(dt > 0.0)) throw ValidationError("must be > 0", "dt");
  if (!(duration > 0.0)) throw ValidationError("must be > 0", "duration");
  const auto n = static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = envelope_value(env, static_cast<double>(i) * dt);
  return out;
}

}  // namespace sonotherm
