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

#include <doctest.h>

#include <random>

#include "sonotherm/error.hpp"
#include "sonotherm/modulation.hpp"

using namespace sonotherm;

TEST_SUITE("modulation") {
  TEST_CASE("square wave windows") {
    const Envelope env = Envelope::square(50.0, 0.9);
    CHECK(envelope_value(env, 0.0) == 1.0);
    CHECK(envelope_value(env, 0.010) == 1.0);
    CHECK(envelope_value(env, 0.017999) == 1.0);
    CHECK(envelope_value(env, 0.019) == 0.0);
    CHECK(envelope_value(env, 0.020) == 1.0);
    CHECK(envelope_value(env, 0.038) == 0.0);  // exactly at the off edge of the second period
  }

  TEST_CASE("sampled pattern at half duty") {
    const Envelope env = Envelope::square(50.0, 0.5);
    const std::vector<double> s = sample_envelope(env, 0.005, 0.02);
    CHECK(s == std::vector<double>{1, 1, 0, 0, 1});
  }

  TEST_CASE("static drive is always on") {
    const std::vector<double> s = sample_envelope(Envelope::static_drive(), 0.01, 1.0);
    CHECK(s.size() == 101);
    for (double v : s) CHECK(v == 1.0);
    CHECK(mean_intensity_factor(Envelope::static_drive()) == 1.0);
  }

  TEST_CASE("duty limits") {
    for (double t : {0.0, 0.0123, 0.019, 0.5}) {
      CHECK(envelope_value(Envelope::square(50.0, 1.0), t) == envelope_value(Envelope::static_drive(), t));
      CHECK(envelope_value(Envelope::square(50.0, 0.0), t) == 0.0);
    }
    CHECK(mean_intensity_factor(Envelope::square(50.0, 0.9)) == 0.9);
  }

  TEST_CASE("long-run on fraction matches the duty") {
    const Envelope env = Envelope::square(50.0, 0.9);
    const double dt = 1e-4 * std::numbers::sqrt2;  // irrational relative to the period
    const int n = 1000000;
    double on = 0.0;
    for (int i = 0; i < n; ++i) on += envelope_value(env, i * dt);
    CHECK(std::abs(on / n - 0.9) <= 1e-3);
  }

  TEST_CASE("periodicity") {
    const Envelope env = Envelope::square(37.0, 0.3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double t = u(rng);
      CHECK(envelope_value(env, t) == envelope_value(env, t + 4.0 / 37.0));
    }
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(Envelope::square(50.0, 1.5).validate(), ValidationError);
    CHECK_THROWS_AS(Envelope::square(50.0, -0.1).validate(), ValidationError);
    CHECK_THROWS_AS(Envelope::square(0.0, 0.5).validate(), ValidationError);
    try {
      Envelope::square(50.0, 1.5).validate();
    } catch (const ValidationError& e) {
      CHECK(e.path() == "envelope.duty");
    }
    CHECK_THROWS_AS(sample_envelope(Envelope::static_drive(), 0.0, 1.0), ValidationError);
    CHECK_NOTHROW(Envelope::square(50.0, 0.9).validate());
  }
}
