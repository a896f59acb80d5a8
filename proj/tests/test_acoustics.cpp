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

#include "oracles.hpp"
#include "sonotherm/acoustics.hpp"
#include "sonotherm/error.hpp"

using namespace sonotherm;

namespace {

constexpr double kPi = std::numbers::pi;

ArrayAssembly single_element(const Vec3& position, const Vec3& normal = {0, 0, 1}, double source_strength = 1.0) {
  ArrayUnit u;
  u.rows = 1;
  u.cols = 1;
  u.omitted.clear();
  u.origin = position;
  u.source_strength = source_strength;
  // Rotate +z onto the requested normal.
  const Vec3 z{0, 0, 1};
  const Vec3 axis = cross(z, normal);
  if (norm(axis) > 1e-12) u.orientation = Rotation::from_axis_angle(axis, std::acos(dot(z, normalized(normal))));
  return ArrayAssembly({u});
}

ArrayAssembly six_units() {
  std::vector<ArrayUnit> units;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 2; ++col) {
      units.push_back(default_unit({-0.202 + 0.232 * col, -0.217 + 0.1514 * row, 0.0}));
    }
  }
  return ArrayAssembly(units);
}

// |p| at a focus under perfect phasing: sum of element magnitudes, with the piston factor
// taken from the J1 series.
double direct_magnitude_sum(const ArrayAssembly& a, const MediumParams& m, const Vec3& focus) {
  double sum = 0.0;
  const double k = 2.0 * kPi * m.frequency / m.sound_speed;
  for (const Transducer& t : a.enabled_transducers()) {
    const Vec3 r = focus - t.position;
    const double d = norm(r);
    const double sin_theta = norm(cross(t.normal, r)) / d;
    const double x = k * t.radius * sin_theta;
    const double dir = x < 1e-8 ? 1.0 : 2.0 * oracle::bessel_j1_series(x) / x;
    sum += t.source_strength * dir * std::exp(-m.attenuation * d) / d;
  }
  return sum;
}

double wrapped(double phase) { return std::min(phase, 2.0 * kPi - phase); }

}  // namespace

TEST_SUITE("acoustics") {
  TEST_CASE("focus phase is zero at an integer number of wavelengths") {
    const MediumParams air;
    for (int m : {1, 7, 35}) {
      const ArrayAssembly a = single_element({0, 0, 0});
      const DriveVector d = focus_phases(a, air, {0, 0, m * air.wavelength()});
      CHECK(wrapped(d.phase[0]) < 1e-9);
    }
  }

  TEST_CASE("equidistant elements receive identical phases") {
    const MediumParams air;
    ArrayUnit u = default_unit({-0.05, 0.0, 0.0});
    u.rows = 2;
    u.cols = 1;
    u.pitch = 0.1;
    u.omitted.clear();
    const ArrayAssembly a({u});
    const DriveVector d = focus_phases(a, air, {0.0, 0.0, 0.2});
    CHECK(d.phase[0] == d.phase[1]);
    for (double p : d.phase) CHECK((p >= 0.0 && p < 2.0 * kPi));
  }

  TEST_CASE("focus inside an element is rejected") {
    const MediumParams air;
    const ArrayAssembly a = single_element({0, 0, 0});
    CHECK_THROWS_AS(focus_phases(a, air, {0, 0, 1e-3}), ValidationError);
    DriveVector d{{1.0}, {0.0}};
    CHECK_THROWS_AS(pressure_at(a, air, d, {0, 0, 0}), ValidationError);
  }

  TEST_CASE("zero drive gives exactly zero pressure") {
    const MediumParams air;
    const ArrayAssembly a = six_units();
    const DriveVector d = focus_phases(a, air, {0, 0, 0.296}).scaled(0.0);
    CHECK(pressure_at(a, air, d, {0, 0, 0.296}) == std::complex<double>(0.0, 0.0));
    CHECK(intensity_at(a, air, d, {0.01, 0, 0.296}) == 0.0);
  }

  TEST_CASE("single element on axis follows 1/d") {
    MediumParams air;
    air.attenuation = 0.0;
    const ArrayAssembly a = single_element({0, 0, 0});
    const DriveVector d{{1.0}, {0.0}};
    const double p = std::abs(pressure_at(a, air, d, {0, 0, 0.296}));
    CHECK(p == doctest::Approx(1.0 / 0.296).epsilon(1e-12));
    CHECK(p == doctest::Approx(3.3784).epsilon(1e-4));
  }

  TEST_CASE("intensity from pressure") {
    MediumParams air;
    air.attenuation = 0.0;
    const ArrayAssembly a = single_element({0, 0, 0});
    const double i = intensity_at(a, air, DriveVector{{1.0}, {0.0}}, {0, 0, 0.296});
    const double expected = (1.0 / 0.296) * (1.0 / 0.296) / (2.0 * 1.204 * 343.0);
    CHECK(i == doctest::Approx(expected).epsilon(1e-12));
    CHECK(i == doctest::Approx(0.01382).epsilon(1e-3));
    const double i2 = intensity_at(a, air, DriveVector{{0.5}, {0.0}}, {0.02, 0.01, 0.2});
    const double i1 = intensity_at(a, air, DriveVector{{1.0}, {0.0}}, {0.02, 0.01, 0.2});
    CHECK(i1 == doctest::Approx(4.0 * i2).epsilon(1e-12));
  }

  TEST_CASE("focused pressure equals the direct magnitude sum") {
    const MediumParams air;
    const ArrayAssembly a = six_units();
    const Vec3 focus{0.0, 0.0, 0.296};
    const double p = std::abs(pressure_at(a, air, focus_phases(a, air, focus), focus));
    CHECK(std::abs(p / direct_magnitude_sum(a, air, focus) - 1.0) < 1e-9);
  }

  TEST_CASE("coherent sum beats random phases") {
    const MediumParams air;
    const ArrayAssembly a({default_unit({-0.086, -0.066, 0.0})});
    const Vec3 focus{0.01, -0.02, 0.25};
    const DriveVector best = focus_phases(a, air, focus);
    const double p_best = std::abs(pressure_at(a, air, best, focus));
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
      DriveVector d = best;
      for (double& p : d.phase) p = phase(rng);
      CHECK(std::abs(pressure_at(a, air, d, focus)) <= p_best);
    }
  }

  TEST_CASE("directivity") {
    CHECK(directivity(3.3, 0.0) == 1.0);
    const double zero = oracle::bessel_j1_root(3.0, 4.5);
    CHECK(zero == doctest::Approx(3.8317).epsilon(1e-4));
    const double ka = 5.0;
    const double theta = std::asin(zero / ka);
    CHECK(std::abs(directivity(ka, theta)) < 1e-4);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2);
    for (int i = 0; i < 100; ++i) {
      const double t = ang(rng);
      CHECK(directivity(3.3, t) == directivity(3.3, -t));
      const double x = 3.3 * std::abs(std::sin(t));
      if (x > 1e-6) CHECK(directivity(3.3, t) == doctest::Approx(2.0 * oracle::bessel_j1_series(x) / x).epsilon(1e-10));
    }
  }

  TEST_CASE("field grid matches per-point evaluation") {
    const MediumParams air;
    const ArrayAssembly a = six_units();
    const DriveVector d = focus_phases(a, air, {0, 0, 0.296});
    const Vec3 q{0.003, -0.004, 0.296};
    const PressureGrid one = pressure_grid(a, air, d, PlaneGridSpec::centered(q, 1, 1, 1e-3, 1e-3));
    CHECK(one.values[0] == pressure_at(a, air, d, q));
    CHECK(intensity_grid(a, air, d, PlaneGridSpec::centered(q, 1, 1, 1e-3, 1e-3)).values[0] ==
          intensity_at(a, air, d, q));
  }

  TEST_CASE("symmetric array gives a symmetric field") {
    MediumParams air;
    ArrayUnit u = default_unit({-0.0508, -0.0508, 0.0});
    u.rows = 11;
    u.cols = 11;
    u.omitted.clear();
    const ArrayAssembly a({u});
    const DriveVector d = focus_phases(a, air, {0, 0, 0.2});
    const IntensityGrid g = intensity_grid(a, air, d, PlaneGridSpec::centered({0, 0, 0.2}, 21, 21, 2e-3, 2e-3));
    const double peak = find_peak(g.spec, g.values).value;
    for (int iy = 0; iy < 21; ++iy) {
      for (int ix = 0; ix < 21; ++ix) {
        CHECK(std::abs(g.at(ix, iy) - g.at(20 - ix, iy)) <= 1e-10 * peak);
        CHECK(std::abs(g.at(ix, iy) - g.at(iy, ix)) <= 1e-10 * peak);
      }
    }
  }

  TEST_CASE("201 x 201 grid over 2988 elements agrees with random spot checks") {
    std::vector<ArrayUnit> units;
    for (int i = 0; i < 12; ++i) units.push_back(default_unit({-0.4 + 0.2 * (i % 4), -0.23 + 0.16 * (i / 4), 0.0}));
    const ArrayAssembly a(units);
    REQUIRE(a.enabled_count() == 2988);
    const MediumParams air;
    const DriveVector d = focus_phases(a, air, {0, 0, 0.296});
    const PlaneGridSpec spec = PlaneGridSpec::centered({0, 0, 0.296}, 201, 201, 5e-4, 5e-4);
    const PressureGrid g = pressure_grid(a, air, d, spec);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> idx(0, 200);
    for (int i = 0; i < 5; ++i) {
      const int ix = idx(rng);
      const int iy = idx(rng);
      CHECK(g.at(ix, iy) == pressure_at(a, air, d, spec.cell_center(ix, iy)));
    }
  }

  TEST_CASE("focal metrics") {
    SUBCASE("single hot cell") {
      IntensityGrid g{PlaneGridSpec::centered({0, 0, 0.3}, 7, 7, 2e-3, 2e-3), std::vector<double>(49, 0.0)};
      g.values[g.spec.index(3, 3)] = 5.0;
      const FocalMetrics m = focal_metrics(g, {0, 0, 0.3});
      CHECK(m.peak == 5.0);
      CHECK(m.width_6db == doctest::Approx(2e-3));
      CHECK(distance(m.peak_location, {0, 0, 0.3}) < 1e-15);
    }
    SUBCASE("peak on the boundary") {
      IntensityGrid g{PlaneGridSpec::centered({0, 0, 0.3}, 5, 5, 1e-3, 1e-3), std::vector<double>(25, 0.0)};
      g.values[g.spec.index(0, 2)] = 1.0;
      CHECK_THROWS_AS(focal_metrics(g, {0, 0, 0.3}), ValidationError);
    }
    SUBCASE("focus off the plane") {
      IntensityGrid g{PlaneGridSpec::centered({0, 0, 0.3}, 5, 5, 1e-3, 1e-3), std::vector<double>(25, 0.0)};
      g.values[12] = 1.0;
      CHECK_THROWS_AS(focal_metrics(g, {0, 0, 0.31}), ValidationError);
    }
    SUBCASE("six units focused at 296 mm") {
      const MediumParams air;
      const ArrayAssembly a = six_units();
      const Vec3 focus{0, 0, 0.296};
      const DriveVector d = focus_phases(a, air, focus);
      const IntensityGrid g = intensity_grid(a, air, d, PlaneGridSpec::centered(focus, 41, 41, 1e-3, 1e-3));
      const FocalMetrics m = focal_metrics(g, focus);
      CHECK(distance(m.peak_location, focus) <= 0.5 * air.wavelength());
      // Dense local search for the true in-plane maximum.
      const IntensityGrid fine = intensity_grid(a, air, d, PlaneGridSpec::centered(focus, 41, 41, 2e-4, 2e-4));
      const GridPeak fp = find_peak(fine.spec, fine.values);
      CHECK(distance(fine.spec.cell_center(fp.ix, fp.iy), focus) <= 0.5 * air.wavelength());
      CHECK(m.width_6db > 0.5 * air.wavelength());

      const IntensityGrid half = intensity_grid(a, air, d.scaled(0.5), g.spec);
      const FocalMetrics mh = focal_metrics(half, focus);
      CHECK(mh.width_6db == m.width_6db);
      CHECK(mh.peak == doctest::Approx(0.25 * m.peak).epsilon(1e-12));
    }
  }

  TEST_CASE("superposition over disjoint subsets") {
    const MediumParams air;
    const ArrayAssembly full({default_unit({-0.2, -0.07, 0}), default_unit({0.03, -0.07, 0})});
    const DriveVector d = focus_phases(full, air, {0, 0, 0.3});
    const std::vector<std::size_t> first{0};
    const std::vector<std::size_t> second{1};
    const ArrayAssembly a = enable_subset(full, first);
    const ArrayAssembly b = enable_subset(full, second);
    DriveVector da{{d.amplitude.begin(), d.amplitude.begin() + 249}, {d.phase.begin(), d.phase.begin() + 249}};
    DriveVector db{{d.amplitude.begin() + 249, d.amplitude.end()}, {d.phase.begin() + 249, d.phase.end()}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (int i = 0; i < 20; ++i) {
      const Vec3 p{u(rng), u(rng), 0.3 + u(rng)};
      const auto sum = pressure_at(a, air, da, p) + pressure_at(b, air, db, p);
      const auto whole = pressure_at(full, air, d, p);
      CHECK(std::abs(sum - whole) <= 1e-12 * std::abs(whole));
    }
  }

  TEST_CASE("common phase offset leaves magnitudes unchanged") {
    const MediumParams air;
    const ArrayAssembly a = six_units();
    const DriveVector d = focus_phases(a, air, {0, 0, 0.296});
    DriveVector shifted = d;
    for (double& p : shifted.phase) p += 1.234;
    for (const Vec3& p : {Vec3{0, 0, 0.296}, Vec3{0.01, 0.02, 0.3}, Vec3{-0.05, 0.0, 0.25}}) {
      const double m0 = std::abs(pressure_at(a, air, d, p));
      CHECK(std::abs(std::abs(pressure_at(a, air, shifted, p)) - m0) <= 1e-12 * m0);
    }
  }

  TEST_CASE("reciprocity of distance and attenuation monotonicity") {
    MediumParams air;
    air.attenuation = 0.0;
    ArrayUnit u;
    u.rows = u.cols = 1;
    u.omitted.clear();
    u.source_strength = 2.5;
    u.radius = 1e-12;  // D == 1 off axis too
    const ArrayAssembly a({u});
    const DriveVector d{{1.0}, {0.0}};
    for (double dist = 0.05; dist <= 1.0; dist += 0.05) {
      const double p = std::abs(pressure_at(a, air, d, Vec3{0.36, 0.48, 0.8} * dist));
      CHECK(p == doctest::Approx(2.5 / dist).epsilon(1e-12));
    }
    double previous = 1e300;
    for (double alpha : {0.0, 0.05, 0.12, 0.5, 2.0}) {
      air.attenuation = alpha;
      const double p = std::abs(pressure_at(a, air, d, {0, 0, 0.296}));
      CHECK(p < previous);
      previous = p;
    }
  }
}
