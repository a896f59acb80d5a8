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

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sonotherm/acoustics.hpp"
#include "sonotherm/config.hpp"
#include "sonotherm/error.hpp"

using namespace sonotherm;
using nlohmann::json;

namespace {

json twelve_unit_doc() {
  json units = json::array();
  for (int i = 0; i < 12; ++i) {
    units.push_back({{"origin", {0.192 * (i % 4), 0.1514 * (i / 4), 0.0}}});
  }
  return {{"units", units}};
}

std::string error_path(const json& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "(no error)";
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("single 1x1 unit yields one transducer at the unit origin") {
    const json doc{{"units", {{{"origin", {0.01, -0.02, 0.03}}, {"rows", 1}, {"cols", 1}, {"pitch", 0.01},
                               {"omitted", json::array()}}}}};
    const ArrayAssembly a = parse_config(doc).assembly();
    REQUIRE(a.enabled_count() == 1);
    CHECK(a.enabled_transducers()[0].position == Vec3{0.01, -0.02, 0.03});
  }

  TEST_CASE("twelve default units hold 2988 elements") {
    const int per_unit = oracle::enumerate_cells(18, 14, {{1, 1}, {2, 1}, {16, 1}});
    CHECK(per_unit == 249);
    const ArrayAssembly a = parse_config(twelve_unit_doc()).assembly();
    CHECK(a.all_transducers().size() == static_cast<std::size_t>(12 * per_unit));
    CHECK(a.enabled_count() == 2988);
  }

  TEST_CASE("validation errors name the offending key") {
    json doc = twelve_unit_doc();
    doc["units"][3]["pitch"] = 0.0;
    CHECK(error_path(doc) == "units[3].pitch");

    doc = twelve_unit_doc();
    doc["units"][0]["omitted"] = {{1, 1}, {1, 1}};
    CHECK(error_path(doc) == "units[0].omitted[1]");

    CHECK(error_path(json{{"units", json::array()}}) == "units");

    doc = twelve_unit_doc();
    doc["units"][2]["pich"] = 0.01;
    CHECK(error_path(doc) == "units[2].pich");

    doc = twelve_unit_doc();
    doc["medum"] = json::object();
    CHECK(error_path(doc) == "medum");
  }

  TEST_CASE("default unit layout") {
    const ArrayUnit u = default_unit();
    const auto pos = u.local_positions();
    CHECK(pos.size() == 249);
    for (const Vec3& p : pos) CHECK(p.z == 0.0);
    for (const Transducer& t : u.transducers()) {
      CHECK(std::abs(norm(t.normal) - 1.0) < 1e-9);
      CHECK(t.radius == doctest::Approx(4.5e-3));
    }
  }

  TEST_CASE("units offset by 0.192 m do not overlap") {
    const ArrayAssembly a({default_unit({0, 0, 0}), default_unit({0.192, 0, 0})});
    const auto& ts = a.all_transducers();
    double min_d = 1e9;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) min_d = std::min(min_d, distance(ts[i].position, ts[j].position));
    }
    CHECK(min_d > 0.0);
    CHECK(min_d == doctest::Approx(10.16e-3));
  }

  TEST_CASE("half turn about x flips the normals") {
    const ArrayUnit u = default_unit({}, Rotation::from_axis_angle({1, 0, 0}, std::numbers::pi));
    for (const Transducer& t : u.transducers()) {
      CHECK(t.normal.x == doctest::Approx(0.0));
      CHECK(t.normal.y == doctest::Approx(0.0));
      CHECK(t.normal.z == doctest::Approx(-1.0));
    }
  }

  TEST_CASE("enable_subset") {
    const ArrayAssembly full = parse_config(twelve_unit_doc()).assembly();
    const std::vector<std::size_t> six{0, 1, 2, 3, 4, 5};
    CHECK(enable_subset(full, six).enabled_count() == 6 * 249);

    std::vector<std::size_t> all(12);
    std::iota(all.begin(), all.end(), 0);
    const ArrayAssembly same = enable_subset(full, all);
    const MediumParams air;
    const Vec3 focus{0.3, 0.15, 0.3};
    const DriveVector d1 = focus_phases(full, air, focus);
    const DriveVector d2 = focus_phases(same, air, focus);
    CHECK(pressure_at(full, air, d1, focus) == pressure_at(same, air, d2, focus));

    CHECK_THROWS_AS(enable_subset(full, std::vector<std::size_t>{}), ValidationError);
    CHECK_THROWS_AS(enable_subset(full, std::vector<std::size_t>{12}), ValidationError);
  }

  TEST_CASE("disabled units are bitwise equivalent to deleted units") {
    const ArrayAssembly full = parse_config(twelve_unit_doc()).assembly();
    const std::vector<std::size_t> keep{1, 4, 6, 11};
    const ArrayAssembly subset = enable_subset(full, keep);
    std::vector<ArrayUnit> kept;
    for (std::size_t i : keep) kept.push_back(full.units()[i]);
    const ArrayAssembly deleted(kept);
    const MediumParams air;
    const Vec3 focus{0.25, 0.2, 0.3};
    const DriveVector da = focus_phases(subset, air, focus);
    const DriveVector db = focus_phases(deleted, air, focus);
    for (const Vec3& p : {focus, Vec3{0.1, 0.1, 0.2}, Vec3{0.4, 0.0, 0.5}}) {
      CHECK(pressure_at(subset, air, da, p) == pressure_at(deleted, air, db, p));
    }
    CHECK(subset.hash() == deleted.hash());
  }

  TEST_CASE("rigid translation moves every element by the same vector") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const json base = twelve_unit_doc();
    const ArrayAssembly a = parse_config(base).assembly();
    for (int trial = 0; trial < 5; ++trial) {
      const Vec3 v{u(rng), u(rng), u(rng)};
      json moved = base;
      for (auto& unit : moved["units"]) {
        unit["origin"] = {unit["origin"][0].get<double>() + v.x, unit["origin"][1].get<double>() + v.y,
                          unit["origin"][2].get<double>() + v.z};
      }
      const ArrayAssembly b = parse_config(moved).assembly();
      for (std::size_t i = 0; i < a.all_transducers().size(); ++i) {
        const Vec3 d = b.all_transducers()[i].position - a.all_transducers()[i].position - v;
        CHECK(norm(d) < 1e-15);
      }
    }
  }

  TEST_CASE("configuration serialization is stable") {
    const Config c1 = load_config(std::string(SONOTHERM_REF_DIR) + "/fig1.json");
    const std::string once = to_json(c1).dump();
    const Config c2 = parse_config(json::parse(once));
    CHECK(to_json(c2).dump() == once);
    CHECK(c1.assembly().hash() == c2.assembly().hash());
    const ArrayAssembly a1 = c1.assembly();
    const ArrayAssembly a2 = c2.assembly();
    const auto& t1 = a1.all_transducers();
    const auto& t2 = a2.all_transducers();
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(t1[i].position == t2[i].position);
  }

  TEST_CASE("axis-angle and quaternion rotations agree") {
    const json a{{"units", {{{"origin", {0, 0, 0}}, {"rotation", {{"axis", {0, 1, 0}}, {"angle", 0.3}}}}}}};
    const json q{{"units", {{{"origin", {0, 0, 0}}, {"rotation", {std::cos(0.15), 0.0, std::sin(0.15), 0.0}}}}}};
    const auto ta = parse_config(a).assembly().all_transducers();
    const auto tq = parse_config(q).assembly().all_transducers();
    for (std::size_t i = 0; i < ta.size(); ++i) CHECK(distance(ta[i].position, tq[i].position) < 1e-15);
  }
}
