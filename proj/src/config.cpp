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

#include "sonotherm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sonotherm/error.hpp"

namespace sonotherm {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Object view that records which keys were read so leftovers can be reported as typos.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError("expected an object", path_.empty() ? "(root)" : path_);
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) throw ValidationError("expected a number", path(key));
      out = v->get<double>();
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer()) throw ValidationError("expected an integer", path(key));
      out = v->get<int>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) throw ValidationError("expected a string", path(key));
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) throw ValidationError("unknown key", path(item.key()));
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Vec3 parse_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ValidationError("expected [x, y, z]", path);
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError("expected [x, y, z]", path);
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Rotation parse_rotation(const json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 4) throw ValidationError("expected quaternion [w, x, y, z]", path);
    for (const auto& e : v) {
      if (!e.is_number()) throw ValidationError("expected quaternion [w, x, y, z]", path);
    }
    const Rotation q{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
    if (!(std::abs(q.w) + std::abs(q.x) + std::abs(q.y) + std::abs(q.z) > 0.0)) {
      throw ValidationError("zero quaternion", path);
    }
    // Leave unit quaternions bit-exact so configs round-trip.
    const double n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
    return std::abs(n2 - 1.0) <= 1e-14 ? q : q.normalized();
  }
  Section s(v, path);
  const json* axis = s.get("axis");
  if (!axis) throw ValidationError("missing key", s.path("axis"));
  double angle = 0.0;
  if (!s.has("angle")) throw ValidationError("missing key", s.path("angle"));
  s.number("angle", angle);
  s.finish();
  const Vec3 a = parse_vec3(*axis, s.path("axis"));
  if (!(norm(a) > 0.0)) throw ValidationError("zero rotation axis", s.path("axis"));
  return Rotation::from_axis_angle(a, angle);
}

ArrayUnit parse_unit(const json& j, const std::string& path) {
  Section s(j, path);
  ArrayUnit unit = default_unit();
  const json* origin = s.get("origin");
  if (!origin) throw ValidationError("missing key", s.path("origin"));
  unit.origin = parse_vec3(*origin, s.path("origin"));
  if (const json* r = s.get("rotation")) unit.orientation = parse_rotation(*r, s.path("rotation"));
  s.integer("rows", unit.rows);
  s.integer("cols", unit.cols);
  s.number("pitch", unit.pitch);
  s.number("radius", unit.radius);
  s.number("source_strength", unit.source_strength);
  if (const json* om = s.get("omitted")) {
    if (!om->is_array()) throw ValidationError("expected [[row, col], ...]", s.path("omitted"));
    unit.omitted.clear();
    for (std::size_t i = 0; i < om->size(); ++i) {
      const json& c = (*om)[i];
      const std::string cp = s.path("omitted") + "[" + std::to_string(i) + "]";
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        throw ValidationError("expected [row, col]", cp);
      }
      unit.omitted.push_back({c[0].get<int>(), c[1].get<int>()});
    }
  }
  s.finish();
  unit.validate(path);
  return unit;
}

Envelope parse_envelope(const json& j, const std::string& path) {
  Section s(j, path);
  std::string kind = "static";
  s.string("kind", kind);
  Envelope env;
  if (kind == "static") {
    s.finish();
    return env;
  }
  if (kind != "square") throw ValidationError("expected \"static\" or \"square\"", s.path("kind"));
  env.kind = Envelope::Kind::kSquare;
  env.mod_frequency = 50.0;
  env.duty = 0.9;
  s.number("freq_hz", env.mod_frequency);
  s.number("duty", env.duty);
  s.finish();
  env.validate(path);
  return env;
}

template <typename Enum>
Enum parse_choice(Section& s, const std::string& key, Enum fallback,
                  std::initializer_list<std::pair<const char*, Enum>> choices) {
  std::string text;
  if (!s.has(key)) {
    s.get(key);
    return fallback;
  }
  s.string(key, text);
  std::string allowed;
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw ValidationError("expected one of " + allowed, s.path(key));
}

}  // namespace

ArrayAssembly Config::assembly() const {
  ArrayAssembly all(units);
  if (enabled.empty()) return all;
  return enable_subset(all, enabled);
}

StimulusSetup Config::stimulus_setup() const {
  ArrayAssembly a = assembly();
  DriveVector phases = focus_phases(a, medium, drive.focus).scaled(drive.amplitude);
  const Vec3 center = drive.focus;
  return StimulusSetup{std::move(a), medium, std::move(phases), center, probe_point(), skin, thermal_grid, solver};
}

Config parse_config(const json& doc) {
  Section root(doc, "");
  Config c;

  if (const json* m = root.get("medium")) {
    Section s(*m, "medium");
    s.number("sound_speed", c.medium.sound_speed);
    s.number("density", c.medium.density);
    s.number("attenuation", c.medium.attenuation);
    s.number("frequency", c.medium.frequency);
    s.finish();
    c.medium.validate();
  }

  const json* units = root.get("units");
  if (!units) throw ValidationError("missing key", "units");
  if (!units->is_array()) throw ValidationError("expected an array of units", "units");
  if (units->empty()) throw ValidationError("at least one unit is required", "units");
  for (std::size_t i = 0; i < units->size(); ++i) {
    c.units.push_back(parse_unit((*units)[i], "units[" + std::to_string(i) + "]"));
  }

  if (const json* e = root.get("enabled")) {
    if (!e->is_array()) throw ValidationError("expected an array of unit indices", "enabled");
    if (e->empty()) throw ValidationError("no enabled units", "enabled");
    std::set<std::size_t> seen;
    for (const auto& idx : *e) {
      if (!idx.is_number_integer() || idx.get<long long>() < 0 ||
          idx.get<long long>() >= static_cast<long long>(c.units.size())) {
        throw ValidationError("unit index out of range", "enabled");
      }
      const auto u = idx.get<std::size_t>();
      if (!seen.insert(u).second) throw ValidationError("duplicate unit index", "enabled");
      c.enabled.push_back(u);
    }
  }

  if (const json* d = root.get("drive")) {
    Section s(*d, "drive");
    if (const json* f = s.get("focus")) c.drive.focus = parse_vec3(*f, "drive.focus");
    s.number("amplitude", c.drive.amplitude);
    s.finish();
    if (!(c.drive.amplitude >= 0.0 && c.drive.amplitude <= 1.0)) {
      throw ValidationError("must be within [0, 1]", "drive.amplitude");
    }
  }

  if (const json* e = root.get("envelope")) c.envelope = parse_envelope(*e, "envelope");

  if (const json* k = root.get("skin")) {
    Section s(*k, "skin");
    s.number("conductivity", c.skin.conductivity);
    s.number("density", c.skin.density);
    s.number("specific_heat", c.skin.specific_heat);
    s.number("absorbed_fraction", c.skin.absorbed_fraction);
    s.number("convection_h", c.skin.convection_h);
    s.number("ambient_T", c.skin.ambient_T);
    s.number("core_T", c.skin.core_T);
    s.number("slab_thickness", c.skin.slab_thickness);
    s.number("perfusion_rate", c.skin.perfusion_rate);
    s.finish();
    c.skin.validate();
  }

  if (const json* g = root.get("thermal_grid")) {
    Section s(*g, "thermal_grid");
    s.integer("nx", c.thermal_grid.nx);
    s.integer("ny", c.thermal_grid.ny);
    s.number("dx", c.thermal_grid.dx);
    s.number("dy", c.thermal_grid.dy);
    s.number("surface_dz", c.thermal_grid.surface_dz);
    s.number("dz_growth", c.thermal_grid.dz_growth);
    s.integer("depth_bisections", c.thermal_grid.depth_bisections);
    s.finish();
    c.thermal_grid.validate();
  }

  if (const json* v = root.get("solver")) {
    Section s(*v, "solver");
    c.solver.envelope_mode = parse_choice<EnvelopeMode>(
        s, "envelope_mode", c.solver.envelope_mode,
        {{"mean", EnvelopeMode::kMeanFactor}, {"resolved", EnvelopeMode::kResolved}});
    s.number("output_interval", c.solver.output_interval);
    s.number("resolved_dt", c.solver.resolved_dt);
    s.number("safety", c.solver.safety);
    c.solver.initial_state = parse_choice<InitialState>(
        s, "initial_state", c.solver.initial_state,
        {{"steady", InitialState::kSteady}, {"uniform", InitialState::kUniform}});
    c.solver.bottom = parse_choice<BottomBoundary>(
        s, "bottom", c.solver.bottom, {{"clamped", BottomBoundary::kClamped}, {"adiabatic", BottomBoundary::kAdiabatic}});
    s.finish();
    c.solver.validate();
  }

  if (const json* p = root.get("probe")) c.probe = parse_vec3(*p, "probe");

  if (const json* p = root.get("perception")) {
    Section s(*p, "perception");
    s.number("warm_threshold", c.perception.warm_threshold);
    s.number("acclimation_T", c.perception.acclimation_T);
    s.finish();
    c.perception.validate();
  }

  root.finish();
  return c;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("file not found", path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what(), path.string());
  }
}

Config load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

ArrayAssembly load_assembly(const std::filesystem::path& path) { return load_config(path).assembly(); }

nlohmann::json to_json(const Config& c) {
  json units = json::array();
  for (const ArrayUnit& u : c.units) {
    json omitted = json::array();
    for (const GridCell& cell : u.omitted) omitted.push_back({cell.row, cell.col});
    units.push_back({{"origin", {u.origin.x, u.origin.y, u.origin.z}},
                     {"rotation", {u.orientation.w, u.orientation.x, u.orientation.y, u.orientation.z}},
                     {"rows", u.rows},
                     {"cols", u.cols},
                     {"pitch", u.pitch},
                     {"omitted", omitted},
                     {"radius", u.radius},
                     {"source_strength", u.source_strength}});
  }
  json envelope{{"kind", c.envelope.name()}};
  if (c.envelope.kind == Envelope::Kind::kSquare) {
    envelope["freq_hz"] = c.envelope.mod_frequency;
    envelope["duty"] = c.envelope.duty;
  }
  json doc{
      {"medium",
       {{"sound_speed", c.medium.sound_speed},
        {"density", c.medium.density},
        {"attenuation", c.medium.attenuation},
        {"frequency", c.medium.frequency}}},
      {"units", units},
      {"drive", {{"focus", {c.drive.focus.x, c.drive.focus.y, c.drive.focus.z}}, {"amplitude", c.drive.amplitude}}},
      {"envelope", envelope},
      {"skin",
       {{"conductivity", c.skin.conductivity},
        {"density", c.skin.density},
        {"specific_heat", c.skin.specific_heat},
        {"absorbed_fraction", c.skin.absorbed_fraction},
        {"convection_h", c.skin.convection_h},
        {"ambient_T", c.skin.ambient_T},
        {"core_T", c.skin.core_T},
        {"slab_thickness", c.skin.slab_thickness},
        {"perfusion_rate", c.skin.perfusion_rate}}},
      {"thermal_grid",
       {{"nx", c.thermal_grid.nx},
        {"ny", c.thermal_grid.ny},
        {"dx", c.thermal_grid.dx},
        {"dy", c.thermal_grid.dy},
        {"surface_dz", c.thermal_grid.surface_dz},
        {"dz_growth", c.thermal_grid.dz_growth},
        {"depth_bisections", c.thermal_grid.depth_bisections}}},
      {"solver",
       {{"envelope_mode", to_string(c.solver.envelope_mode)},
        {"output_interval", c.solver.output_interval},
        {"resolved_dt", c.solver.resolved_dt},
        {"safety", c.solver.safety},
        {"initial_state", to_string(c.solver.initial_state)},
        {"bottom", to_string(c.solver.bottom)}}},
      {"perception", {{"warm_threshold", c.perception.warm_threshold}, {"acclimation_T", c.perception.acclimation_T}}},
  };
  if (!c.enabled.empty()) doc["enabled"] = c.enabled;
  if (c.probe) doc["probe"] = {c.probe->x, c.probe->y, c.probe->z};
  return doc;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("expected key=value, got '" + assignment + "'", "--set");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot_pos = key.find('.', start);
    const std::string token = key.substr(start, dot_pos == std::string::npos ? std::string::npos : dot_pos - start);
    if (token.empty()) throw ValidationError("empty path component", key);
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ValidationError("expected an array index, got '" + token + "'", key);
      }
      if (idx >= node->size()) throw ValidationError("array index out of range", key);
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw ValidationError("cannot descend into a scalar", key);
      node = &(*node)[token];
    }
    if (dot_pos == std::string::npos) break;
    start = dot_pos + 1;
  }
  *node = std::move(value);
}

}  // namespace sonotherm
