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

#include "sonotherm/grid_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sonotherm {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

std::string coordinate_prefix(const PlaneGridSpec& spec, int ix, int iy) {
  const Vec3 c = spec.cell_center(ix, iy);
  return format_number(dot(c, spec.u_axis)) + "," + format_number(dot(c, spec.v_axis)) + ",";
}

}  // namespace

void write_grid_csv(const std::filesystem::path& path, const PlaneGridSpec& spec, const std::vector<double>& values,
                    const std::string& value_name) {
  std::ostringstream s;
  s << "x_m,y_m," << value_name << "\n";
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      s << coordinate_prefix(spec, ix, iy) << format_number(values[spec.index(ix, iy)]) << "\n";
    }
  }
  write_text_file(path, s.str());
}

void write_pressure_csv(const std::filesystem::path& path, const PlaneGridSpec& spec,
                        const std::vector<std::complex<double>>& values) {
  std::ostringstream s;
  s << "x_m,y_m,re_Pa,im_Pa\n";
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      const auto p = values[spec.index(ix, iy)];
      s << coordinate_prefix(spec, ix, iy) << format_number(p.real()) << "," << format_number(p.imag()) << "\n";
    }
  }
  write_text_file(path, s.str());
}

void write_pgm(const std::filesystem::path& path, const PlaneGridSpec& spec, const std::vector<double>& values,
               const std::string& quantity) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = values.empty() ? 0.0 : *lo_it;
  const double hi = values.empty() ? 0.0 : *hi_it;
  const double range = hi - lo;
  std::ostringstream s;
  s << "P2\n# quantity " << quantity << "\n# min " << format_number(lo) << "\n# max " << format_number(hi)
    << "\n# value = min + pixel * (max - min) / 65535\n"
    << spec.nx << " " << spec.ny << "\n65535\n";
  constexpr int kPerLine = 11;  // keeps lines under 70 characters
  for (int iy = spec.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double v = values[spec.index(ix, iy)];
      const long pixel = range > 0.0 ? std::lround((v - lo) / range * 65535.0) : 0L;
      s << pixel << ((ix + 1) % kPerLine == 0 || ix + 1 == spec.nx ? "\n" : " ");
    }
  }
  write_text_file(path, s.str());
}

}  // namespace sonotherm
