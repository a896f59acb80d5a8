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

#ifndef SONOTHERM_ERROR_HPP
#define SONOTHERM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sonotherm {

/// Invalid input: malformed configuration, violated precondition, bad argument.
/// `path()` names the offending configuration key (e.g. "units[2].pitch") when known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string path = {})
      : std::invalid_argument(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        message_(message) {}

  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Numerical failure during a solve (stability violation, divergence, no coupling).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sonotherm

#endif  // SONOTHERM_ERROR_HPP
