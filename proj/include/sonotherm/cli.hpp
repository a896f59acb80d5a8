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

#ifndef SONOTHERM_CLI_HPP
#define SONOTHERM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sonotherm {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

/**
 * Entry point behind the `sonotherm` executable. `args` excludes the program name.
 * Errors are written to `err` as a single JSON object {"error", "kind", "path"?}.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sonotherm

#endif  // SONOTHERM_CLI_HPP
