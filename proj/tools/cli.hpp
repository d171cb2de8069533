/*
 * Copyright (C) 2026 The tarrylab Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tarry::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `tarrylab` invocation. `args` excludes the program name. Normal
/// output goes to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 numerical failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Parses a flat `key = value` file. Blank lines and lines starting with '#'
/// are ignored. Throws std::invalid_argument on a malformed line.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path);

}  // namespace tarry::cli
