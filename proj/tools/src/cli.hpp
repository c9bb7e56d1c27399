/*
 * Copyright 2026 The elmatch Authors
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

#ifndef ELMATCH_TOOLS_CLI_HPP
#define ELMATCH_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace elmatch::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kValidation = 2,
  kInfeasible = 3, // `match check` / `match derive` found no matching prior
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace elmatch::cli

#endif
