// Copyright 2026 The RRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRDP_TOOLS_CLI_H_
#define RRDP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "rrdp/service.h"

namespace rrdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// Runs the command line `args` (args[0] is the program name). Results go to
// `out`, diagnostics to `err`. Returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Renders a service response body.
std::string RenderTable(const Json& body, int precision);
std::string RenderCsv(const Json& body, int precision);

}  // namespace rrdp::cli

#endif  // RRDP_TOOLS_CLI_H_
