// Copyright 2026 The nsp Authors
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

// The `nsp` command line: stats, quantize, pareto, baseline, oracle.

#ifndef NSP_TOOLS_CLI_COMMANDS_H_
#define NSP_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>

namespace nsp::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitIngest = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitSizeLimit = 4;
inline constexpr int kExitInfeasible = 5;

// Runs one invocation. Results go to `out` (or the --out file), diagnostics
// to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace nsp::cli

#endif  // NSP_TOOLS_CLI_COMMANDS_H_
