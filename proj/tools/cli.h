// Copyright 2026 The Blotto Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOTTO_TOOLS_CLI_H_
#define BLOTTO_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace blotto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitUsage = 64;

// Runs `blotto <subcommand> [flags]`. args[0] is the program name. Results
// that are not sent to a file go to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Rewrites `--config FILE` into explicit flags placed right after the
// subcommand, so flags given on the command line take precedence. The file
// holds a flat JSON object keyed by flag name without dashes; true booleans
// become bare flags, false ones are dropped and arrays become repeated
// values. Throws std::invalid_argument on a malformed file.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace blotto::cli

#endif  // BLOTTO_TOOLS_CLI_H_
