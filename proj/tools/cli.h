// Copyright 2026 The Chaoscope Authors
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

#ifndef CHAOSCOPE_TOOLS_CLI_H_
#define CHAOSCOPE_TOOLS_CLI_H_

#include <ostream>

namespace chaoscope::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitOverflow = 2;

// Runs one chaoscope subcommand. Reports go to --out files or `out`; one-line
// diagnostics go to `err`. Returns 0 on success, 1 on invalid input and 2
// when a trajectory hits the overflow guard.
int ParseAndDispatch(int argc, const char* const* argv, std::ostream& out,
                     std::ostream& err);

}  // namespace chaoscope::tools

#endif  // CHAOSCOPE_TOOLS_CLI_H_
