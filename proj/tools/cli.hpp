// Copyright 2026 The netclear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line entry points. run_cli is separate from main so tests can drive
// it in-process.

#ifndef NETCLEAR_TOOLS_CLI_HPP_
#define NETCLEAR_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace netclear::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitAcceptanceFailed = 1,
  kExitConfigError = 2,
  kExitSolverError = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace netclear::tools

#endif  // NETCLEAR_TOOLS_CLI_HPP_
