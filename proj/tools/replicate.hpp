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


// Named reproduction targets. Each computes a published example from
// scratch, compares it with the stated values and reports pass/fail.

#ifndef NETCLEAR_TOOLS_REPLICATE_HPP_
#define NETCLEAR_TOOLS_REPLICATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace netclear::tools {

struct Check {
  std::string label;
  double computed = 0.0;
  double expected = 0.0;
  bool pass = false;
};

struct Report {
  std::string target;
  std::string summary;  // what is being reproduced
  std::vector<Check> checks;
  std::string csv;      // optional data table

  bool passed() const;
  std::string render() const;

  // Records |computed - expected| <= tol.
  void near(const std::string& label, double computed, double expected, double tol);
  // Records computed >= minimum.
  void at_least(const std::string& label, double computed, double minimum);
  // Records a boolean outcome (computed 1/0, expected 1).
  void expect(const std::string& label, bool ok);
};

const std::vector<std::string>& replicate_targets();

// Throws Error(kInvalidSpec) for unknown names.
Report run_replicate(const std::string& name, std::uint64_t seed = 42);

}  // namespace netclear::tools

#endif  // NETCLEAR_TOOLS_REPLICATE_HPP_
