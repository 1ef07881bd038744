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

// Shared fixed-point engine behind the debt-only and debt-plus-equity
// clearing entry points.

#ifndef NETCLEAR_SRC_ENGINE_HPP_
#define NETCLEAR_SRC_ENGINE_HPP_

#include <vector>

#include "netclear/clearing.hpp"

namespace netclear::detail {

// A bank is solvent when its assets reach D^L within this relative slack.
// Regulatory caps put banks exactly on the solvency boundary, where the
// floating-point evaluation of q p can land one ulp short.
inline constexpr double kSolvencyTol = 1e-12;

// Convergence target for the inner payment iteration before it is accepted
// without an exact linear-solve refinement.
inline constexpr double kPaymentTol = 1e-10;

struct EngineInput {
  const Network* network = nullptr;
  const Vector* external = nullptr;
  const CostModel* costs = nullptr;
  // Node-indexed cross-holdings (row/column 0 zero); nullptr for debt only.
  const Matrix* equity = nullptr;
  Selection selection = Selection::kGreatest;
  const std::vector<int>* forced = nullptr;
};

ClearingSolution solve(const EngineInput& input);

}  // namespace netclear::detail

#endif  // NETCLEAR_SRC_ENGINE_HPP_
