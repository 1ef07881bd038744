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

// Clearing of debt networks with bankruptcy costs.
//
// A solvent bank repays every creditor in full. A defaulting bank j pays
// creditor i the share D_ij / D_j^L of max(V_j + D_j^L, 0) and loses
// chi + a * (its assets). Values solve
//
//   V = q p + d^A - D^L - b
//
// and the solutions form a lattice; the greatest solution is the default
// selection throughout the library.

#ifndef NETCLEAR_CLEARING_HPP_
#define NETCLEAR_CLEARING_HPP_

#include <vector>

#include "netclear/network.hpp"
#include "netclear/returns.hpp"

namespace netclear {

enum class Selection { kGreatest, kLeast };

struct ClearingOptions {
  Selection selection = Selection::kGreatest;
  // Banks pinned to full payments (bailed out). Their reported value is
  // clamped at zero and they never incur bankruptcy costs.
  std::vector<int> forced_solvent;
};

struct ClearingSolution {
  Vector values;              // V, node-indexed; values[0] is unused (0)
  Matrix payments;            // realized d_ij
  std::vector<char> defaulted;  // node-indexed flags
  Vector costs;               // realized b_i
  Vector assets;              // q_i p + d_i^A (+ equity claims)
  Vector external;            // q_i p
  double outside_value = 0.0;  // V_0 accrued to the outside sector
  std::vector<int> assisted;  // forced banks that needed support
  int outer_rounds = 0;

  std::vector<int> default_set() const;
  int default_count() const;
  double total_cost() const { return costs.sum(); }
  bool is_default(int i) const { return defaulted[i] != 0; }
};

// q is (n+1) x K with row 0 ignored, p has K entries.
ClearingSolution clear(const Network& network, const Matrix& q,
                       const std::vector<double>& p, const CostModel& costs,
                       Selection selection = Selection::kGreatest);

// Clearing for given realized external asset values e_i = q_i p
// (node-indexed, entry 0 ignored).
ClearingSolution clear_with_assets(const Network& network,
                                   const Vector& external,
                                   const CostModel& costs,
                                   const ClearingOptions& options = {});

// q_i p for every bank (entry 0 is 0).
Vector external_values(const Matrix& q, const std::vector<double>& p);

// max(V, 0) componentwise.
Vector equity_values(const ClearingSolution& solution);

struct WelfareReport {
  double total = 0.0;          // expected returns minus expected costs
  double returns = 0.0;        // E[sum_i q_i p]
  double costs = 0.0;          // E[sum_i b_i]
  double expected_defaults = 0.0;
  Vector per_bank_returns;     // E[q_i p]
  Vector expected_costs;       // E[b_i]
  Vector default_probability;  // Pr[i defaults]
};

WelfareReport expected_welfare(const Network& network, const Matrix& q,
                               const ScenarioSet& scenarios,
                               const CostModel& costs,
                               Selection selection = Selection::kGreatest);

// |V_0 - (sum q p - sum b)|, with V_0 accumulated from the outside sector's
// receipts, outside equity in solvent banks and the losses of deep defaults.
double value_conservation_check(const Network& network, const Matrix& q,
                                const std::vector<double>& p,
                                const CostModel& costs,
                                Selection selection = Selection::kGreatest);
double conservation_residual(const ClearingSolution& solution);

}  // namespace netclear

#endif  // NETCLEAR_CLEARING_HPP_
