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


// Net financial centrality and bailout centrality: expected changes in total
// bankruptcy costs caused by one bank's portfolio or rescue.

#ifndef NETCLEAR_CENTRALITY_HPP_
#define NETCLEAR_CENTRALITY_HPP_

#include <functional>
#include <vector>

#include "netclear/clearing.hpp"

namespace netclear {

// E[sum_j b_j(q) - sum_j b_j(q_i', q_-i)], with q_i' replacing row `bank` of
// q. Both clearings use the same selection.
double nfc(const Network& network, const Matrix& q, int bank,
           const std::vector<double>& counterfactual_row,
           const ScenarioSet& scenarios, const CostModel& costs,
           Selection selection = Selection::kGreatest);

// E[sum_j b_j(unassisted) - sum_j b_j(bank forced solvent)].
double bailout_centrality(const Network& network, const Matrix& q, int bank,
                          const ScenarioSet& scenarios, const CostModel& costs,
                          Selection selection = Selection::kGreatest);

// Maps a bank and the baseline holdings to the bank's counterfactual row.
using CounterfactualRule =
    std::function<std::vector<double>(int bank, const Matrix& q)>;

// Moves the bank's whole capital into `safe_asset`.
CounterfactualRule to_safe_asset(int safe_asset);

struct RankedBank {
  int bank = 0;
  double nfc = 0.0;
};

// Banks sorted by NFC under the rule, descending; ties keep index order.
std::vector<RankedBank> nfc_ranking(const Network& network, const Matrix& q,
                                    const CounterfactualRule& rule,
                                    const ScenarioSet& scenarios,
                                    const CostModel& costs,
                                    Selection selection = Selection::kGreatest);

struct CentralityRow {
  int bank = 0;
  double nfc = 0.0;
  double bailout = 0.0;
};

// Per-bank NFC (rule applied to each bank) and bailout centrality.
std::vector<CentralityRow> centrality_report(
    const Network& network, const Matrix& q, const CounterfactualRule& rule,
    const ScenarioSet& scenarios, const CostModel& costs,
    Selection selection = Selection::kGreatest);

}  // namespace netclear

#endif  // NETCLEAR_CENTRALITY_HPP_
