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


#include "netclear/centrality.hpp"

#include <algorithm>
#include <string>

#include "netclear/errors.hpp"
#include "netclear/parallel.hpp"

namespace netclear {

namespace {

void check_bank(const Network& network, const Matrix& q, int bank) {
  if (bank < 1 || bank > network.bank_count()) {
    throw Error(ErrorCode::kInvalidSpec,
                "bank out of range: " + std::to_string(bank));
  }
  if (q.rows() != network.node_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "portfolio needs one row per node");
  }
}

}  // namespace

double nfc(const Network& network, const Matrix& q, int bank,
           const std::vector<double>& counterfactual_row,
           const ScenarioSet& scenarios, const CostModel& costs,
           Selection selection) {
  check_bank(network, q, bank);
  if (static_cast<Eigen::Index>(counterfactual_row.size()) != q.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "counterfactual row needs one entry per asset");
  }
  Matrix alt = q;
  for (Eigen::Index k = 0; k < q.cols(); ++k) alt(bank, k) = counterfactual_row[k];
  return expectation(scenarios, [&](const Scenario& s) {
    const double before = clear(network, q, s.returns, costs, selection).total_cost();
    const double after = clear(network, alt, s.returns, costs, selection).total_cost();
    return before - after;
  });
}

double bailout_centrality(const Network& network, const Matrix& q, int bank,
                          const ScenarioSet& scenarios, const CostModel& costs,
                          Selection selection) {
  check_bank(network, q, bank);
  ClearingOptions plain;
  plain.selection = selection;
  ClearingOptions assisted = plain;
  assisted.forced_solvent = {bank};
  return expectation(scenarios, [&](const Scenario& s) {
    const Vector e = external_values(q, s.returns);
    const double before = clear_with_assets(network, e, costs, plain).total_cost();
    const double after = clear_with_assets(network, e, costs, assisted).total_cost();
    return before - after;
  });
}

CounterfactualRule to_safe_asset(int safe_asset) {
  return [safe_asset](int bank, const Matrix& q) {
    if (safe_asset < 0 || safe_asset >= q.cols()) {
      throw Error(ErrorCode::kInvalidSpec, "safe asset id out of range");
    }
    std::vector<double> row(q.cols(), 0.0);
    row[safe_asset] = q.row(bank).sum();
    return row;
  };
}

std::vector<RankedBank> nfc_ranking(const Network& network, const Matrix& q,
                                    const CounterfactualRule& rule,
                                    const ScenarioSet& scenarios,
                                    const CostModel& costs,
                                    Selection selection) {
  const int n = network.bank_count();
  std::vector<RankedBank> out(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const int bank = static_cast<int>(k) + 1;
      out[k] = {bank, nfc(network, q, bank, rule(bank, q), scenarios, costs,
                          selection)};
    }
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedBank& a, const RankedBank& b) {
                     return a.nfc > b.nfc;
                   });
  return out;
}

std::vector<CentralityRow> centrality_report(const Network& network,
                                             const Matrix& q,
                                             const CounterfactualRule& rule,
                                             const ScenarioSet& scenarios,
                                             const CostModel& costs,
                                             Selection selection) {
  const int n = network.bank_count();
  std::vector<CentralityRow> out(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const int bank = static_cast<int>(k) + 1;
      out[k].bank = bank;
      out[k].nfc = nfc(network, q, bank, rule(bank, q), scenarios, costs, selection);
      out[k].bailout =
          bailout_centrality(network, q, bank, scenarios, costs, selection);
    }
  });
  return out;
}

}  // namespace netclear
