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

#include "netclear/clearing.hpp"

#include <cmath>
#include <string>

#include "engine.hpp"
#include "netclear/errors.hpp"

namespace netclear {

std::vector<int> ClearingSolution::default_set() const {
  std::vector<int> out;
  for (int i = 1; i < static_cast<int>(defaulted.size()); ++i) {
    if (defaulted[i]) out.push_back(i);
  }
  return out;
}

int ClearingSolution::default_count() const {
  int count = 0;
  for (std::size_t i = 1; i < defaulted.size(); ++i) count += defaulted[i];
  return count;
}

Vector external_values(const Matrix& q, const std::vector<double>& p) {
  if (q.cols() != static_cast<Eigen::Index>(p.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "portfolio has " + std::to_string(q.cols()) +
                    " assets, returns have " + std::to_string(p.size()));
  }
  Vector e = Vector::Zero(q.rows());
  for (Eigen::Index i = 1; i < q.rows(); ++i) {
    double v = 0.0;
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
      if (q(i, k) < 0.0) {
        throw Error(ErrorCode::kInfeasiblePortfolio, "negative holding");
      }
      v += q(i, k) * p[k];
    }
    e[i] = v;
  }
  return e;
}

ClearingSolution clear_with_assets(const Network& network,
                                   const Vector& external,
                                   const CostModel& costs,
                                   const ClearingOptions& options) {
  detail::EngineInput in;
  in.network = &network;
  in.external = &external;
  in.costs = &costs;
  in.selection = options.selection;
  in.forced = &options.forced_solvent;
  return detail::solve(in);
}

ClearingSolution clear(const Network& network, const Matrix& q,
                       const std::vector<double>& p, const CostModel& costs,
                       Selection selection) {
  if (q.rows() != network.node_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "portfolio needs one row per node");
  }
  const Vector e = external_values(q, p);
  ClearingOptions options;
  options.selection = selection;
  return clear_with_assets(network, e, costs, options);
}

Vector equity_values(const ClearingSolution& solution) {
  return solution.values.cwiseMax(0.0);
}

WelfareReport expected_welfare(const Network& network, const Matrix& q,
                               const ScenarioSet& scenarios,
                               const CostModel& costs, Selection selection) {
  const int N = network.node_count();
  // Layout: [returns(N), costs(N), default indicators(N)].
  const Vector totals = expectation(scenarios, [&](const Scenario& s) {
    const ClearingSolution sol = clear(network, q, s.returns, costs, selection);
    Vector out(3 * N);
    out.segment(0, N) = sol.external;
    out.segment(N, N) = sol.costs;
    for (int i = 0; i < N; ++i) out[2 * N + i] = sol.defaulted[i] ? 1.0 : 0.0;
    return out;
  });
  WelfareReport report;
  report.per_bank_returns = totals.segment(0, N);
  report.expected_costs = totals.segment(N, N);
  report.default_probability = totals.segment(2 * N, N);
  report.returns = pairwise_sum(report.per_bank_returns.data(), N);
  report.costs = pairwise_sum(report.expected_costs.data(), N);
  report.expected_defaults = pairwise_sum(report.default_probability.data(), N);
  report.total = report.returns - report.costs;
  return report;
}

double conservation_residual(const ClearingSolution& solution) {
  const double primitive = solution.external.sum() - solution.costs.sum();
  return std::abs(solution.outside_value - primitive);
}

double value_conservation_check(const Network& network, const Matrix& q,
                                const std::vector<double>& p,
                                const CostModel& costs, Selection selection) {
  return conservation_residual(clear(network, q, p, costs, selection));
}

}  // namespace netclear
