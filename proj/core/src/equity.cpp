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

#include "netclear/equity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "engine.hpp"
#include "netclear/errors.hpp"

namespace netclear {

namespace {

constexpr double kShareTol = 1e-12;

}  // namespace

EquityMatrix EquityMatrix::from_bank_matrix(const Matrix& S) {
  if (S.rows() != S.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "equity matrix must be square");
  }
  const int n = static_cast<int>(S.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = S(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidSpec, "equity shares must lie in [0, 1]");
      }
    }
    if (S(i, i) != 0.0) {
      throw Error(ErrorCode::kInvalidSpec, "a bank cannot hold its own equity");
    }
    if (S.col(i).sum() > 1.0 + kShareTol) {
      throw Error(ErrorCode::kInvalidSpec,
                  "more than 100% of bank " + std::to_string(i + 1) +
                      " is held by banks");
    }
  }
  // A bank's equity reaches outside investors directly or through a holder
  // whose own equity does.
  std::vector<char> reaches(n, 0);
  for (int j = 0; j < n; ++j) reaches[j] = 1.0 - S.col(j).sum() > kShareTol;
  for (bool changed = true; changed;) {
    changed = false;
    for (int j = 0; j < n; ++j) {
      if (reaches[j]) continue;
      for (int i = 0; i < n; ++i) {
        if (S(i, j) > 0.0 && reaches[i]) {
          reaches[j] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!reaches[j]) {
      throw Error(ErrorCode::kSingularOwnership,
                  "no equity path from bank " + std::to_string(j + 1) +
                      " to an outside investor");
    }
  }
  EquityMatrix out;
  out.node_ = Matrix::Zero(n + 1, n + 1);
  out.node_.block(1, 1, n, n) = S;
  return out;
}

EquityMatrix EquityMatrix::zero(int bank_count) {
  EquityMatrix out;
  out.node_ = Matrix::Zero(bank_count + 1, bank_count + 1);
  return out;
}

double EquityMatrix::outside_share(int issuer) const {
  return 1.0 - node_.col(issuer).sum();
}

Matrix EquityMatrix::bank_matrix() const {
  const int n = bank_count();
  return node_.block(1, 1, n, n);
}

ClearingSolution clear_debt_equity_with_assets(const Network& network,
                                               const EquityMatrix& S,
                                               const Vector& external,
                                               const CostModel& costs,
                                               const ClearingOptions& options) {
  if (S.bank_count() != network.bank_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "equity and debt matrices cover different banks");
  }
  detail::EngineInput in;
  in.network = &network;
  in.external = &external;
  in.costs = &costs;
  in.selection = options.selection;
  in.forced = &options.forced_solvent;
  in.equity = S.is_zero() ? nullptr : &S.node_matrix();
  return detail::solve(in);
}

ClearingSolution clear_debt_equity(const Network& network,
                                   const EquityMatrix& S, const Matrix& q,
                                   const std::vector<double>& p,
                                   const CostModel& costs,
                                   Selection selection) {
  if (q.rows() != network.node_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "portfolio needs one row per node");
  }
  ClearingOptions options;
  options.selection = selection;
  return clear_debt_equity_with_assets(network, S, external_values(q, p),
                                       costs, options);
}

double conservation_check_equity(const Network& network, const EquityMatrix& S,
                                 const Matrix& q, const std::vector<double>& p,
                                 const CostModel& costs, Selection selection) {
  return conservation_residual(
      clear_debt_equity(network, S, q, p, costs, selection));
}

FeedbackRisk feedback_risk(const Network& network, const EquityMatrix& S,
                           int bank) {
  const int n = network.bank_count();
  if (bank < 1 || bank > n || S.bank_count() != n) {
    throw Error(ErrorCode::kInvalidSpec, "bank out of range");
  }
  const Matrix& D = network.debt();
  // Breadth-first search over (node, debt edge seen) states.
  const auto state = [n](int node, bool debt) { return node + (debt ? n + 1 : 0); };
  std::vector<int> parent(2 * (n + 1), -2);
  std::deque<int> queue;
  for (int first = 1; first <= n; ++first) {
    if (S.holding(first, bank) > 0.0) {
      const int s = state(first, D(first, bank) > 0.0);
      if (parent[s] == -2) {
        parent[s] = -1;
        queue.push_back(s);
      }
    }
  }
  FeedbackRisk out;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const int u = s % (n + 1);
    const bool debt = s > n;
    if (u == bank && debt) {
      std::vector<int> path;
      for (int t = s; t != -1; t = parent[t]) path.push_back(t % (n + 1));
      path.push_back(bank);
      std::reverse(path.begin(), path.end());
      out.at_risk = true;
      out.cycle = std::move(path);
      return out;
    }
    if (u == bank) continue;  // an all-equity loop back to the start
    for (int v = 1; v <= n; ++v) {
      const bool by_debt = D(v, u) > 0.0;
      if (!by_debt && !(S.holding(v, u) > 0.0)) continue;
      const int t = state(v, debt || by_debt);
      if (parent[t] != -2) continue;
      parent[t] = s;
      queue.push_back(t);
    }
  }
  return out;
}

Vector equity_claims_on(const EquityMatrix& S) {
  const int n = S.bank_count();
  const Matrix Sb = S.bank_matrix();
  const Matrix total =
      (Matrix::Identity(n, n) - Sb).partialPivLu().solve(Sb);
  Vector out = Vector::Zero(n + 1);
  for (int j = 0; j < n; ++j) out[j + 1] = total.col(j).sum();
  return out;
}

double no_feedback_bound(double theta, double R, double r) {
  return (theta * R - (1.0 + r)) /
         ((1.0 - theta) * (1.0 - theta) * (1.0 + r));
}

CountervailingResult countervailing_example(double d, double s, double theta,
                                            double R, double r, double chi,
                                            int grid_points) {
  if (!(d > 0.0 && s > 0.0 && s < 1.0 && theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::kPreconditionFailed,
                "need d > 0, 0 < s < 1 and 0 < theta < 1");
  }
  if (s * (1.0 + r) < d) {
    throw Error(ErrorCode::kPreconditionFailed,
                "bank 1 cannot keep bank 2 solvent: s (1+r) < d");
  }
  if (chi < 0.0) chi = d + 1.0;
  if (chi < d) {
    throw Error(ErrorCode::kPreconditionFailed,
                "chi must be at least d for zero recovery");
  }
  CountervailingResult out;
  const double safe = 1.0 + r;
  const double ratio = (1.0 - s) / s;
  out.q1_star = 1.0 - ratio * d / safe;
  out.lhs = 1.0 - theta * (2.0 - theta);
  out.rhs = ratio * (theta * R - safe) / safe;
  out.prefers_safe = out.lhs > out.rhs;
  out.closed_form_risky = theta * (R + (2.0 - theta) * d);
  out.closed_form_cap = theta * R + d - d * ratio / safe * (theta * R - safe);

  Matrix debt = Matrix::Zero(3, 3);
  debt(1, 2) = d;
  const Network net = Network::from_debt(debt);
  Matrix holdings = Matrix::Zero(2, 2);
  holdings(1, 0) = s;
  const EquityMatrix S = EquityMatrix::from_bank_matrix(holdings);
  const ScenarioSet scenarios =
      independent_two_point(2, theta, R, 0.0).with_constant_asset(safe);
  const CostModel costs(BankruptcyCostSpec{0.0, chi});

  const auto equity_of_bank1 = [&](double share) {
    Matrix q = Matrix::Zero(3, 3);
    q(1, 0) = share;
    q(1, 2) = 1.0 - share;
    q(2, 1) = 1.0;
    return expectation(scenarios, [&](const Scenario& sc) {
      const ClearingSolution sol =
          clear_debt_equity(net, S, q, sc.returns, costs);
      return std::max(sol.values[1], 0.0);
    });
  };

  std::vector<double> grid;
  for (int k = 0; k < grid_points; ++k) {
    grid.push_back(static_cast<double>(k) / (grid_points - 1));
  }
  grid.push_back(out.q1_star);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> payoff;
  double best = -1e300;
  for (double share : grid) {
    payoff.push_back(equity_of_bank1(share));
    best = std::max(best, payoff.back());
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (payoff[k] >= best - 1e-9) out.best_responses.push_back(grid[k]);
    if (grid[k] == 1.0) out.engine_risky = payoff[k];
    if (grid[k] == out.q1_star) out.engine_cap = payoff[k];
  }
  const bool unique = out.best_responses.size() == 1;
  const double expected = out.prefers_safe ? out.q1_star : 1.0;
  out.cross_validated =
      unique && out.best_responses.front() == expected &&
      std::abs(out.engine_risky - out.closed_form_risky) < 1e-9 &&
      std::abs(out.engine_cap - out.closed_form_cap) < 1e-9;
  return out;
}

}  // namespace netclear
