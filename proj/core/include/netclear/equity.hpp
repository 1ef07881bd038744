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

// Debt plus cross-held equity.
//
// Bank i owns the fraction S_ij of bank j's equity; outside investors own
// S_0j = 1 - sum_i S_ij. A defaulting bank's equity is worth nothing, so its
// column of S drops out, and values solve
//
//   V = q p + d^A + S(V) V^+ - D^L - b.

#ifndef NETCLEAR_EQUITY_HPP_
#define NETCLEAR_EQUITY_HPP_

#include <vector>

#include "netclear/clearing.hpp"

namespace netclear {

class EquityMatrix {
 public:
  EquityMatrix() = default;

  // S is n x n over banks: S(i-1, j-1) is bank i's share of bank j. Throws
  // kInvalidSpec for entries outside [0, 1], self-holdings or column sums
  // above 1, and kSingularOwnership when some bank's equity never reaches an
  // outside investor.
  static EquityMatrix from_bank_matrix(const Matrix& S);
  static EquityMatrix zero(int bank_count);

  int bank_count() const { return static_cast<int>(node_.rows()) - 1; }
  double holding(int holder, int issuer) const { return node_(holder, issuer); }
  double outside_share(int issuer) const;
  bool is_zero() const { return node_.isZero(0.0); }

  // (n+1) x (n+1) with row and column 0 zero.
  const Matrix& node_matrix() const { return node_; }
  Matrix bank_matrix() const;

 private:
  Matrix node_ = Matrix::Zero(1, 1);
};

ClearingSolution clear_debt_equity(const Network& network,
                                   const EquityMatrix& S, const Matrix& q,
                                   const std::vector<double>& p,
                                   const CostModel& costs,
                                   Selection selection = Selection::kGreatest);

ClearingSolution clear_debt_equity_with_assets(
    const Network& network, const EquityMatrix& S, const Vector& external,
    const CostModel& costs, const ClearingOptions& options = {});

double conservation_check_equity(const Network& network, const EquityMatrix& S,
                                 const Matrix& q, const std::vector<double>& p,
                                 const CostModel& costs,
                                 Selection selection = Selection::kGreatest);

struct FeedbackRisk {
  bool at_risk = false;
  // i = i_0, i_1, ..., i_K = i, where i_1 holds equity in i and each step
  // i_{l-1} -> i_l means i_l has a debt or equity claim on i_{l-1}.
  std::vector<int> cycle;
};

// True when a claim cycle starting with an equity holding in bank i and
// containing at least one debt claim returns to i.
FeedbackRisk feedback_risk(const Network& network, const EquityMatrix& S,
                           int bank);

// Column sums of (I - S)^{-1} S over banks: the total direct and indirect
// equity claims held on each bank (node-indexed, entry 0 unused).
Vector equity_claims_on(const EquityMatrix& S);

// (theta R - (1+r)) / ((1-theta)^2 (1+r)).
double no_feedback_bound(double theta, double R, double r);

// Two banks: bank 2 owes d to bank 1 and holds a share s of bank 1's equity.
// Each bank can hold its own risky asset (R with probability theta, else 0,
// independent) and the safe asset 1 + r. Bank 2 is fully risky.
struct CountervailingResult {
  double q1_star = 0.0;        // largest risky share keeping bank 2 solvent
  bool prefers_safe = false;   // closed-form comparison
  double lhs = 0.0;            // 1 - theta(2 - theta)
  double rhs = 0.0;            // ((1-s)/s)(theta R - (1+r))/(1+r)
  double closed_form_risky = 0.0;
  double closed_form_cap = 0.0;
  double engine_risky = 0.0;   // E[V_1^+] at q_1 = 1 through the clearing
  double engine_cap = 0.0;     // E[V_1^+] at q_1 = q1_star
  std::vector<double> best_responses;  // argmax over the grid plus q1_star
  bool cross_validated = false;
};

// chi is the fixed bankruptcy cost of the network; it must be large enough
// for a defaulting bank 2 to repay nothing (chi >= d). Throws
// kPreconditionFailed unless s (1 + r) >= d.
CountervailingResult countervailing_example(double d, double s, double theta,
                                            double R, double r,
                                            double chi = -1.0,
                                            int grid_points = 101);

}  // namespace netclear

#endif  // NETCLEAR_EQUITY_HPP_
