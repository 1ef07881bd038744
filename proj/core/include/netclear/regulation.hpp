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


// Regulation: caps on risky shares, ex-post bailouts, their welfare, the
// closed-form core-periphery thresholds and exhaustive policy search.

#ifndef NETCLEAR_REGULATION_HPP_
#define NETCLEAR_REGULATION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "netclear/centrality.hpp"
#include "netclear/game.hpp"

namespace netclear {

struct Policy {
  std::vector<double> caps;  // node-indexed risky-share caps; empty = none
  std::vector<int> bailout_members;
  std::vector<double> bailout_costs;  // parallel to bailout_members

  static Policy laissez_faire(int bank_count);

  double cap(int bank) const { return caps.empty() ? 1.0 : caps[bank]; }
  bool bails_out(int bank) const;
  double bailout_cost(int bank) const;
  bool is_laissez_faire() const;
  void validate(int bank_count) const;
  std::string describe() const;

  bool operator==(const Policy&) const = default;
};

// The game with every grid space capped and the bailout members cleared as
// forced solvent. Non-grid spaces accept only cap 1.
GameSpec regulated_game(const GameSpec& game, const Policy& policy);

// Node-indexed risky shares chosen under the policy: each grid bank invests
// up to its cap (-1 for non-grid banks). With verify, each cap is checked to
// be a best response in the capped space against the others at their caps;
// failures throw kCapNotBestResponse.
std::vector<double> induced_profile(const Policy& policy, const GameSpec& game,
                                    bool verify = true,
                                    double tol = kBestResponseTol);

struct PolicyOutcome {
  double welfare = 0.0;  // returns - bankruptcy costs - bailout costs
  double returns = 0.0;
  double bankruptcy_costs = 0.0;
  double bailout_costs = 0.0;
  double expected_defaults = 0.0;
  std::vector<double> shares;
};

// Expected welfare with banks at the induced profile. A bailout member costs
// c_i in every scenario where it needs support, i.e. where its own value in
// the assisted clearing would be negative.
PolicyOutcome policy_welfare(const Policy& policy, const GameSpec& game,
                             bool verify = false);

// --- Core-periphery closed forms -------------------------------------------

struct CPParams {
  int n_c = 0;
  int n_p = 0;
  double D = 0.0;
  double D0 = 0.0;
  double theta = 0.0;
  double R = 0.0;
  double r = 0.0;
  double chi = 0.0;
  int m = 1;
};

// Throws kInvalidParams unless the maintained assumptions hold: n_p a
// positive multiple of n_c, D, D0 > 0, D0 <= 1 + r, 1 <= m <= n_c,
// 1 - m/n_c <= theta < 1, theta R > 1 + r, R < D0 + (n_c - 1) D and
// chi >= R + (n_c - 2 - k^R) D.
void validate(const CPParams& params);

struct CPThresholds {
  int k_R = 0;
  int k_r = 0;
  double theta_high = 0.0;  // regulation optimal below, m > k^R
  double theta_low = 0.0;   // asymmetric above (NaN when k^r = 0)
  double theta_sym = 0.0;   // regulation optimal below, m <= k^R
  bool asym_feasible = false;  // (n_c - k^r)(D0 + k^r D) < n_c
  bool asym_window = false;    // (n_c/m)[n_c - (n_c-k^r)(D0+k^r D)] >= k^r D0
  double chi_zero_recovery = 0.0;  // R + (n_c - 2 - k^R) D
};

// floor((R - D0)/D) and floor((1 + r - D0)/D), guarded against ratios that
// land one ulp below an integer.
int sustainable_defaults(double buffer, double D);

CPThresholds cp_thresholds(const CPParams& params);

CorePeripherySpec cp_network_spec(const CPParams& params);
MCorrelationSpec cp_return_spec(const CPParams& params);

// Core banks 1..core_count choose risky shares on the default grid over their
// own risky asset (asset bank-1) and the safe asset (asset core_count).
// Other banks are pure intermediaries: no capital and no bankruptcy cost.
GameSpec core_periphery_game(const Network& network, int core_count,
                             const ScenarioSet& scenarios, double chi, double r,
                             int grid_points = kDefaultGridPoints);
GameSpec cp_game(const CPParams& params, int grid_points = kDefaultGridPoints);

// {1, 1 - D0/(1+r), 1 - (D0 + k D)/(1+r) for k = 1..k^r, 0}, deduplicated.
std::vector<double> cp_candidate_caps(const CPParams& params);

// Caps on the core banks only, everything else unregulated.
Policy core_policy(const CPParams& params, const std::vector<double>& core_caps);

// Expected welfare of core caps from a direct default-cascade count: with
// zero recovery a core bank survives exactly floor((e - D0)/D) defaulting
// counterparties. Independent of the clearing engine.
double cp_cap_welfare(const CPParams& params, const std::vector<double>& core_caps);

// Expected number of core defaults under laissez-faire, by clearing.
double cp_expected_defaults(const CPParams& params);

enum class Regime { kLaissezFaire, kSymmetricCap, kAsymmetricCap };
std::string regime_name(Regime regime);

struct CPRegimeResult {
  Regime regime = Regime::kLaissezFaire;  // of the welfare argmax
  Regime threshold_regime = Regime::kLaissezFaire;
  // Optimal core caps, one vector per optimal multiset, loosest caps on the
  // lowest-indexed banks.
  std::vector<std::vector<double>> optimal_caps;
  double welfare = 0.0;
  bool tie = false;  // optima of different regimes within tolerance
  CPThresholds thresholds;
};

// Maximizes cp_cap_welfare over multisets of candidate caps and classifies
// the optimum. threshold_regime is the classification read off theta against
// theta_sym (m <= k^R) or theta_high and theta_low (m > k^R).
CPRegimeResult cp_optimal_regime(const CPParams& params, double tol = 1e-9);

// --- Nested-split cores ----------------------------------------------------

struct NSRegimeVerdict {
  int k_R = 0;
  int k_r = 0;
  int n_clique = 0;
  int n_ind = 0;
  double theta_threshold = 0.0;
  bool threshold_holds = false;
  Policy hierarchical;
  double hierarchical_welfare = 0.0;     // by clearing
  double closed_form_hierarchical = 0.0;
  double best_symmetric_welfare = 0.0;   // nontrivial symmetric caps
  double best_symmetric_cap = 0.0;
  bool certified = false;  // hierarchical beats every nontrivial symmetric cap
};

// Uses theta, R, r, chi and m from params; D and D0 come from the nested-split layout.
// Throws kPreconditionFailed unless m > k^R and 1 <= k^r <= N^ind.
NSRegimeVerdict ns_regime_check(const NestedSplitSpec& spec,
                                const CPParams& params);

// Nested-split game with m-correlated core returns.
GameSpec ns_game(const NestedSplitNetwork& ns, const CPParams& params,
                 int grid_points = kDefaultGridPoints);

// --- Exhaustive search -----------------------------------------------------

struct SearchOptions {
  bool allow_bailouts = false;
  std::vector<double> bailout_costs;  // node-indexed, used with bailouts
  // Groups of banks whose relabeling leaves welfare unchanged; only one
  // representative per multiset is evaluated and the argmax is expanded.
  std::vector<std::vector<int>> exchangeable;
  std::size_t limit = 1'000'000;
  double tol = 1e-9;
};

struct SearchResult {
  std::vector<Policy> argmax;  // lexicographic in candidate order
  double welfare = 0.0;
  std::size_t evaluated = 0;
};

// candidate_caps is node-indexed; banks with an empty list stay at cap 1.
SearchResult optimal_policy_search(
    const GameSpec& game, const std::vector<std::vector<double>>& candidate_caps,
    const SearchOptions& options = {});

// --- Single-bank regimes ---------------------------------------------------

enum class BankRegime { kLaissezFaire, kRestrict, kBailout };
std::string bank_regime_name(BankRegime regime);

struct SingleBankRegime {
  BankRegime regime = BankRegime::kLaissezFaire;
  double cap = 1.0;
  double opportunity_cost = 0.0;  // [E p_r/(1+r) - 1] D^L
  double nfc = 0.0;
  double bailout_cost = 0.0;
  bool boundary = false;  // on one of the three dividing lines
};

// Restrict when cost < NFC and cost <= c; bail out when c < NFC and c < cost;
// otherwise laissez-faire.
SingleBankRegime classify_single_bank(double opportunity_cost, double nfc,
                                      double bailout_cost);

// Bank `bank` with the other rows of q fixed: compares full risk, the cap
// 1 - D^L/(1+r) and a bailout at cost c. Throws kCapInfeasible when
// D^L > 1 + r.
SingleBankRegime single_bank_regime(const Network& network, const Matrix& q,
                                    int bank, int risky, int safe, double r,
                                    double bailout_cost,
                                    const ScenarioSet& scenarios,
                                    const CostModel& costs,
                                    Selection selection = Selection::kGreatest);

// --- Sweeps ----------------------------------------------------------------

struct DefaultsRow {
  int m = 0;
  bool feasible = false;  // theta >= 1 - m/n_c
  double expected_defaults = 0.0;
  double closed_form = 0.0;  // (1-theta) n_c, or n_c^2 (1-theta)/m beyond k^R
};

// Laissez-faire expected core defaults for m = 1..n_c (params.m ignored).
std::vector<DefaultsRow> sweep_defaults_vs_m(const CPParams& params);

enum class RegimePlane { kExcessReturn, kBailoutCost };

struct RegimeMapSpec {
  RegimePlane plane = RegimePlane::kExcessReturn;
  double x_min = 0.0, x_max = 1.0;  // excess return E p/(1+r) - 1, or c
  int x_steps = 50;
  double nfc_min = 0.0, nfc_max = 1.0;
  int nfc_steps = 50;
  double liability = 1.0;       // D^L
  double fixed_excess = 0.1;    // used on the bailout-cost plane
  double fixed_cost = 0.1;      // used on the excess-return plane
};

struct RegimeCell {
  double x = 0.0;
  double nfc = 0.0;
  SingleBankRegime result;
};

// Row-major, x outer.
std::vector<RegimeCell> sweep_regime_map(const RegimeMapSpec& spec);

}  // namespace netclear

#endif  // NETCLEAR_REGULATION_HPP_
