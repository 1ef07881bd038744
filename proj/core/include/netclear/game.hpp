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


// The investment game: each bank picks a portfolio from a finite strategy
// space to maximize the expected equity value E[V_i^+] of its shareholders.

#ifndef NETCLEAR_GAME_HPP_
#define NETCLEAR_GAME_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netclear/clearing.hpp"

namespace netclear {

inline constexpr double kBestResponseTol = 1e-9;
inline constexpr std::size_t kMaxNashProfiles = 1'000'000;
inline constexpr std::size_t kMaxDominanceProfiles = 20'000'000;
inline constexpr int kDefaultGridPoints = 101;

// 1 - need / (1 + r): the largest risky share that still leaves `need` in
// the safe asset.
double reserve_cap(double need, double r);

class StrategySpace {
 public:
  enum class Kind { kRiskyShareGrid, kAssetChoice, kFixed };

  StrategySpace() = default;

  // Shares of capital in the risky asset, the rest in the safe asset. The
  // grid is sorted and deduplicated; it must lie in [0, 1] and contain both
  // endpoints unless `allow_partial` is set (capped spaces).
  static StrategySpace risky_share_grid(std::vector<double> shares, int risky,
                                        int safe, bool allow_partial = false);
  // `points` uniform shares plus the given kinks.
  static StrategySpace uniform_grid(int points, int risky, int safe,
                                    const std::vector<double>& kinks = {});
  // Full investment in one of the listed assets.
  static StrategySpace asset_choice(std::vector<int> assets);
  // A single portfolio (fractions of capital per asset).
  static StrategySpace fixed(std::vector<double> weights);

  Kind kind() const { return kind_; }
  std::size_t size() const;

  const std::vector<double>& shares() const { return shares_; }
  int risky_asset() const { return risky_; }
  int safe_asset() const { return safe_; }
  const std::vector<int>& assets() const { return assets_; }

  // Fractions of capital per asset for strategy k.
  std::vector<double> weights(std::size_t k, int asset_count) const;
  // Share of capital in the risky asset (grids), or -1.
  double share(std::size_t k) const;
  // Asset held (asset choice), or -1.
  int asset(std::size_t k) const;
  std::string describe(std::size_t k) const;

  // Index of the grid point equal to s, or size() when absent.
  std::size_t find_share(double s) const;
  // Grid points not above cap, plus cap itself.
  StrategySpace capped(double cap) const;

  void validate(int asset_count) const;

 private:
  Kind kind_ = Kind::kFixed;
  std::vector<double> shares_;
  int risky_ = 0;
  int safe_ = 1;
  std::vector<int> assets_;
  std::vector<double> fixed_;
};

// Risky shares at which bank i's solvency switches when it loses its k
// largest interbank claims (k = 0, 1, ...) or all claims: 1 - need / (1+r)
// for need = D^L - D^A + lost_k and need = D^L, restricted to (0, 1).
std::vector<double> solvency_kinks(const Network& network, int bank, double r);

// The default grid for bank i: 101 uniform shares plus its solvency kinks.
StrategySpace default_grid(const Network& network, int bank, int risky,
                           int safe, double r,
                           int points = kDefaultGridPoints);

struct GameSpec {
  Network network;
  ScenarioSet scenarios;
  CostModel costs;
  Selection selection = Selection::kGreatest;
  std::vector<StrategySpace> spaces;  // node-indexed; entry 0 ignored
  std::vector<double> capital;        // node-indexed; empty means 1 each
  std::vector<int> forced_solvent;    // banks cleared as bailed out

  double capital_of(int bank) const;
  void validate() const;
};

// Node-indexed strategy indices; entry 0 is ignored.
using Profile = std::vector<std::size_t>;

// Mixed-radix encoding of profiles, bank 1 most significant, so index order
// is lexicographic profile order.
class ProfileSpace {
 public:
  explicit ProfileSpace(const GameSpec& game);

  // Number of profiles, saturating at SIZE_MAX on overflow.
  std::size_t count() const { return count_; }
  std::size_t stride(int bank) const { return stride_[bank]; }
  std::size_t radix(int bank) const { return radix_[bank]; }
  Profile decode(std::size_t index) const;
  std::size_t encode(const Profile& profile) const;

 private:
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> stride_;
  std::size_t count_ = 1;
};

// (n+1) x K holdings: capital times the strategy weights.
Matrix portfolio(const GameSpec& game, const Profile& profile);

// E[V_i^+] for every bank (node-indexed, entry 0 is 0).
Vector expected_equities(const GameSpec& game, const Profile& profile);
double expected_equity(const GameSpec& game, const Profile& profile, int bank);

// Expected returns minus expected bankruptcy costs of the profile.
WelfareReport profile_welfare(const GameSpec& game, const Profile& profile);

// Every strategy of `bank` within tol of its best payoff against the rest of
// the profile. Ties are all reported.
std::vector<std::size_t> best_responses(const GameSpec& game,
                                        const Profile& profile, int bank,
                                        double tol = kBestResponseTol);
bool is_nash(const GameSpec& game, const Profile& profile,
             double tol = kBestResponseTol);

// Expected equity of every bank and expected welfare for every profile.
class PayoffTable {
 public:
  // Throws kSpaceTooLarge when the product space exceeds limit.
  static PayoffTable build(const GameSpec& game, std::size_t limit);

  const ProfileSpace& space() const { return space_; }
  std::size_t count() const { return space_.count(); }
  double equity(std::size_t profile, int bank) const {
    return data_[profile * width_ + bank - 1];
  }
  double welfare(std::size_t profile) const {
    return data_[profile * width_ + width_ - 1];
  }
  // Largest payoff of `bank` over its own strategies, others as in profile.
  double best_payoff(std::size_t profile, int bank) const;

 private:
  PayoffTable(ProfileSpace space, int banks);

  ProfileSpace space_;
  int banks_ = 0;
  std::size_t width_ = 1;
  std::vector<double> data_;
};

// All pure Nash equilibria in lexicographic order. Throws kSpaceTooLarge
// above kMaxNashProfiles.
std::vector<Profile> enumerate_nash(const GameSpec& game,
                                    double tol = kBestResponseTol);
std::vector<Profile> nash_from_table(const PayoffTable& table,
                                     double tol = kBestResponseTol);

struct DominanceReport {
  int bank = 0;
  bool applicable = false;  // risky-share grid containing 1
  bool strict = false;      // min_margin > tol
  double min_margin = 0.0;  // min over opponents of E[V^+](1) - best other
  Profile worst;            // a profile attaining min_margin
};

// Checks whether investing fully in the risky asset strictly beats every
// other grid point against every opponent profile. Throws kSpaceTooLarge
// above kMaxDominanceProfiles.
std::vector<DominanceReport> check_dominance_full_risky(
    const GameSpec& game, double tol = 1e-12);

struct SocialOptimum {
  std::vector<Profile> argmax;
  double welfare = 0.0;
};

// Welfare-maximizing profiles over the game's strategy spaces, which act as
// the planner's choice set. Throws kSpaceTooLarge above kMaxNashProfiles.
SocialOptimum social_optimum(const GameSpec& game,
                             double tol = kBestResponseTol);

// Pairs (i, j) with D_ij > 0, R_low <= D_i^L - D_i^A < R_high and
// R_low < D_j^L - D_j^A. Any such pair rules out independent portfolios.
std::vector<std::pair<int, int>> prop2_sufficient_condition(
    const Network& network, double R_high, double R_low);

struct Prop3Verdict {
  std::vector<char> acyclic;        // not on a directed debt cycle among banks
  std::vector<char> low_liability;  // D^L <= R_low
  std::vector<char> net_debtor;     // D^L - D^A >= R_low
  std::vector<char> satisfied;      // any of the three
  bool all = false;
};

// Node-indexed per-bank verdicts; entry 0 unused.
Prop3Verdict prop3_sufficient_condition(const Network& network, double R_low);

// Whether the profile in which every bank invests fully in `asset` is a Nash
// equilibrium of an asset-choice game.
bool all_on_asset_is_nash(const GameSpec& game, int asset,
                          double tol = kBestResponseTol);

struct Prop4Verdict {
  bool condition = false;          // gain from own high strictly increasing
  std::vector<int> failing_banks;  // banks violating it
  bool nash_checked = false;
  std::vector<Profile> nash;
  bool all_correlated = false;     // every Nash puts all banks on one asset
};

// Evaluates, for every bank and every pattern of other banks' realizations in
// {R_high, R_low}, the equity gain V_i^+(own high) - V_i^+(own low), and
// requires it to be strictly larger whenever strictly more others are high.
// When that holds the game's Nash equilibria are enumerated and checked.
Prop4Verdict prop4_uniqueness_condition(const GameSpec& game, double R_high,
                                        double R_low,
                                        double tol = kBestResponseTol);

}  // namespace netclear

#endif  // NETCLEAR_GAME_HPP_
