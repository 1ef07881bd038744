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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "netclear/errors.hpp"
#include "netclear/game.hpp"
#include "oracle.hpp"

namespace netclear {
namespace {

constexpr double kD = 0.3, kR = 1.5, kTheta = 0.8, kRate = 0.05, kChi = 0.5;

GameSpec chain_game(int points = kDefaultGridPoints, double chi = kChi) {
  Matrix debt = Matrix::Zero(3, 3);
  debt(1, 2) = 2 * kD;
  debt(0, 1) = kD;
  GameSpec g;
  g.network = Network::from_debt(debt);
  g.scenarios = independent_two_point(1, kTheta, kR, 0.0).with_constant_asset(1 + kRate);
  g.costs = CostModel(BankruptcyCostSpec{0.0, chi});
  g.spaces = {StrategySpace(), default_grid(g.network, 1, 0, 1, kRate, points),
              default_grid(g.network, 2, 0, 1, kRate, points)};
  return g;
}

GameSpec three_bank_game(bool bank1_fixed) {
  Matrix debt = Matrix::Zero(4, 4);
  debt(1, 2) = debt(1, 3) = 1.0;
  debt(2, 3) = debt(3, 2) = 0.5;
  debt(0, 1) = 1.0;
  GameSpec g;
  g.network = Network::from_debt(debt);
  g.scenarios = independent_two_point({0.7, 0.7, 0.7}, {2.0, 2.01, 2.02}, {0, 0, 0});
  g.costs = CostModel(BankruptcyCostSpec{0.0, 0.4});
  const StrategySpace choice = StrategySpace::asset_choice({0, 1, 2});
  g.spaces = {StrategySpace(),
              bank1_fixed ? StrategySpace::fixed({1, 0, 0}) : choice, choice, choice};
  return g;
}

Profile at_shares(const GameSpec& g, double s1, double s2) {
  return {0, g.spaces[1].find_share(s1), g.spaces[2].find_share(s2)};
}

TEST(Game, ReserveCap) {
  EXPECT_NEAR(reserve_cap(2 * kD, kRate), 1 - 0.6 / 1.05, 1e-15);
}

TEST(Game, DefaultGridContainsKinks) {
  const GameSpec g = chain_game();
  const double cap = reserve_cap(2 * kD, kRate);
  EXPECT_NO_THROW(g.spaces[2].find_share(cap));
  EXPECT_NO_THROW(g.spaces[2].find_share(1.0));
  EXPECT_NO_THROW(g.spaces[2].find_share(0.0));
  EXPECT_GE(g.spaces[2].size(), 101u);
}

TEST(Game, IsolatedSafeBank) {
  Matrix debt = Matrix::Zero(2, 2);
  debt(0, 1) = 0.4;
  GameSpec g;
  g.network = Network::from_debt(debt);
  g.scenarios = independent_two_point(1, 0.5, 2.0, 0.0).with_constant_asset(1.05);
  g.spaces = {StrategySpace(), StrategySpace::fixed({0.0, 1.0})};
  EXPECT_NEAR(expected_equity(g, {0, 0}, 1), 1.05 - 0.4, 1e-15);
}

TEST(Game, ChainEquities) {
  const GameSpec g = chain_game();
  const double cap = reserve_cap(2 * kD, kRate);
  EXPECT_NEAR(expected_equity(g, at_shares(g, 1.0, cap), 2), cap * kTheta * kR, 1e-12);
  EXPECT_NEAR(expected_equity(g, at_shares(g, 1.0, 1.0), 2), kTheta * (kR - 2 * kD), 1e-12);
}

TEST(Game, ChainBestResponseIsFullRisk) {
  const GameSpec g = chain_game();
  const std::vector<std::size_t> br = best_responses(g, at_shares(g, 1.0, 1.0), 2);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_EQ(g.spaces[2].share(br[0]), 1.0);
}

TEST(Game, ThreeBankBestResponseFollowsNeighbour) {
  const GameSpec g = three_bank_game(true);
  const Profile p{0, 0, 0, 2};
  const std::vector<std::size_t> br = best_responses(g, p, 2);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_EQ(g.spaces[2].asset(br[0]), 2);
}

TEST(Game, ThreeBankEquilibriaCorrelate) {
  for (bool fixed : {true, false}) {
    const GameSpec g = three_bank_game(fixed);
    const std::vector<Profile> nash = enumerate_nash(g);
    ASSERT_FALSE(nash.empty());
    for (const Profile& p : nash) EXPECT_EQ(g.spaces[2].asset(p[2]), g.spaces[3].asset(p[3]));
  }
}

TEST(Game, SingleBankNashIsArgmax) {
  GameSpec g;
  g.network = Network::from_debt(Matrix::Zero(2, 2));
  g.scenarios = independent_two_point(2, 0.5, 2.0, 0.0);
  g.spaces = {StrategySpace(), StrategySpace::asset_choice({0, 1})};
  // Both assets have the same mean: two equilibria.
  EXPECT_EQ(enumerate_nash(g).size(), 2u);
}

TEST(Game, DominanceOnCoarseGrid) {
  const GameSpec g = chain_game(11);
  for (const DominanceReport& r : check_dominance_full_risky(g)) {
    EXPECT_TRUE(r.applicable);
    EXPECT_TRUE(r.strict) << "bank " << r.bank << " margin " << r.min_margin;
  }
}

TEST(Game, StarDominanceOnCoarseGrid) {
  GameSpec g;
  g.network = build_star(3, 0.2, 0.5);
  g.scenarios = independent_two_point(1, 0.8, 1.5, 0.0).with_constant_asset(1.05);
  g.costs = CostModel(BankruptcyCostSpec{0.0, 0.5});
  g.spaces.resize(4);
  for (int i = 1; i <= 3; ++i) g.spaces[i] = StrategySpace::uniform_grid(11, 0, 1);
  for (const DominanceReport& r : check_dominance_full_risky(g)) EXPECT_TRUE(r.strict);
}

TEST(Game, DegenerateRiskyAssetTies) {
  GameSpec g = chain_game(11);
  g.scenarios = ScenarioSet::from_scenarios({Scenario{1.0, {1.05, 1.05}}});
  for (const DominanceReport& r : check_dominance_full_risky(g)) EXPECT_FALSE(r.strict);
}

TEST(Game, ChainSocialOptimumCapsBankTwo) {
  const GameSpec g = chain_game();
  const double lhs = 2 * (1 - kTheta) * kChi;
  const double rhs = 2 * kD / (1 + kRate) * (kTheta * kR - (1 + kRate));
  ASSERT_GT(lhs, rhs);
  const SocialOptimum opt = social_optimum(g);
  ASSERT_EQ(opt.argmax.size(), 1u);
  EXPECT_NEAR(g.spaces[2].share(opt.argmax[0][2]), reserve_cap(2 * kD, kRate), 1e-15);
  const std::vector<Profile> nash = enumerate_nash(g);
  ASSERT_EQ(nash.size(), 1u);
  EXPECT_GT(opt.welfare - profile_welfare(g, nash[0]).total, 0.0);
}

TEST(Game, ChainOptimumSwitchesWithCost) {
  // Below the threshold chi the optimum leaves bank 2 fully risky.
  const double chi_switch =
      kD * (kTheta * kR - (1 + kRate)) / ((1 + kRate) * (1 - kTheta));
  const GameSpec low = chain_game(kDefaultGridPoints, 0.9 * chi_switch);
  const SocialOptimum opt = social_optimum(low);
  ASSERT_EQ(opt.argmax.size(), 1u);
  EXPECT_EQ(low.spaces[2].share(opt.argmax[0][2]), 1.0);
}

TEST(Game, ZeroCostOptimumIsFullRisk) {
  const GameSpec g = chain_game(11, 0.0);
  const SocialOptimum opt = social_optimum(g);
  ASSERT_EQ(opt.argmax.size(), 1u);
  EXPECT_EQ(g.spaces[1].share(opt.argmax[0][1]), 1.0);
  EXPECT_EQ(g.spaces[2].share(opt.argmax[0][2]), 1.0);
}

TEST(Game, ThreeBankOptimumDiversifies) {
  const GameSpec g = three_bank_game(true);
  for (const Profile& p : social_optimum(g).argmax) {
    EXPECT_NE(g.spaces[2].asset(p[2]), g.spaces[3].asset(p[3]));
  }
}

TEST(Game, CorrelationPairs) {
  // Only banks 2 and 3 carry positive net liabilities; bank 1 is a net
  // creditor, so the pairs are (2,3) and (3,2).
  const GameSpec g = three_bank_game(true);
  const auto pairs = prop2_sufficient_condition(g.network, 2.0, 0.0);
  EXPECT_EQ(pairs, (std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}));
  // In the chain bank 1 is a net creditor as well and bank 2 owes no bank.
  EXPECT_TRUE(prop2_sufficient_condition(chain_game(11).network, kR, 0.0).empty());
  const Network rich = build_core_periphery({3, 3, 0.2, 0.0001});
  Matrix debt = rich.debt();
  for (int i = 1; i <= 3; ++i) debt(i, 0) = 10.0;
  EXPECT_TRUE(prop2_sufficient_condition(Network::from_debt(debt), 2.0, 0.0).empty());
}

TEST(Game, IndependenceVerdicts) {
  const Prop3Verdict chain = prop3_sufficient_condition(chain_game(11).network, 0.0);
  EXPECT_TRUE(chain.all);
  EXPECT_TRUE(chain.acyclic[1] && chain.acyclic[2]);
  const Network cp = build_core_periphery({3, 3, 0.2, 0.8});
  const Prop3Verdict v = prop3_sufficient_condition(cp, 0.0);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_FALSE(v.acyclic[i]);
    EXPECT_TRUE(v.net_debtor[i]);
  }
  EXPECT_TRUE(all_on_asset_is_nash(three_bank_game(false), 1));
}

TEST(Game, UniquenessOnCompleteNetwork) {
  const int n = 3;
  const double D = 0.6;
  // Equal mutual debts alone leave a low bank exactly at solvency; the
  // outside debt makes the differences strictly increasing.
  Matrix debt = Matrix::Constant(n + 1, n + 1, D);
  debt.col(0).setZero();
  for (int i = 0; i <= n; ++i) debt(i, i) = 0.0;
  debt.row(0).setConstant(0.1);
  debt(0, 0) = 0.0;
  GameSpec g;
  g.network = Network::from_debt(debt);
  g.scenarios = independent_two_point(n, 0.7, 1.5, 0.0);
  g.costs = CostModel(BankruptcyCostSpec{0.0, 0.3});
  g.spaces = {StrategySpace(), StrategySpace::asset_choice({0, 1, 2}),
              StrategySpace::asset_choice({0, 1, 2}), StrategySpace::asset_choice({0, 1, 2})};
  const Prop4Verdict v = prop4_uniqueness_condition(g, 1.5, 0.0);
  EXPECT_TRUE(v.condition);
  EXPECT_TRUE(v.nash_checked);
  EXPECT_FALSE(v.nash.empty());
  EXPECT_TRUE(v.all_correlated);
}

TEST(Game, UniquenessFailsOnThreeBankNetwork) {
  const Prop4Verdict v = prop4_uniqueness_condition(three_bank_game(false), 2.0, 0.0);
  EXPECT_FALSE(v.condition);
  EXPECT_FALSE(v.failing_banks.empty());
}

TEST(Game, UniquenessVacuousForSingleBank) {
  GameSpec g;
  g.network = Network::from_debt(Matrix::Zero(2, 2));
  g.scenarios = independent_two_point(1, 0.5, 2.0, 0.0);
  g.spaces = {StrategySpace(), StrategySpace::asset_choice({0})};
  EXPECT_TRUE(prop4_uniqueness_condition(g, 2.0, 0.0).condition);
}

TEST(Game, SpaceTooLarge) {
  GameSpec g;
  g.network = build_core_periphery({4, 4, 0.2, 0.8});
  g.scenarios = independent_two_point(1, 0.9, 1.5, 0.0).with_constant_asset(1.05);
  g.spaces.assign(9, StrategySpace::fixed({0.0, 1.0}));
  for (int i = 1; i <= 4; ++i) g.spaces[i] = StrategySpace::uniform_grid(101, 0, 1);
  try {
    enumerate_nash(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpaceTooLarge);
  }
}

// Brute-force Nash from expected_equity, independent of the payoff table.
std::set<Profile> naive_nash(const GameSpec& g) {
  const ProfileSpace space(g);
  std::set<Profile> out;
  for (std::size_t k = 0; k < space.count(); ++k) {
    const Profile p = space.decode(k);
    bool stable = true;
    for (int i = 1; i < static_cast<int>(p.size()) && stable; ++i) {
      const double here = expected_equity(g, p, i);
      Profile dev = p;
      for (std::size_t s = 0; s < g.spaces[i].size() && stable; ++s) {
        dev[i] = s;
        stable = expected_equity(g, dev, i) <= here + kBestResponseTol;
      }
    }
    if (stable) out.insert(p);
  }
  return out;
}

GameSpec random_asset_game(std::mt19937_64& rng, double scale) {
  const testing::RandomInstance inst = testing::random_instance(rng, 2, 3);
  const int n = inst.network.bank_count();
  GameSpec g;
  g.network = Network::from_debt(inst.network.debt() * scale);
  std::vector<double> theta(n, 0.7), high(n), low(n, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < n; ++k) high[k] = 1.0 + unit(rng);
  g.scenarios = independent_two_point(theta, high, low);
  std::vector<BankruptcyCostSpec> specs(n + 1);
  for (int i = 1; i <= n; ++i) specs[i] = {inst.costs.at(i).a, inst.costs.at(i).chi * scale};
  g.costs = CostModel(specs);
  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  g.spaces.assign(n + 1, StrategySpace::asset_choice(all));
  g.spaces[0] = StrategySpace();
  g.capital.assign(n + 1, scale);
  return g;
}

TEST(GameProperty, NashMatchesBestResponseDefinition) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const GameSpec g = random_asset_game(rng, 1.0);
    const std::vector<Profile> nash = enumerate_nash(g);
    EXPECT_EQ(std::set<Profile>(nash.begin(), nash.end()), naive_nash(g));
    EXPECT_TRUE(std::is_sorted(nash.begin(), nash.end()));
    for (const Profile& p : nash) EXPECT_TRUE(is_nash(g, p));
  }
}

TEST(GameProperty, ScalingLeavesNashUnchanged) {
  for (int trial = 0; trial < 20; ++trial) {
    std::mt19937_64 a(100 + trial), b(100 + trial);
    const GameSpec unit = random_asset_game(a, 1.0);
    const GameSpec scaled = random_asset_game(b, 3.0);
    EXPECT_EQ(enumerate_nash(unit), enumerate_nash(scaled)) << "trial " << trial;
  }
}

TEST(GameProperty, CorrelationPairsRuleOutDistinctAssets) {
  std::mt19937_64 rng(77);
  int applicable = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GameSpec g = random_asset_game(rng, 1.0);
    const int n = g.network.bank_count();
    double r_high = 1e300;
    for (const Scenario& sc : g.scenarios.scenarios()) {
      for (double x : sc.returns) {
        if (x > 0.0) r_high = std::min(r_high, x);
      }
    }
    if (prop2_sufficient_condition(g.network, r_high, 0.0).empty()) continue;
    ++applicable;
    for (const Profile& p : enumerate_nash(g)) {
      std::set<int> assets;
      for (int i = 1; i <= n; ++i) assets.insert(g.spaces[i].asset(p[i]));
      EXPECT_LT(static_cast<int>(assets.size()), n) << "trial " << trial;
    }
  }
  EXPECT_GT(applicable, 0);
}

}  // namespace
}  // namespace netclear
