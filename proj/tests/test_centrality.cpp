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

#include <random>

#include "netclear/centrality.hpp"
#include "netclear/regulation.hpp"
#include "oracle.hpp"

namespace netclear {
namespace {

// Bank i on asset i-1, the safe asset last.
Matrix own_assets(int n, int nodes) {
  Matrix q = Matrix::Zero(nodes, n + 1);
  for (int i = 1; i <= n; ++i) q(i, i - 1) = 1.0;
  return q;
}

TEST(Centrality, IdenticalCounterfactualIsZero) {
  const Network net = build_star(3, 0.1, 1.0);
  const Matrix q = own_assets(3, 4);
  const ScenarioSet sc = m_correlated({3, 0.9, 1, 2.0, 0.03});
  const CostModel costs(BankruptcyCostSpec{0.0, 5.0});
  for (int i = 1; i <= 3; ++i) {
    std::vector<double> row(q.cols());
    for (int k = 0; k < q.cols(); ++k) row[k] = q(i, k);
    EXPECT_EQ(nfc(net, q, i, row, sc, costs), 0.0);
  }
}

TEST(Centrality, StarCenterAndSpokes) {
  const int n = 3;
  const double D = 0.02, r = 0.03;
  const Network net = build_star(n, D, 1.0);
  const Matrix q = own_assets(n, n + 1);
  const ScenarioSet sc = m_correlated({n, 0.9, n, 2.0, r});
  const CostModel costs(BankruptcyCostSpec{0.0, 5.0});
  const std::vector<RankedBank> ranked = nfc_ranking(net, q, to_safe_asset(n), sc, costs);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked.back().bank, 1);
  EXPECT_NEAR(ranked.back().nfc, 0.0, 1e-12);
  EXPECT_GT(ranked[0].nfc, 0.0);
  // Spokes are symmetric: equal NFC, index order among ties.
  EXPECT_EQ(ranked[0].bank, 2);
  EXPECT_EQ(ranked[0].nfc, ranked[1].nfc);
}

TEST(Centrality, NeverDefaultingBankHasNoBailoutValue) {
  Matrix debt = Matrix::Zero(3, 3);
  debt(1, 2) = 0.5;
  const Network net = Network::from_debt(debt);
  Matrix q = Matrix::Zero(3, 2);
  q(1, 0) = 1.0;
  q(2, 1) = 1.0;  // bank 2 safe, 1.05 > 0.5
  const ScenarioSet sc = independent_two_point(1, 0.5, 2.0, 0.0).with_constant_asset(1.05);
  EXPECT_EQ(bailout_centrality(net, q, 2, sc, CostModel(BankruptcyCostSpec{0, 1})), 0.0);
}

TEST(Centrality, CoreBankBailoutBreaksCascade) {
  CPParams p;
  p.n_c = 3;
  p.n_p = 3;
  p.D = 0.2;
  p.D0 = 0.8;
  p.theta = 0.97;
  p.R = 1.1;
  p.r = 0.05;
  p.chi = 2.0;
  p.m = 2;
  ASSERT_GT(p.m, cp_thresholds(p).k_R);
  const Network net = build_core_periphery(cp_network_spec(p));
  const ScenarioSet sc = m_correlated(cp_return_spec(p));
  const Matrix q = own_assets(3, net.node_count());
  EXPECT_GT(bailout_centrality(net, q, 1, sc, CostModel(BankruptcyCostSpec{0, p.chi})), 0.0);
}

TEST(Centrality, BailoutEqualsSafePortfolioNfc) {
  // Core bank liabilities 2D + D0 = 1.0 <= 1 + r, so the safe portfolio
  // guarantees full payment.
  const Network net = build_core_periphery({3, 3, 0.2, 0.6});
  const ScenarioSet sc = m_correlated({3, 0.9, 2, 1.3, 0.05});
  const Matrix q = own_assets(3, net.node_count());
  const CostModel costs(BankruptcyCostSpec{0.0, 2.0});
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NEAR(bailout_centrality(net, q, i, sc, costs),
                nfc(net, q, i, to_safe_asset(3)(i, q), sc, costs), 1e-12);
  }
}

TEST(CentralityProperty, AntisymmetricInCounterfactual) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const testing::RandomInstance inst = testing::random_instance(rng, 2, 5);
    const int n = inst.network.bank_count();
    const ScenarioSet sc = independent_two_point(2, 0.7, 2.0, 0.0).with_constant_asset(1.05);
    Matrix q = Matrix::Zero(n + 1, 3);
    for (int i = 1; i <= n; ++i) {
      const double w = unit(rng);
      q(i, i % 2) = w;
      q(i, 2) = 1.0 - w;
    }
    const int bank = 1 + trial % n;
    const std::vector<double> alt{0.0, 0.0, 1.0};
    Matrix q_alt = q;
    for (int k = 0; k < 3; ++k) q_alt(bank, k) = alt[k];
    std::vector<double> original(3);
    for (int k = 0; k < 3; ++k) original[k] = q(bank, k);
    EXPECT_NEAR(nfc(inst.network, q, bank, alt, sc, inst.costs),
                -nfc(inst.network, q_alt, bank, original, sc, inst.costs), 1e-12);
  }
}

// Fixed costs only: with a > 0 a bank that still defaults after the bailout
// has more assets and so a larger proportional cost.
TEST(CentralityProperty, BailoutNonnegativeUnderFixedCosts) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const testing::RandomInstance inst = testing::random_instance(rng, 2, 5);
    const int n = inst.network.bank_count();
    std::vector<BankruptcyCostSpec> specs(n + 1);
    for (int i = 1; i <= n; ++i) specs[i] = {0.0, inst.costs.at(i).chi};
    const CostModel costs(specs);
    const ScenarioSet sc = independent_two_point(n, 0.6, 1.8, 0.0);
    const Matrix q = own_assets(n, n + 1).leftCols(n);
    for (int i = 1; i <= n; ++i) {
      EXPECT_GE(bailout_centrality(inst.network, q, i, sc, costs), -1e-12);
    }
  }
}

TEST(CentralityProperty, SymmetricCliqueAllEqual) {
  const Network net = build_core_periphery({4, 4, 0.2, 0.8});
  const ScenarioSet sc = m_correlated({4, 0.9, 2, 1.3, 0.05});
  const Matrix q = own_assets(4, net.node_count());
  const CostModel costs(BankruptcyCostSpec{0.0, 2.0});
  const std::vector<CentralityRow> rows =
      centrality_report(net, q, to_safe_asset(4), sc, costs);
  for (int i = 1; i < 4; ++i) {
    EXPECT_NEAR(rows[i].nfc, rows[0].nfc, 1e-12);
    EXPECT_NEAR(rows[i].bailout, rows[0].bailout, 1e-12);
  }
}

TEST(CentralityProperty, AutomorphismPermutesCentralities) {
  // Swapping spokes 2 and 3 of a star swaps their centralities.
  const Network net = build_star(3, 0.1, 1.0);
  const ScenarioSet sc = independent_two_point({0.9, 0.8, 0.7}, {2, 2, 2}, {0, 0, 0})
                             .with_constant_asset(1.03);
  const Matrix q = own_assets(3, 4);
  // Relabeled economy: bank 2 now holds the 0.7 asset and bank 3 the 0.8 one.
  const ScenarioSet swapped_sc =
      independent_two_point({0.9, 0.7, 0.8}, {2, 2, 2}, {0, 0, 0}).with_constant_asset(1.03);
  const CostModel costs(BankruptcyCostSpec{0.1, 1.0});
  const auto a = centrality_report(net, q, to_safe_asset(3), sc, costs);
  const auto b = centrality_report(net, q, to_safe_asset(3), swapped_sc, costs);
  EXPECT_NEAR(a[1].nfc, b[2].nfc, 1e-12);
  EXPECT_NEAR(a[2].nfc, b[1].nfc, 1e-12);
  EXPECT_NEAR(a[0].bailout, b[0].bailout, 1e-12);
}

}  // namespace
}  // namespace netclear
