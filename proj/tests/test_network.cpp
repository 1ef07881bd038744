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

#include "netclear/errors.hpp"
#include "netclear/network.hpp"
#include "oracle.hpp"

namespace netclear {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParseError;
}

// Banks each bank has a mutual claim with, among banks 1..core.
std::vector<int> core_counterparties(const Network& net, int bank, int core) {
  std::vector<int> out;
  for (int j = 1; j <= core; ++j) {
    if (j != bank && net.debt(bank, j) > 0.0 && net.debt(j, bank) > 0.0) out.push_back(j);
  }
  return out;
}

TEST(Network, OneBankWithoutDebts) {
  const Network net = build_general(Matrix::Zero(2, 2));
  EXPECT_EQ(net.bank_count(), 1);
  EXPECT_EQ(net.nominal_assets(1), 0.0);
  EXPECT_EQ(net.nominal_liabilities(1), 0.0);
}

TEST(Network, TwoBankChainTotals) {
  const double D = 0.3;
  Matrix debt = Matrix::Zero(3, 3);
  debt(1, 2) = 2 * D;
  debt(0, 1) = D;
  const Network net = build_general(debt);
  EXPECT_DOUBLE_EQ(net.nominal_liabilities(2), 2 * D);
  EXPECT_DOUBLE_EQ(net.nominal_assets(1), 2 * D);
  EXPECT_DOUBLE_EQ(net.nominal_liabilities(1), D);
}

TEST(Network, RejectsMalformedMatrices) {
  Matrix self = Matrix::Zero(3, 3);
  self(1, 1) = 1.0;
  EXPECT_EQ(code_of([&] { build_general(self); }), ErrorCode::kNonzeroDiagonal);
  Matrix neg = Matrix::Zero(3, 3);
  neg(1, 2) = -0.1;
  EXPECT_EQ(code_of([&] { build_general(neg); }), ErrorCode::kNegativeEntry);
  EXPECT_EQ(code_of([&] { build_general(Matrix::Zero(2, 3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Network, CorePeripheryLiabilities) {
  const double D = 0.2, D0 = 0.8;
  const Network four = build_core_periphery({4, 4, D, D0});
  for (int i = 1; i <= 4; ++i) {
    EXPECT_NEAR(four.nominal_liabilities(i), 3 * D + D0, 1e-15);
  }
  const Network three = build_core_periphery({3, 3, D, D0});
  for (int i = 1; i <= 3; ++i) {
    EXPECT_NEAR(three.nominal_liabilities(i), 2 * D + D0, 1e-15);
  }
  const Network single = build_core_periphery({1, 1, D, D0});
  EXPECT_EQ(single.bank_count(), 2);
  EXPECT_DOUBLE_EQ(single.debt(2, 1), D0);
  EXPECT_DOUBLE_EQ(single.nominal_assets(1), 0.0);
}

TEST(Network, PeripheralBanksPassThrough) {
  const CorePeripherySpec spec{3, 6, 0.2, 0.8};
  const Network net = build_core_periphery(spec);
  EXPECT_EQ(periphery_per_core(spec), 2);
  for (int c = 1; c <= 3; ++c) {
    for (int p : peripheral_banks_of(spec, c)) {
      EXPECT_DOUBLE_EQ(net.nominal_assets(p), net.nominal_liabilities(p));
      EXPECT_DOUBLE_EQ(net.debt(p, c), 0.4);
      EXPECT_DOUBLE_EQ(net.debt(0, p), 0.4);
    }
  }
}

TEST(Network, NestedSplitTopology) {
  NestedSplitSpec spec;
  spec.tiers = {Tier{3, {1}}, Tier{2, {0, 1}}};
  spec.D = 0.2;
  spec.D0 = 0.8;
  const NestedSplitNetwork ns = build_nested_split(spec);
  EXPECT_EQ(ns.core_count, 5);
  EXPECT_EQ(ns.independent.size(), 3u);
  EXPECT_EQ(ns.clique.size(), 2u);
  for (int b : ns.independent) {
    EXPECT_EQ(core_counterparties(ns.network, b, 5).size(), 2u);
  }
  for (int b : ns.clique) {
    EXPECT_EQ(core_counterparties(ns.network, b, 5).size(), 4u);
  }
  // Lower tiers' counterparty sets are strict subsets of higher tiers'.
  for (int lo : ns.independent) {
    for (int hi : ns.clique) {
      std::vector<int> a = core_counterparties(ns.network, lo, 5);
      std::vector<int> b = core_counterparties(ns.network, hi, 5);
      a.erase(std::remove(a.begin(), a.end(), hi), a.end());
      b.erase(std::remove(b.begin(), b.end(), lo), b.end());
      EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}

TEST(Network, SingleTierMatchesCorePeriphery) {
  NestedSplitSpec spec;
  spec.tiers = {Tier{4, {0}}};
  spec.D = 0.2;
  spec.D0 = 0.8;
  const NestedSplitNetwork ns = build_nested_split(spec);
  EXPECT_EQ(ns.network.debt(), build_core_periphery({4, 4, 0.2, 0.8}).debt());
}

TEST(Network, NonNestedTiersRejected) {
  NestedSplitSpec spec;
  // Tier 0 links to itself only, tier 1 to tier 1 only: neither set contains
  // the other.
  spec.tiers = {Tier{2, {0}}, Tier{2, {1}}};
  spec.D = 0.2;
  spec.D0 = 0.8;
  EXPECT_EQ(code_of([&] { build_nested_split(spec); }), ErrorCode::kNotNested);
}

TEST(Network, StarAndWheel) {
  const Network star = build_star(3, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(star.nominal_liabilities(1), 3.0);
  const Network wheel = build_directed_wheel(4, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(wheel.nominal_assets(2), 3.0);
  EXPECT_EQ(code_of([] { build_directed_wheel(3, 1.0, 1.0); }), ErrorCode::kTooSmall);
  EXPECT_EQ(code_of([] { build_star(1, 1.0, 1.0); }), ErrorCode::kTooSmall);
}

TEST(NetworkProperty, OutsidePositionIdentity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Network net = testing::random_instance(rng, 1, 8).network;
    double assets = 0.0, liabilities = 0.0;
    for (int i = 1; i <= net.bank_count(); ++i) {
      assets += net.nominal_assets(i);
      liabilities += net.nominal_liabilities(i);
    }
    const Matrix& D = net.debt();
    // Node 0's net position: owed by banks minus owing to banks.
    const double outside = D.row(0).sum() - D.col(0).sum();
    EXPECT_NEAR(assets - liabilities, -outside, 1e-12);
    EXPECT_NEAR(net.outside_net_liability(), assets - liabilities, 1e-12);
  }
}

TEST(NetworkProperty, ConstructorsDeterministic) {
  EXPECT_EQ(build_core_periphery({5, 10, 0.1, 0.7}), build_core_periphery({5, 10, 0.1, 0.7}));
  EXPECT_EQ(build_directed_wheel(6, 0.1, 1.0), build_directed_wheel(6, 0.1, 1.0));
}

TEST(Costs, OverrideExpandsUniformModel) {
  const CostModel base(BankruptcyCostSpec{0.1, 0.5});
  const CostModel changed = base.with_override(4, 2, {0.0, 2.0});
  EXPECT_DOUBLE_EQ(changed.at(1).chi, 0.5);
  EXPECT_DOUBLE_EQ(changed.at(2).chi, 2.0);
  EXPECT_DOUBLE_EQ(changed.at(3).a, 0.1);
}

}  // namespace
}  // namespace netclear
