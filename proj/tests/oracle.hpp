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


// Reference implementations used as test oracles. They share no code with
// the library beyond its value types.

#ifndef NETCLEAR_TESTS_ORACLE_HPP_
#define NETCLEAR_TESTS_ORACLE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "netclear/network.hpp"

namespace netclear::testing {

struct OracleFixedPoint {
  Vector payments;  // node-indexed total payment of each bank
  Vector values;    // node-indexed V
  std::vector<char> defaulted;
};

struct OracleResult {
  std::vector<OracleFixedPoint> fixed_points;
  OracleFixedPoint greatest;  // largest payments
  OracleFixedPoint least;     // smallest payments
  bool lattice = true;        // greatest/least dominate every fixed point
};

// Every bank is solvent, a defaulter paying its positive recovery, or a
// defaulter paying nothing. Each of the 3^n labelings fixes a linear system
// for the payments; labelings whose solution is consistent with the
// labeling are fixed points.
OracleResult brute_force_clearing(const Network& network, const Vector& external,
                                  const CostModel& costs);

struct RandomInstance {
  Network network;
  Vector external;  // node-indexed
  CostModel costs;
};

// n in [n_min, n_max], about half of the ordered bank pairs linked, some
// banks owed by the outside sector.
RandomInstance random_instance(std::mt19937_64& rng, int n_min, int n_max);

// Column sums strictly below 1 so every bank's equity reaches outsiders.
Matrix random_equity(std::mt19937_64& rng, int n);

}  // namespace netclear::testing

#endif  // NETCLEAR_TESTS_ORACLE_HPP_
