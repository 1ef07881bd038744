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


#include <benchmark/benchmark.h>

#include <random>

#include "netclear/clearing.hpp"
#include "netclear/game.hpp"
#include "netclear/regulation.hpp"

namespace {

using namespace netclear;

// Dense random network with outside debt and fixed external assets.
struct Instance {
  Network network;
  Vector external;
  CostModel costs;
};

Instance random_network(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix debt = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && u(rng) < 0.3) debt(i, j) = u(rng);
    }
  }
  Vector ext = Vector::Zero(n + 1);
  for (int i = 1; i <= n; ++i) ext[i] = 1.5 * u(rng);
  return {Network::from_debt(debt), ext, CostModel(BankruptcyCostSpec{0.1, 0.2})};
}

void BM_Clearing(benchmark::State& state) {
  const Instance inst = random_network(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(clear_with_assets(inst.network, inst.external, inst.costs));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Clearing)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_NashTwoBank(benchmark::State& state) {
  Matrix debt = Matrix::Zero(3, 3);
  debt(1, 2) = 0.6;
  debt(0, 1) = 0.3;
  GameSpec g;
  g.network = Network::from_debt(debt);
  g.scenarios = independent_two_point(1, 0.8, 1.5, 0.0).with_constant_asset(1.05);
  g.costs = CostModel(BankruptcyCostSpec{0.0, 0.5});
  const int points = static_cast<int>(state.range(0));
  g.spaces = {StrategySpace(), default_grid(g.network, 1, 0, 1, 0.05, points),
              default_grid(g.network, 2, 0, 1, 0.05, points)};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_nash(g));
}
BENCHMARK(BM_NashTwoBank)->Arg(11)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_CorePeripheryRegime(benchmark::State& state) {
  CPParams p{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
             0.2, 0.8, 0.98, 1.1, 0.05, 3.0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(cp_optimal_regime(p));
}
BENCHMARK(BM_CorePeripheryRegime)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_PolicySearch(benchmark::State& state) {
  const CPParams p{3, 3, 0.2, 0.8, 0.985, 1.1, 0.05, 2.5, 2};
  const GameSpec game = cp_game(p, 2);
  std::vector<std::vector<double>> candidates(game.network.node_count());
  for (int i = 1; i <= 3; ++i) candidates[i] = cp_candidate_caps(p);
  SearchOptions options;
  if (state.range(0) == 1) options.exchangeable = {{1, 2, 3}};
  for (auto _ : state) benchmark::DoNotOptimize(optimal_policy_search(game, candidates, options));
}
BENCHMARK(BM_PolicySearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
