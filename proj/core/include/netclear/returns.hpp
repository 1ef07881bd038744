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

// Finite joint distributions of asset gross returns.

#ifndef NETCLEAR_RETURNS_HPP_
#define NETCLEAR_RETURNS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace netclear {

using Rational = boost::multiprecision::cpp_rational;

struct Scenario {
  double probability = 0.0;
  std::vector<double> returns;  // one gross return per asset
};

struct MonteCarlo {
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
};

// Per-asset independent two-point law, used when the joint support is too
// large to enumerate.
struct IndependentLaw {
  std::vector<double> theta;
  std::vector<double> high;
  std::vector<double> low;
};

inline constexpr int kMaxEnumeratedAssets = 20;

class ScenarioSet {
 public:
  ScenarioSet() = default;

  // Validates probabilities (sum to 1 within 1e-12), lengths and signs.
  static ScenarioSet from_scenarios(std::vector<Scenario> scenarios);
  // A set backed by an independent law; only usable in Monte Carlo mode.
  static ScenarioSet from_law(IndependentLaw law, MonteCarlo mc);

  int asset_count() const { return asset_count_; }
  bool enumerated() const { return !law_.has_value(); }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  std::size_t size() const { return scenarios_.size(); }

  const std::optional<MonteCarlo>& monte_carlo() const { return mc_; }
  ScenarioSet with_monte_carlo(MonteCarlo mc) const;
  ScenarioSet exact() const;
  ScenarioSet with_exact_probabilities(std::vector<Rational> exact) const;

  // Exact probabilities, present when the constructor received rational
  // inputs.
  const std::optional<std::vector<Rational>>& exact_probabilities() const {
    return exact_;
  }

  // Appends an asset paying `value` in every scenario (the safe asset).
  ScenarioSet with_constant_asset(double value) const;

  // The scenarios an expectation runs over: the enumerated support in exact
  // mode, otherwise `samples` seeded draws of weight 1/samples each.
  std::vector<Scenario> realize() const;

 private:
  int asset_count_ = 0;
  std::vector<Scenario> scenarios_;
  std::optional<IndependentLaw> law_;
  std::vector<double> constant_assets_;  // appended to sampled draws
  std::optional<MonteCarlo> mc_;
  std::optional<std::vector<Rational>> exact_;
};

// K independent assets paying R_high with probability theta, else R_low.
// Enumerates 2^K scenarios in binary order (asset 0 is the most significant
// digit, high before low). Throws kTooManyAssets for K > 20 unless a Monte
// Carlo mode is given.
ScenarioSet independent_two_point(int K, double theta, double R_high,
                                  double R_low,
                                  std::optional<MonteCarlo> mc = std::nullopt);
ScenarioSet independent_two_point(const std::vector<double>& theta,
                                  const std::vector<double>& R_high,
                                  const std::vector<double>& R_low,
                                  std::optional<MonteCarlo> mc = std::nullopt);
// Same law with exact rational probabilities attached.
ScenarioSet independent_two_point_exact(int K, const Rational& theta,
                                        double R_high, double R_low);

// n_c proprietary risky assets and, last, a safe asset paying 1 + r. With
// probability 1 - n_c(1 - theta)/m every risky asset pays R; otherwise a
// uniformly chosen m-subset pays 0 and the rest pay R.
struct MCorrelationSpec {
  int n_c = 0;
  double theta = 0.0;
  int m = 1;
  double R = 0.0;
  double r = 0.0;
};

void validate(const MCorrelationSpec& spec);

// Scenario 0 is the all-high state; failure scenarios follow in
// lexicographic order of the failing subset.
ScenarioSet m_correlated(const MCorrelationSpec& spec);
ScenarioSet m_correlated_exact(const MCorrelationSpec& spec,
                               const Rational& theta);

// Sum in a fixed balanced tree order so results do not depend on how terms
// were produced.
double pairwise_sum(const double* values, std::size_t count);

template <typename T>
T pairwise_sum_of(const std::vector<T>& terms, const T& zero) {
  if (terms.empty()) return zero;
  std::vector<T> level = terms;
  while (level.size() > 1) {
    std::vector<T> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] + level[i + 1]);
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

// E[f(scenario)] over the set's realization. f may return double or any type
// closed under + and scalar *, e.g. Eigen vectors.
template <typename F>
auto expectation(const ScenarioSet& set, F&& f) {
  using Result = std::decay_t<decltype(f(std::declval<const Scenario&>()))>;
  const std::vector<Scenario> support = set.realize();
  std::vector<Result> terms;
  terms.reserve(support.size());
  for (const Scenario& s : support) {
    Result value = f(s);
    terms.push_back(s.probability * value);
  }
  if constexpr (std::is_arithmetic_v<Result>) {
    return pairwise_sum_of(terms, Result{0});
  } else {
    Result zero = terms.empty() ? Result{} : Result(terms.front() * 0.0);
    return pairwise_sum_of(terms, zero);
  }
}

}  // namespace netclear

#endif  // NETCLEAR_RETURNS_HPP_
