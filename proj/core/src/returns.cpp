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

#include "netclear/returns.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "netclear/errors.hpp"

namespace netclear {

namespace {

constexpr double kProbabilityTol = 1e-12;

// Uniform double in [0, 1) from the top 53 bits; unlike the standard
// distributions this is bit-reproducible across standard libraries.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == m) {
      out.push_back(current);
      return;
    }
    for (int i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace

double pairwise_sum(const double* values, std::size_t count) {
  if (count == 0) return 0.0;
  if (count == 1) return values[0];
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

ScenarioSet ScenarioSet::from_scenarios(std::vector<Scenario> scenarios) {
  ScenarioSet set;
  if (scenarios.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "scenario set is empty");
  }
  set.asset_count_ = static_cast<int>(scenarios.front().returns.size());
  std::vector<double> probs;
  for (const Scenario& s : scenarios) {
    if (!(s.probability >= 0.0 && s.probability <= 1.0)) {
      throw Error(ErrorCode::kInvalidSpec, "probability outside [0, 1]");
    }
    if (static_cast<int>(s.returns.size()) != set.asset_count_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "scenarios have different asset counts");
    }
    for (double p : s.returns) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::kInvalidSpec, "returns must be finite and >= 0");
      }
    }
    probs.push_back(s.probability);
  }
  const double total = pairwise_sum(probs.data(), probs.size());
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw Error(ErrorCode::kInvalidSpec,
                "probabilities sum to " + std::to_string(total));
  }
  set.scenarios_ = std::move(scenarios);
  return set;
}

ScenarioSet ScenarioSet::from_law(IndependentLaw law, MonteCarlo mc) {
  const std::size_t K = law.theta.size();
  if (law.high.size() != K || law.low.size() != K) {
    throw Error(ErrorCode::kDimensionMismatch, "law vectors differ in length");
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (!(law.theta[k] >= 0.0 && law.theta[k] <= 1.0) || law.low[k] < 0.0 ||
        law.high[k] < 0.0) {
      throw Error(ErrorCode::kInvalidSpec, "invalid two-point law");
    }
  }
  ScenarioSet set;
  set.asset_count_ = static_cast<int>(K);
  set.law_ = std::move(law);
  set.mc_ = mc;
  return set;
}

ScenarioSet ScenarioSet::with_monte_carlo(MonteCarlo mc) const {
  ScenarioSet out = *this;
  out.mc_ = mc;
  return out;
}

ScenarioSet ScenarioSet::exact() const {
  if (law_) {
    throw Error(ErrorCode::kTooManyAssets,
                "support too large for exact enumeration");
  }
  ScenarioSet out = *this;
  out.mc_.reset();
  return out;
}

ScenarioSet ScenarioSet::with_exact_probabilities(
    std::vector<Rational> exact) const {
  if (exact.size() != scenarios_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one exact probability per scenario required");
  }
  ScenarioSet out = *this;
  out.exact_ = std::move(exact);
  return out;
}

ScenarioSet ScenarioSet::with_constant_asset(double value) const {
  if (!(value >= 0.0)) {
    throw Error(ErrorCode::kInvalidSpec, "constant return must be >= 0");
  }
  ScenarioSet out = *this;
  out.asset_count_ += 1;
  for (Scenario& s : out.scenarios_) s.returns.push_back(value);
  if (out.law_) out.constant_assets_.push_back(value);
  return out;
}

std::vector<Scenario> ScenarioSet::realize() const {
  if (!mc_) return scenarios_;
  std::mt19937_64 rng(mc_->seed);
  std::vector<Scenario> draws(mc_->samples);
  const double weight = 1.0 / static_cast<double>(mc_->samples);
  std::vector<double> cumulative;
  if (!law_) {
    double acc = 0.0;
    for (const Scenario& s : scenarios_) {
      acc += s.probability;
      cumulative.push_back(acc);
    }
  }
  for (Scenario& draw : draws) {
    draw.probability = weight;
    if (law_) {
      const std::size_t K = law_->theta.size();
      draw.returns.resize(K);
      for (std::size_t k = 0; k < K; ++k) {
        draw.returns[k] = unit_uniform(rng) < law_->theta[k] ? law_->high[k]
                                                             : law_->low[k];
      }
      draw.returns.insert(draw.returns.end(), constant_assets_.begin(),
                          constant_assets_.end());
    } else {
      const double u = unit_uniform(rng) * cumulative.back();
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t idx = std::min<std::size_t>(
          static_cast<std::size_t>(it - cumulative.begin()),
          scenarios_.size() - 1);
      draw.returns = scenarios_[idx].returns;
    }
  }
  return draws;
}

ScenarioSet independent_two_point(const std::vector<double>& theta,
                                  const std::vector<double>& R_high,
                                  const std::vector<double>& R_low,
                                  std::optional<MonteCarlo> mc) {
  const int K = static_cast<int>(theta.size());
  if (K < 1 || R_high.size() != theta.size() ||
      R_low.size() != theta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "per-asset vectors mismatch");
  }
  for (int k = 0; k < K; ++k) {
    if (!(theta[k] > 0.0 && theta[k] < 1.0)) {
      throw Error(ErrorCode::kInvalidSpec, "theta must lie in (0, 1)");
    }
    if (!(R_high[k] > R_low[k] && R_low[k] >= 0.0)) {
      throw Error(ErrorCode::kInvalidSpec, "need R_high > R_low >= 0");
    }
  }
  if (K > kMaxEnumeratedAssets) {
    if (!mc) {
      throw Error(ErrorCode::kTooManyAssets,
                  std::to_string(K) + " assets exceed the exact bound of " +
                      std::to_string(kMaxEnumeratedAssets));
    }
    return ScenarioSet::from_law(IndependentLaw{theta, R_high, R_low}, *mc);
  }
  const std::size_t count = std::size_t{1} << K;
  std::vector<Scenario> scenarios(count);
  for (std::size_t code = 0; code < count; ++code) {
    Scenario& s = scenarios[code];
    s.returns.resize(K);
    s.probability = 1.0;
    for (int k = 0; k < K; ++k) {
      const bool low = (code >> (K - 1 - k)) & 1U;
      s.returns[k] = low ? R_low[k] : R_high[k];
      s.probability *= low ? (1.0 - theta[k]) : theta[k];
    }
  }
  ScenarioSet set = ScenarioSet::from_scenarios(std::move(scenarios));
  return mc ? set.with_monte_carlo(*mc) : set;
}

ScenarioSet independent_two_point(int K, double theta, double R_high,
                                  double R_low, std::optional<MonteCarlo> mc) {
  if (K < 1) throw Error(ErrorCode::kInvalidSpec, "K must be >= 1");
  return independent_two_point(std::vector<double>(K, theta),
                               std::vector<double>(K, R_high),
                               std::vector<double>(K, R_low), mc);
}

ScenarioSet independent_two_point_exact(int K, const Rational& theta,
                                        double R_high, double R_low) {
  ScenarioSet set = independent_two_point(K, to_double(theta), R_high, R_low);
  std::vector<Rational> exact;
  const std::size_t count = std::size_t{1} << K;
  for (std::size_t code = 0; code < count; ++code) {
    Rational p = 1;
    for (int k = 0; k < K; ++k) {
      p *= ((code >> (K - 1 - k)) & 1U) ? Rational(1 - theta) : theta;
    }
    exact.push_back(p);
  }
  return set.with_exact_probabilities(std::move(exact));
}

void validate(const MCorrelationSpec& spec) {
  if (spec.n_c < 1 || spec.m < 1 || spec.m > spec.n_c) {
    throw Error(ErrorCode::kInvalidSpec, "need 1 <= m <= n_c");
  }
  if (!(spec.theta > 0.0 && spec.theta < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "theta must lie in (0, 1)");
  }
  // The failure mass n_c(1 - theta)/m must be a probability.
  if (spec.n_c * (1.0 - spec.theta) / spec.m > 1.0 + 1e-15) {
    throw Error(ErrorCode::kInvalidSpec, "theta below 1 - m/n_c");
  }
  if (!(spec.theta * spec.R > 1.0 + spec.r)) {
    throw Error(ErrorCode::kInvalidSpec, "risky asset dominated: theta R <= 1+r");
  }
}

namespace {

ScenarioSet m_correlated_impl(const MCorrelationSpec& spec,
                              const std::optional<Rational>& theta_exact) {
  validate(spec);
  const auto failing = subsets_of_size(spec.n_c, spec.m);
  const double fail_mass = spec.n_c * (1.0 - spec.theta) / spec.m;
  const double each = fail_mass / static_cast<double>(failing.size());
  const int K = spec.n_c + 1;
  std::vector<Scenario> scenarios;
  Scenario all_high{1.0 - fail_mass, std::vector<double>(K, spec.R)};
  all_high.returns[spec.n_c] = 1.0 + spec.r;
  scenarios.push_back(all_high);
  for (const auto& subset : failing) {
    Scenario s{each, all_high.returns};
    for (int k : subset) s.returns[k] = 0.0;
    scenarios.push_back(std::move(s));
  }
  // Drop an exactly empty all-high state (theta = 1 - m/n_c).
  if (scenarios.front().probability <= 0.0) {
    scenarios.erase(scenarios.begin());
  }
  ScenarioSet set = ScenarioSet::from_scenarios(std::move(scenarios));
  if (!theta_exact) return set;

  const Rational mass =
      Rational(spec.n_c) * (Rational(1) - *theta_exact) / Rational(spec.m);
  std::vector<Rational> exact;
  if (mass < 1) exact.push_back(Rational(1) - mass);
  for (std::size_t i = 0; i < failing.size(); ++i) {
    exact.push_back(mass / Rational(static_cast<long long>(failing.size())));
  }
  return set.with_exact_probabilities(std::move(exact));
}

}  // namespace

ScenarioSet m_correlated(const MCorrelationSpec& spec) {
  return m_correlated_impl(spec, std::nullopt);
}

ScenarioSet m_correlated_exact(const MCorrelationSpec& spec,
                               const Rational& theta) {
  MCorrelationSpec s = spec;
  s.theta = to_double(theta);
  return m_correlated_impl(s, theta);
}

}  // namespace netclear
