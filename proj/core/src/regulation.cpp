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


#include "netclear/regulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "netclear/errors.hpp"
#include "netclear/parallel.hpp"

namespace netclear {

namespace {

constexpr double kCapTol = 1e-12;
constexpr double kFloorGuard = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidParams, what);
}

bool is_grid(const StrategySpace& space) {
  return space.kind() == StrategySpace::Kind::kRiskyShareGrid;
}

void check_policy_spaces(const GameSpec& game, const Policy& policy) {
  const int N = game.network.node_count();
  policy.validate(N - 1);
  for (int i = 1; i < N; ++i) {
    const StrategySpace& space = game.spaces[i];
    if (is_grid(space)) continue;
    if (space.kind() != StrategySpace::Kind::kFixed) {
      throw Error(ErrorCode::kInvalidSpec,
                  "policies need risky-share grids or fixed portfolios");
    }
    if (policy.cap(i) != 1.0) {
      throw Error(ErrorCode::kInvalidSpec,
                  "bank " + std::to_string(i) + " has a fixed portfolio and cannot be capped");
    }
  }
}

// Holdings with every grid bank at its cap.
Matrix capped_holdings(const GameSpec& game, const Policy& policy) {
  const int N = game.network.node_count();
  const int K = game.scenarios.asset_count();
  Matrix q = Matrix::Zero(N, K);
  for (int i = 1; i < N; ++i) {
    const StrategySpace& space = game.spaces[i];
    const double capital = game.capital_of(i);
    if (is_grid(space)) {
      const double c = policy.cap(i);
      q(i, space.risky_asset()) += capital * c;
      q(i, space.safe_asset()) += capital * (1.0 - c);
    } else {
      const std::vector<double> w = space.weights(0, K);
      for (int a = 0; a < K; ++a) q(i, a) = capital * w[a];
    }
  }
  return q;
}

std::vector<int> merged_forced(const GameSpec& game, const Policy& policy) {
  std::vector<int> out = game.forced_solvent;
  out.insert(out.end(), policy.bailout_members.begin(),
             policy.bailout_members.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Regime classify_caps(const std::vector<double>& caps) {
  const bool all_free = std::all_of(caps.begin(), caps.end(),
                                    [](double c) { return c == 1.0; });
  if (all_free) return Regime::kLaissezFaire;
  const bool same = std::all_of(caps.begin(), caps.end(),
                                [&](double c) { return c == caps.front(); });
  return same ? Regime::kSymmetricCap : Regime::kAsymmetricCap;
}

// All nondecreasing k-tuples over {0..options-1}, in lexicographic order.
std::vector<std::vector<int>> multisets(int options, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  if (k == 0) return {cur};
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == options - 1) --pos;
    if (pos < 0) break;
    const int v = cur[pos] + 1;
    for (int t = pos; t < k; ++t) cur[t] = v;
  }
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int t = 1; t <= k; ++t) out = out * (n - k + t) / t;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Policy

Policy Policy::laissez_faire(int bank_count) {
  Policy p;
  p.caps.assign(bank_count + 1, 1.0);
  return p;
}

bool Policy::bails_out(int bank) const {
  return std::find(bailout_members.begin(), bailout_members.end(), bank) !=
         bailout_members.end();
}

double Policy::bailout_cost(int bank) const {
  for (std::size_t k = 0; k < bailout_members.size(); ++k) {
    if (bailout_members[k] == bank) return bailout_costs[k];
  }
  return 0.0;
}

bool Policy::is_laissez_faire() const {
  return bailout_members.empty() &&
         std::all_of(caps.begin() + (caps.empty() ? 0 : 1), caps.end(),
                     [](double c) { return c == 1.0; });
}

void Policy::validate(int bank_count) const {
  if (!caps.empty() && static_cast<int>(caps.size()) != bank_count + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "caps must be node-indexed (n+1 entries)");
  }
  for (std::size_t i = 1; i < caps.size(); ++i) {
    if (!(caps[i] >= 0.0 && caps[i] <= 1.0)) {
      throw Error(ErrorCode::kInvalidSpec, "caps must lie in [0, 1]");
    }
  }
  if (bailout_costs.size() != bailout_members.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one bailout cost per bailout member");
  }
  std::vector<int> seen;
  for (std::size_t k = 0; k < bailout_members.size(); ++k) {
    const int b = bailout_members[k];
    if (b < 1 || b > bank_count) {
      throw Error(ErrorCode::kInvalidSpec, "bailout member out of range");
    }
    if (std::find(seen.begin(), seen.end(), b) != seen.end()) {
      throw Error(ErrorCode::kInvalidSpec, "duplicate bailout member");
    }
    seen.push_back(b);
    if (!(bailout_costs[k] >= 0.0)) {
      throw Error(ErrorCode::kInvalidSpec, "bailout costs must be nonnegative");
    }
  }
}

std::string Policy::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << "caps=[";
  for (std::size_t i = 1; i < caps.size(); ++i) {
    os << (i > 1 ? "," : "") << caps[i];
  }
  os << "] bailout={";
  for (std::size_t k = 0; k < bailout_members.size(); ++k) {
    os << (k ? "," : "") << bailout_members[k] << ":" << bailout_costs[k];
  }
  os << "}";
  return os.str();
}

GameSpec regulated_game(const GameSpec& game, const Policy& policy) {
  game.validate();
  check_policy_spaces(game, policy);
  GameSpec out = game;
  for (int i = 1; i < game.network.node_count(); ++i) {
    if (is_grid(game.spaces[i])) out.spaces[i] = game.spaces[i].capped(policy.cap(i));
  }
  out.forced_solvent = merged_forced(game, policy);
  return out;
}

std::vector<double> induced_profile(const Policy& policy, const GameSpec& game,
                                    bool verify, double tol) {
  game.validate();
  check_policy_spaces(game, policy);
  const int N = game.network.node_count();
  std::vector<double> shares(N, -1.0);
  for (int i = 1; i < N; ++i) {
    if (is_grid(game.spaces[i])) shares[i] = policy.cap(i);
  }
  if (!verify) return shares;

  const GameSpec capped = regulated_game(game, policy);
  Profile profile(N, 0);
  for (int i = 1; i < N; ++i) {
    if (is_grid(capped.spaces[i])) {
      profile[i] = capped.spaces[i].find_share(policy.cap(i));
    }
  }
  for (int i = 1; i < N; ++i) {
    if (capped.spaces[i].size() < 2) continue;
    const std::vector<std::size_t> best = best_responses(capped, profile, i, tol);
    if (std::find(best.begin(), best.end(), profile[i]) == best.end()) {
      throw Error(ErrorCode::kCapNotBestResponse,
                  "bank " + std::to_string(i) + " prefers " +
                      capped.spaces[i].describe(best.front()) +
                      " to investing at its cap");
    }
  }
  return shares;
}

PolicyOutcome policy_welfare(const Policy& policy, const GameSpec& game,
                             bool verify) {
  PolicyOutcome out;
  out.shares = induced_profile(policy, game, verify);
  const Matrix q = capped_holdings(game, policy);
  ClearingOptions options;
  options.selection = game.selection;
  options.forced_solvent = merged_forced(game, policy);
  // returns, bankruptcy costs, bailout costs, defaults
  const Vector totals = expectation(game.scenarios, [&](const Scenario& sc) {
    const Vector ext = external_values(q, sc.returns);
    const ClearingSolution sol =
        clear_with_assets(game.network, ext, game.costs, options);
    Vector v(4);
    v << ext.sum(), sol.total_cost(), 0.0, sol.default_count();
    for (int b : sol.assisted) v[2] += policy.bailout_cost(b);
    return v;
  });
  out.returns = totals[0];
  out.bankruptcy_costs = totals[1];
  out.bailout_costs = totals[2];
  out.expected_defaults = totals[3];
  out.welfare = out.returns - out.bankruptcy_costs - out.bailout_costs;
  return out;
}

// ---------------------------------------------------------------------------
// Core-periphery

int sustainable_defaults(double buffer, double D) {
  if (buffer < 0.0) return -1;
  return static_cast<int>(std::floor(buffer / D + kFloorGuard));
}

void validate(const CPParams& p) {
  if (p.n_c < 2) invalid("need at least two core banks");
  if (p.n_p < p.n_c || p.n_p % p.n_c != 0) {
    invalid("n_p must be a positive multiple of n_c");
  }
  if (!(p.D > 0.0) || !(p.D0 > 0.0)) invalid("D and D0 must be positive");
  if (p.D0 > 1.0 + p.r) invalid("D0 must not exceed 1 + r");
  if (p.m < 1 || p.m > p.n_c) invalid("m must lie in 1..n_c");
  if (!(p.theta > 0.0 && p.theta < 1.0)) invalid("theta must lie in (0, 1)");
  if (p.theta < 1.0 - static_cast<double>(p.m) / p.n_c - 1e-12) {
    invalid("theta below 1 - m/n_c gives negative probabilities");
  }
  if (!(p.theta * p.R > 1.0 + p.r)) invalid("need theta R > 1 + r");
  if (!(p.R < p.D0 + (p.n_c - 1) * p.D)) {
    invalid("need R < D0 + (n_c - 1) D so a full cascade is possible");
  }
  const int k_R = sustainable_defaults(p.R - p.D0, p.D);
  if (p.chi < p.R + (p.n_c - 2 - k_R) * p.D - 1e-12) {
    invalid("chi too small for zero recovery: need chi >= R + (n_c - 2 - k^R) D");
  }
}

CPThresholds cp_thresholds(const CPParams& p) {
  CPThresholds t;
  t.k_R = sustainable_defaults(p.R - p.D0, p.D);
  t.k_r = sustainable_defaults(1.0 + p.r - p.D0, p.D);
  const double ratio = p.R / (1.0 + p.r);
  const double scaled = static_cast<double>(p.n_c) / p.m * p.chi;
  t.theta_high = (scaled + p.D0) / (scaled + ratio * p.D0);
  t.theta_sym = (p.chi + p.D0) / (p.chi + ratio * p.D0);
  const double G = p.n_c - (p.n_c - t.k_r) * (p.D0 + t.k_r * p.D);
  t.asym_feasible = G > 0.0;
  t.asym_window =
      static_cast<double>(p.n_c) / p.m * G >= t.k_r * p.D0;
  t.theta_low = t.k_r >= 1 ? (G + t.k_r * p.chi) / (G * ratio + t.k_r * p.chi)
                           : kNaN;
  t.chi_zero_recovery = p.R + (p.n_c - 2 - t.k_R) * p.D;
  return t;
}

CorePeripherySpec cp_network_spec(const CPParams& p) {
  return CorePeripherySpec{p.n_c, p.n_p, p.D, p.D0};
}

MCorrelationSpec cp_return_spec(const CPParams& p) {
  return MCorrelationSpec{p.n_c, p.theta, p.m, p.R, p.r};
}

GameSpec core_periphery_game(const Network& network, int core_count,
                             const ScenarioSet& scenarios, double chi, double r,
                             int grid_points) {
  const int N = network.node_count();
  if (core_count < 1 || core_count >= N) {
    throw Error(ErrorCode::kInvalidSpec, "core count out of range");
  }
  if (scenarios.asset_count() != core_count + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need one risky asset per core bank plus the safe asset");
  }
  GameSpec game;
  game.network = network;
  game.scenarios = scenarios;
  std::vector<BankruptcyCostSpec> costs(N);
  game.spaces.resize(N);
  game.capital.assign(N, 0.0);
  std::vector<double> safe_only(core_count + 1, 0.0);
  safe_only[core_count] = 1.0;
  for (int i = 1; i < N; ++i) {
    if (i <= core_count) {
      game.spaces[i] = default_grid(network, i, i - 1, core_count, r, grid_points);
      game.capital[i] = 1.0;
      costs[i] = BankruptcyCostSpec{0.0, chi};
    } else {
      game.spaces[i] = StrategySpace::fixed(safe_only);
    }
  }
  game.costs = CostModel(std::move(costs));
  return game;
}

GameSpec cp_game(const CPParams& params, int grid_points) {
  validate(params);
  return core_periphery_game(build_core_periphery(cp_network_spec(params)),
                             params.n_c, m_correlated(cp_return_spec(params)),
                             params.chi, params.r, grid_points);
}

std::vector<double> cp_candidate_caps(const CPParams& p) {
  const int k_r = sustainable_defaults(1.0 + p.r - p.D0, p.D);
  std::vector<double> out{1.0, reserve_cap(p.D0, p.r)};
  for (int k = 1; k <= k_r; ++k) out.push_back(reserve_cap(p.D0 + k * p.D, p.r));
  out.push_back(0.0);
  std::vector<double> kept;
  for (double c : out) {
    c = std::clamp(c, 0.0, 1.0);
    if (kept.empty() || std::abs(kept.back() - c) > kCapTol) kept.push_back(c);
  }
  return kept;
}

Policy core_policy(const CPParams& p, const std::vector<double>& core_caps) {
  if (static_cast<int>(core_caps.size()) != p.n_c) {
    throw Error(ErrorCode::kDimensionMismatch, "one cap per core bank");
  }
  Policy out = Policy::laissez_faire(p.n_c + p.n_p);
  for (int i = 0; i < p.n_c; ++i) out.caps[i + 1] = core_caps[i];
  return out;
}

double cp_cap_welfare(const CPParams& p, const std::vector<double>& core_caps) {
  validate(p);
  if (static_cast<int>(core_caps.size()) != p.n_c) {
    throw Error(ErrorCode::kDimensionMismatch, "one cap per core bank");
  }
  const int n = p.n_c;
  const double safe = 1.0 + p.r;
  return expectation(m_correlated(cp_return_spec(p)), [&](const Scenario& sc) {
    std::vector<double> e(n);
    std::vector<int> tolerance(n);
    for (int i = 0; i < n; ++i) {
      const double c = core_caps[i];
      e[i] = c * sc.returns[i] + (1.0 - c) * safe;
      tolerance[i] = e[i] < p.D0 - kFloorGuard
                         ? -1
                         : sustainable_defaults(std::max(e[i] - p.D0, 0.0), p.D);
    }
    // Greatest clearing: start from banks that fail on their own and add any
    // bank whose tolerance the current failures exceed.
    std::vector<char> failed(n, 0);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (tolerance[i] < 0) failed[i] = 1, ++count;
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < n; ++i) {
        if (!failed[i] && count > tolerance[i]) {
          failed[i] = 1;
          ++count;
          grew = true;
        }
      }
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += e[i];
      if (!failed[i]) continue;
      total -= p.chi;
      const double assets = e[i] + (n - count) * p.D;
      if (assets > p.chi + kFloorGuard) {
        // Positive recovery would feed payments back into the cascade.
        throw Error(ErrorCode::kPreconditionFailed,
                    "defaulting core bank has assets above chi");
      }
    }
    return total;
  });
}

double cp_expected_defaults(const CPParams& params) {
  const GameSpec game = cp_game(params, 2);
  const Matrix q = capped_holdings(game, Policy::laissez_faire(params.n_c + params.n_p));
  return expectation(game.scenarios, [&](const Scenario& sc) {
    const ClearingSolution sol = clear(game.network, q, sc.returns, game.costs,
                                       game.selection);
    double count = 0.0;
    for (int i = 1; i <= params.n_c; ++i) count += sol.is_default(i);
    return count;
  });
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::kLaissezFaire: return "laissez-faire";
    case Regime::kSymmetricCap: return "symmetric";
    case Regime::kAsymmetricCap: return "asymmetric";
  }
  return "unknown";
}

CPRegimeResult cp_optimal_regime(const CPParams& p, double tol) {
  validate(p);
  CPRegimeResult out;
  out.thresholds = cp_thresholds(p);
  const std::vector<double> caps = cp_candidate_caps(p);
  const auto sets = multisets(static_cast<int>(caps.size()), p.n_c);
  std::vector<double> welfare(sets.size());
  parallel_for(sets.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      std::vector<double> assignment(p.n_c);
      for (int i = 0; i < p.n_c; ++i) assignment[i] = caps[sets[s][i]];
      welfare[s] = cp_cap_welfare(p, assignment);
    }
  });
  out.welfare = *std::max_element(welfare.begin(), welfare.end());
  bool has[3] = {false, false, false};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (welfare[s] < out.welfare - tol) continue;
    std::vector<double> assignment(p.n_c);
    for (int i = 0; i < p.n_c; ++i) assignment[i] = caps[sets[s][i]];
    has[static_cast<int>(classify_caps(assignment))] = true;
    out.optimal_caps.push_back(std::move(assignment));
  }
  out.regime = has[0] ? Regime::kLaissezFaire
               : has[1] ? Regime::kSymmetricCap
                        : Regime::kAsymmetricCap;
  out.tie = has[0] + has[1] + has[2] > 1;

  const CPThresholds& t = out.thresholds;
  if (p.m <= t.k_R) {
    out.threshold_regime = p.theta < t.theta_sym ? Regime::kSymmetricCap
                                                 : Regime::kLaissezFaire;
  } else if (p.theta >= t.theta_high) {
    out.threshold_regime = Regime::kLaissezFaire;
  } else {
    const bool asym = t.k_r >= 1 && t.asym_feasible && p.theta > t.theta_low;
    out.threshold_regime = asym ? Regime::kAsymmetricCap : Regime::kSymmetricCap;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nested split

GameSpec ns_game(const NestedSplitNetwork& ns, const CPParams& p,
                 int grid_points) {
  const MCorrelationSpec returns{ns.core_count, p.theta, p.m, p.R, p.r};
  return core_periphery_game(ns.network, ns.core_count, m_correlated(returns),
                             p.chi, p.r, grid_points);
}

NSRegimeVerdict ns_regime_check(const NestedSplitSpec& spec,
                                const CPParams& params) {
  const NestedSplitNetwork ns = build_nested_split(spec);
  NSRegimeVerdict out;
  const double D = spec.D, D0 = spec.D0, r = params.r, R = params.R;
  const double theta = params.theta, chi = params.chi;
  out.k_R = sustainable_defaults(R - D0, D);
  out.k_r = sustainable_defaults(1.0 + r - D0, D);
  out.n_clique = static_cast<int>(ns.clique.size());
  out.n_ind = static_cast<int>(ns.independent.size());
  if (params.m <= out.k_R) {
    throw Error(ErrorCode::kPreconditionFailed, "need m > k^R");
  }
  if (out.k_r < 1 || out.k_r > out.n_ind) {
    throw Error(ErrorCode::kPreconditionFailed,
                "need 1 <= k^r <= number of independent banks");
  }
  const double ratio = R / (1.0 + r);
  const double relief = (1.0 + r - D0) / out.k_r * out.n_clique;
  out.theta_threshold = (chi + D0 - relief) / (chi + ratio * (D0 - relief));
  out.threshold_holds = theta > out.theta_threshold;

  const GameSpec game = ns_game(ns, params, 2);
  const int N = ns.network.node_count();
  out.hierarchical = Policy::laissez_faire(N - 1);
  for (int b : ns.clique) out.hierarchical.caps[b] = 0.0;
  std::vector<int> ind = ns.independent;
  std::sort(ind.begin(), ind.end());
  for (std::size_t k = out.k_r; k < ind.size(); ++k) {
    out.hierarchical.caps[ind[k]] = reserve_cap(D0, r);
  }
  out.hierarchical_welfare = policy_welfare(out.hierarchical, game).welfare;
  out.closed_form_hierarchical =
      out.n_clique * (1.0 + r) +
      (out.n_ind - out.k_r) * (theta * R * (1.0 + r - D0) / (1.0 + r) + D0) +
      out.k_r * (theta * R - (1.0 - theta) * chi);

  std::vector<double> symmetric{reserve_cap(D0, r)};
  for (int k = 1; k <= out.k_r; ++k) symmetric.push_back(reserve_cap(D0 + k * D, r));
  symmetric.push_back(0.0);
  out.best_symmetric_welfare = -std::numeric_limits<double>::infinity();
  for (double c : symmetric) {
    Policy pol = Policy::laissez_faire(N - 1);
    for (int i = 1; i <= ns.core_count; ++i) pol.caps[i] = c;
    const double w = policy_welfare(pol, game).welfare;
    if (w > out.best_symmetric_welfare) {
      out.best_symmetric_welfare = w;
      out.best_symmetric_cap = c;
    }
  }
  out.certified = out.hierarchical_welfare > out.best_symmetric_welfare + 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// Search

SearchResult optimal_policy_search(
    const GameSpec& game, const std::vector<std::vector<double>>& candidate_caps,
    const SearchOptions& options) {
  game.validate();
  const int N = game.network.node_count();
  if (static_cast<int>(candidate_caps.size()) != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "candidate caps must be node-indexed (n+1 entries)");
  }
  if (options.allow_bailouts &&
      static_cast<int>(options.bailout_costs.size()) != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "bailout costs must be node-indexed (n+1 entries)");
  }
  const int per_cap = options.allow_bailouts ? 2 : 1;
  const auto option_count = [&](int bank) {
    return static_cast<int>(candidate_caps[bank].size()) * per_cap;
  };

  // Groups: declared classes, then every other player alone.
  std::vector<std::vector<int>> groups;
  std::vector<char> grouped(N, 0);
  for (const auto& cls : options.exchangeable) {
    std::vector<int> members;
    for (int b : cls) {
      if (b < 1 || b >= N || grouped[b]) {
        throw Error(ErrorCode::kInvalidSpec,
                    "exchangeable classes must be disjoint sets of banks");
      }
      if (candidate_caps[b] != candidate_caps[cls.front()] ||
          (options.allow_bailouts &&
           options.bailout_costs[b] != options.bailout_costs[cls.front()])) {
        throw Error(ErrorCode::kInvalidSpec,
                    "exchangeable banks need identical options");
      }
      grouped[b] = 1;
      if (option_count(b) > 0) members.push_back(b);
    }
    if (!members.empty()) groups.push_back(std::move(members));
  }
  for (int b = 1; b < N; ++b) {
    if (!grouped[b] && option_count(b) > 0) groups.push_back({b});
  }

  std::vector<std::vector<std::vector<int>>> group_sets;
  double total = 1.0;
  for (const auto& g : groups) {
    const int k = static_cast<int>(g.size());
    total *= binomial(option_count(g.front()) + k - 1, k);
    if (total > static_cast<double>(options.limit)) {
      throw Error(ErrorCode::kSpaceTooLarge,
                  "policy space exceeds the search limit");
    }
  }
  for (const auto& g : groups) {
    group_sets.push_back(multisets(option_count(g.front()), static_cast<int>(g.size())));
  }
  const std::size_t count = static_cast<std::size_t>(total);

  // Option index per bank; cap index is option / per_cap.
  const auto make_policy = [&](const std::vector<int>& option) {
    Policy pol = Policy::laissez_faire(N - 1);
    for (int b = 1; b < N; ++b) {
      if (option[b] < 0) continue;
      pol.caps[b] = candidate_caps[b][option[b] / per_cap];
      if (option[b] % per_cap == 1) {
        pol.bailout_members.push_back(b);
        pol.bailout_costs.push_back(options.bailout_costs[b]);
      }
    }
    return pol;
  };
  const auto decode = [&](std::size_t index) {
    std::vector<int> option(N, -1);
    for (std::size_t g = groups.size(); g-- > 0;) {
      const std::size_t radix = group_sets[g].size();
      const std::vector<int>& tuple = group_sets[g][index % radix];
      index /= radix;
      for (std::size_t t = 0; t < tuple.size(); ++t) option[groups[g][t]] = tuple[t];
    }
    return option;
  };

  std::vector<double> welfare(count);
  parallel_for(count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      welfare[s] = policy_welfare(make_policy(decode(s)), game).welfare;
    }
  });

  SearchResult out;
  out.evaluated = count;
  out.welfare = *std::max_element(welfare.begin(), welfare.end());
  std::vector<std::vector<int>> winners;
  for (std::size_t s = 0; s < count; ++s) {
    if (welfare[s] < out.welfare - options.tol) continue;
    // Expand to every distinct relabeling within each group.
    std::vector<std::vector<int>> expanded{decode(s)};
    for (const auto& g : groups) {
      if (g.size() < 2) continue;
      std::vector<std::vector<int>> next;
      for (const auto& base : expanded) {
        std::vector<int> tuple;
        for (int b : g) tuple.push_back(base[b]);
        std::sort(tuple.begin(), tuple.end());
        do {
          std::vector<int> v = base;
          for (std::size_t t = 0; t < g.size(); ++t) v[g[t]] = tuple[t];
          next.push_back(std::move(v));
        } while (std::next_permutation(tuple.begin(), tuple.end()));
      }
      expanded = std::move(next);
    }
    winners.insert(winners.end(), expanded.begin(), expanded.end());
  }
  std::sort(winners.begin(), winners.end());
  winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
  for (const auto& w : winners) out.argmax.push_back(make_policy(w));
  return out;
}

// ---------------------------------------------------------------------------
// Single-bank regimes

std::string bank_regime_name(BankRegime regime) {
  switch (regime) {
    case BankRegime::kLaissezFaire: return "laissez-faire";
    case BankRegime::kRestrict: return "restrict";
    case BankRegime::kBailout: return "bailout";
  }
  return "unknown";
}

SingleBankRegime classify_single_bank(double L, double nfc, double c) {
  SingleBankRegime out;
  out.opportunity_cost = L;
  out.nfc = nfc;
  out.bailout_cost = c;
  if (L < nfc && L <= c) {
    out.regime = BankRegime::kRestrict;
  } else if (c < nfc && c < L) {
    out.regime = BankRegime::kBailout;
  }
  const double scale = 1e-12 * std::max({1.0, std::abs(L), std::abs(nfc), std::abs(c)});
  const auto near = [scale](double a, double b) { return std::abs(a - b) <= scale; };
  const double low = std::min(L, c);
  out.boundary = near(low, nfc) || (near(L, c) && nfc >= low - scale);
  return out;
}

SingleBankRegime single_bank_regime(const Network& network, const Matrix& q,
                                    int bank, int risky, int safe, double r,
                                    double bailout_cost,
                                    const ScenarioSet& scenarios,
                                    const CostModel& costs,
                                    Selection selection) {
  if (bank < 1 || bank > network.bank_count()) {
    throw Error(ErrorCode::kInvalidSpec, "bank out of range");
  }
  const int K = scenarios.asset_count();
  if (q.rows() != network.node_count() || q.cols() != K || risky < 0 ||
      risky >= K || safe < 0 || safe >= K) {
    throw Error(ErrorCode::kDimensionMismatch, "portfolio and assets disagree");
  }
  const double liabilities = network.nominal_liabilities(bank);
  const double capital = q.row(bank).sum();
  if (liabilities > capital * (1.0 + r)) {
    throw Error(ErrorCode::kCapInfeasible,
                "bank " + std::to_string(bank) +
                    " cannot cover its liabilities with the safe asset");
  }
  const double cap = reserve_cap(liabilities / capital, r);
  const double mean = expectation(
      scenarios, [risky](const Scenario& sc) { return sc.returns[risky]; });
  const double L = (mean / (1.0 + r) - 1.0) * liabilities;

  Matrix full = q;
  full.row(bank).setZero();
  full(bank, risky) = capital;
  std::vector<double> capped(K, 0.0);
  capped[risky] += cap * capital;
  capped[safe] += (1.0 - cap) * capital;
  const double impact = nfc(network, full, bank, capped, scenarios, costs, selection);
  SingleBankRegime out = classify_single_bank(L, impact, bailout_cost);
  out.cap = cap;
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<DefaultsRow> sweep_defaults_vs_m(const CPParams& params) {
  std::vector<DefaultsRow> out;
  const int k_R = sustainable_defaults(params.R - params.D0, params.D);
  for (int m = 1; m <= params.n_c; ++m) {
    CPParams p = params;
    p.m = m;
    DefaultsRow row;
    row.m = m;
    row.feasible = p.theta >= 1.0 - static_cast<double>(m) / p.n_c - 1e-12;
    const double failure = p.n_c * (1.0 - p.theta) / m;
    row.closed_form = m <= k_R ? failure * m : failure * p.n_c;
    row.expected_defaults = row.feasible ? cp_expected_defaults(p) : kNaN;
    if (!row.feasible) row.closed_form = kNaN;
    out.push_back(row);
  }
  return out;
}

std::vector<RegimeCell> sweep_regime_map(const RegimeMapSpec& spec) {
  if (spec.x_steps < 1 || spec.nfc_steps < 1) {
    throw Error(ErrorCode::kInvalidSpec, "regime map needs at least one step");
  }
  const auto at = [](double lo, double hi, int steps, int k) {
    return steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1);
  };
  std::vector<RegimeCell> out;
  out.reserve(static_cast<std::size_t>(spec.x_steps) * spec.nfc_steps);
  for (int a = 0; a < spec.x_steps; ++a) {
    const double x = at(spec.x_min, spec.x_max, spec.x_steps, a);
    for (int b = 0; b < spec.nfc_steps; ++b) {
      const double y = at(spec.nfc_min, spec.nfc_max, spec.nfc_steps, b);
      RegimeCell cell;
      cell.x = x;
      cell.nfc = y;
      cell.result =
          spec.plane == RegimePlane::kExcessReturn
              ? classify_single_bank(x * spec.liability, y, spec.fixed_cost)
              : classify_single_bank(spec.fixed_excess * spec.liability, y, x);
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace netclear
