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


#include "netclear/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "netclear/errors.hpp"
#include "netclear/parallel.hpp"

namespace netclear {

double reserve_cap(double need, double r) { return 1.0 - need / (1.0 + r); }

// ---------------------------------------------------------------------------
// StrategySpace

StrategySpace StrategySpace::risky_share_grid(std::vector<double> shares,
                                              int risky, int safe,
                                              bool allow_partial) {
  std::sort(shares.begin(), shares.end());
  shares.erase(std::unique(shares.begin(), shares.end()), shares.end());
  if (shares.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "empty risky-share grid");
  }
  if (!(shares.front() >= 0.0) || !(shares.back() <= 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "risky shares must lie in [0, 1]");
  }
  if (!allow_partial && (shares.front() != 0.0 || shares.back() != 1.0)) {
    throw Error(ErrorCode::kInvalidSpec,
                "risky-share grid must contain 0 and 1");
  }
  if (risky == safe || risky < 0 || safe < 0) {
    throw Error(ErrorCode::kInvalidSpec, "grid needs distinct risky and safe assets");
  }
  StrategySpace s;
  s.kind_ = Kind::kRiskyShareGrid;
  s.shares_ = std::move(shares);
  s.risky_ = risky;
  s.safe_ = safe;
  return s;
}

StrategySpace StrategySpace::uniform_grid(int points, int risky, int safe,
                                          const std::vector<double>& kinks) {
  if (points < 2) {
    throw Error(ErrorCode::kInvalidSpec, "a grid needs at least two points");
  }
  std::vector<double> shares;
  shares.reserve(points + kinks.size());
  for (int k = 0; k < points; ++k) {
    shares.push_back(k == points - 1 ? 1.0
                                     : static_cast<double>(k) / (points - 1));
  }
  for (double k : kinks) {
    if (k > 0.0 && k < 1.0) shares.push_back(k);
  }
  return risky_share_grid(std::move(shares), risky, safe);
}

StrategySpace StrategySpace::asset_choice(std::vector<int> assets) {
  if (assets.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "asset choice needs at least one asset");
  }
  StrategySpace s;
  s.kind_ = Kind::kAssetChoice;
  s.assets_ = std::move(assets);
  return s;
}

StrategySpace StrategySpace::fixed(std::vector<double> weights) {
  StrategySpace s;
  s.kind_ = Kind::kFixed;
  s.fixed_ = std::move(weights);
  return s;
}

std::size_t StrategySpace::size() const {
  switch (kind_) {
    case Kind::kRiskyShareGrid: return shares_.size();
    case Kind::kAssetChoice: return assets_.size();
    case Kind::kFixed: return 1;
  }
  return 0;
}

std::vector<double> StrategySpace::weights(std::size_t k, int asset_count) const {
  std::vector<double> w(asset_count, 0.0);
  switch (kind_) {
    case Kind::kRiskyShareGrid:
      w[risky_] = shares_[k];
      w[safe_] = 1.0 - shares_[k];
      break;
    case Kind::kAssetChoice:
      w[assets_[k]] = 1.0;
      break;
    case Kind::kFixed:
      for (std::size_t a = 0; a < fixed_.size() && a < w.size(); ++a) {
        w[a] = fixed_[a];
      }
      break;
  }
  return w;
}

double StrategySpace::share(std::size_t k) const {
  return kind_ == Kind::kRiskyShareGrid ? shares_[k] : -1.0;
}

int StrategySpace::asset(std::size_t k) const {
  return kind_ == Kind::kAssetChoice ? assets_[k] : -1;
}

std::string StrategySpace::describe(std::size_t k) const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::kRiskyShareGrid: os << "share=" << shares_[k]; break;
    case Kind::kAssetChoice: os << "asset=" << assets_[k]; break;
    case Kind::kFixed: os << "fixed"; break;
  }
  return os.str();
}

std::size_t StrategySpace::find_share(double s) const {
  for (std::size_t k = 0; k < shares_.size(); ++k) {
    if (shares_[k] == s) return k;
  }
  return size();
}

StrategySpace StrategySpace::capped(double cap) const {
  if (kind_ != Kind::kRiskyShareGrid) {
    throw Error(ErrorCode::kInvalidSpec, "caps apply to risky-share grids only");
  }
  if (!(cap >= 0.0 && cap <= 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "caps must lie in [0, 1]");
  }
  std::vector<double> kept;
  for (double s : shares_) {
    if (s <= cap) kept.push_back(s);
  }
  kept.push_back(cap);
  return risky_share_grid(std::move(kept), risky_, safe_, /*allow_partial=*/true);
}

void StrategySpace::validate(int asset_count) const {
  const auto in_range = [asset_count](int a) { return a >= 0 && a < asset_count; };
  switch (kind_) {
    case Kind::kRiskyShareGrid:
      if (!in_range(risky_) || !in_range(safe_)) {
        throw Error(ErrorCode::kInvalidSpec, "grid asset id out of range");
      }
      break;
    case Kind::kAssetChoice:
      for (int a : assets_) {
        if (!in_range(a)) {
          throw Error(ErrorCode::kInvalidSpec, "asset id out of range");
        }
      }
      break;
    case Kind::kFixed: {
      if (static_cast<int>(fixed_.size()) != asset_count) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "fixed portfolio needs one weight per asset");
      }
      double total = 0.0;
      for (double w : fixed_) {
        if (!(w >= 0.0)) {
          throw Error(ErrorCode::kInfeasiblePortfolio, "negative weight");
        }
        total += w;
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::kInfeasiblePortfolio,
                    "fixed portfolio weights must sum to 1");
      }
      break;
    }
  }
}

std::vector<double> solvency_kinks(const Network& network, int bank, double r) {
  const Matrix& D = network.debt();
  std::vector<double> claims;
  for (int j = 1; j <= network.bank_count(); ++j) {
    if (D(bank, j) > 0.0) claims.push_back(D(bank, j));
  }
  std::sort(claims.begin(), claims.end(), std::greater<>());
  const double gap = network.nominal_liabilities(bank) - network.nominal_assets(bank);
  std::vector<double> out;
  double lost = 0.0;
  for (std::size_t k = 0; k <= claims.size(); ++k) {
    out.push_back(reserve_cap(gap + lost, r));
    if (k < claims.size()) lost += claims[k];
  }
  out.push_back(reserve_cap(network.nominal_liabilities(bank), r));
  std::vector<double> kept;
  for (double c : out) {
    if (c > 0.0 && c < 1.0) kept.push_back(c);
  }
  return kept;
}

StrategySpace default_grid(const Network& network, int bank, int risky,
                           int safe, double r, int points) {
  return StrategySpace::uniform_grid(points, risky, safe,
                                     solvency_kinks(network, bank, r));
}

// ---------------------------------------------------------------------------
// GameSpec and profile encoding

double GameSpec::capital_of(int bank) const {
  return capital.empty() ? 1.0 : capital[bank];
}

void GameSpec::validate() const {
  const int N = network.node_count();
  if (static_cast<int>(spaces.size()) != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "strategy spaces must be node-indexed (n+1 entries)");
  }
  if (!capital.empty() && static_cast<int>(capital.size()) != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "capital must be node-indexed (n+1 entries)");
  }
  for (int i = 1; i < N; ++i) {
    spaces[i].validate(scenarios.asset_count());
    if (!(capital_of(i) >= 0.0)) {
      throw Error(ErrorCode::kInvalidSpec, "capital must be nonnegative");
    }
  }
}

ProfileSpace::ProfileSpace(const GameSpec& game) {
  const int N = game.network.node_count();
  radix_.assign(N, 1);
  stride_.assign(N, 1);
  for (int i = 1; i < N; ++i) radix_[i] = game.spaces[i].size();
  std::size_t stride = 1;
  bool overflow = false;
  for (int i = N - 1; i >= 1; --i) {
    stride_[i] = stride;
    if (radix_[i] != 0 &&
        stride > std::numeric_limits<std::size_t>::max() / radix_[i]) {
      overflow = true;
    } else {
      stride *= radix_[i];
    }
  }
  count_ = overflow ? std::numeric_limits<std::size_t>::max() : stride;
}

Profile ProfileSpace::decode(std::size_t index) const {
  Profile p(radix_.size(), 0);
  for (std::size_t i = 1; i < radix_.size(); ++i) {
    p[i] = (index / stride_[i]) % radix_[i];
  }
  return p;
}

std::size_t ProfileSpace::encode(const Profile& profile) const {
  std::size_t index = 0;
  for (std::size_t i = 1; i < radix_.size(); ++i) index += profile[i] * stride_[i];
  return index;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Realized scenarios and each strategy's external value in each of them.
struct Prepared {
  std::vector<Scenario> support;
  std::vector<std::vector<std::vector<double>>> ext;  // [bank][strategy][scenario]
  ClearingOptions options;
};

Prepared prepare(const GameSpec& game) {
  game.validate();
  Prepared out;
  out.support = game.scenarios.realize();
  out.options.selection = game.selection;
  out.options.forced_solvent = game.forced_solvent;
  const int N = game.network.node_count();
  const int K = game.scenarios.asset_count();
  out.ext.resize(N);
  for (int i = 1; i < N; ++i) {
    const StrategySpace& space = game.spaces[i];
    const double capital = game.capital_of(i);
    out.ext[i].resize(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
      const std::vector<double> w = space.weights(k, K);
      std::vector<double>& values = out.ext[i][k];
      values.resize(out.support.size());
      for (std::size_t s = 0; s < out.support.size(); ++s) {
        double v = 0.0;
        for (int a = 0; a < K; ++a) {
          if (w[a] != 0.0) v += capital * w[a] * out.support[s].returns[a];
        }
        values[s] = v;
      }
    }
  }
  return out;
}

// Writes E[V_i^+] for banks 1..n into out[0..n-1] and expected welfare into
// out[n].
void evaluate(const GameSpec& game, const Prepared& prep, const Profile& profile,
              double* out) {
  const int N = game.network.node_count();
  const std::size_t S = prep.support.size();
  std::vector<double> terms(S * N);  // [bank - 1 | welfare][scenario]
  Vector e = Vector::Zero(N);
  for (std::size_t s = 0; s < S; ++s) {
    for (int i = 1; i < N; ++i) e[i] = prep.ext[i][profile[i]][s];
    const ClearingSolution sol =
        clear_with_assets(game.network, e, game.costs, prep.options);
    const double prob = prep.support[s].probability;
    for (int i = 1; i < N; ++i) {
      terms[(i - 1) * S + s] = prob * std::max(sol.values[i], 0.0);
    }
    terms[(N - 1) * S + s] = prob * (e.sum() - sol.costs.sum());
  }
  for (int i = 0; i < N; ++i) out[i] = pairwise_sum(terms.data() + i * S, S);
}

void check_profile(const GameSpec& game, const Profile& profile) {
  if (static_cast<int>(profile.size()) != game.network.node_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile must be node-indexed");
  }
  for (int i = 1; i < game.network.node_count(); ++i) {
    if (profile[i] >= game.spaces[i].size()) {
      throw Error(ErrorCode::kInvalidSpec,
                  "strategy index out of range for bank " + std::to_string(i));
    }
  }
}

}  // namespace

Matrix portfolio(const GameSpec& game, const Profile& profile) {
  game.validate();
  check_profile(game, profile);
  const int N = game.network.node_count();
  const int K = game.scenarios.asset_count();
  Matrix q = Matrix::Zero(N, K);
  for (int i = 1; i < N; ++i) {
    const std::vector<double> w = game.spaces[i].weights(profile[i], K);
    for (int a = 0; a < K; ++a) q(i, a) = game.capital_of(i) * w[a];
  }
  return q;
}

Vector expected_equities(const GameSpec& game, const Profile& profile) {
  check_profile(game, profile);
  const Prepared prep = prepare(game);
  const int N = game.network.node_count();
  std::vector<double> buf(N);
  evaluate(game, prep, profile, buf.data());
  Vector out = Vector::Zero(N);
  for (int i = 1; i < N; ++i) out[i] = buf[i - 1];
  return out;
}

double expected_equity(const GameSpec& game, const Profile& profile, int bank) {
  if (bank < 1 || bank >= game.network.node_count()) {
    throw Error(ErrorCode::kInvalidSpec, "bank out of range");
  }
  return expected_equities(game, profile)[bank];
}

WelfareReport profile_welfare(const GameSpec& game, const Profile& profile) {
  check_profile(game, profile);
  const Prepared prep = prepare(game);
  const int N = game.network.node_count();
  const std::size_t S = prep.support.size();
  std::vector<double> ret(S * N, 0.0), cost(S * N, 0.0), def(S * N, 0.0);
  Vector e = Vector::Zero(N);
  for (std::size_t s = 0; s < S; ++s) {
    for (int i = 1; i < N; ++i) e[i] = prep.ext[i][profile[i]][s];
    const ClearingSolution sol =
        clear_with_assets(game.network, e, game.costs, prep.options);
    const double prob = prep.support[s].probability;
    for (int i = 0; i < N; ++i) {
      ret[i * S + s] = prob * e[i];
      cost[i * S + s] = prob * sol.costs[i];
      def[i * S + s] = sol.defaulted[i] ? prob : 0.0;
    }
  }
  WelfareReport report;
  report.per_bank_returns = Vector::Zero(N);
  report.expected_costs = Vector::Zero(N);
  report.default_probability = Vector::Zero(N);
  for (int i = 0; i < N; ++i) {
    report.per_bank_returns[i] = pairwise_sum(ret.data() + i * S, S);
    report.expected_costs[i] = pairwise_sum(cost.data() + i * S, S);
    report.default_probability[i] = pairwise_sum(def.data() + i * S, S);
  }
  report.returns = pairwise_sum(report.per_bank_returns.data(), N);
  report.costs = pairwise_sum(report.expected_costs.data(), N);
  report.expected_defaults = pairwise_sum(report.default_probability.data(), N);
  report.total = report.returns - report.costs;
  return report;
}

std::vector<std::size_t> best_responses(const GameSpec& game,
                                        const Profile& profile, int bank,
                                        double tol) {
  check_profile(game, profile);
  if (bank < 1 || bank >= game.network.node_count()) {
    throw Error(ErrorCode::kInvalidSpec, "bank out of range");
  }
  const Prepared prep = prepare(game);
  const int N = game.network.node_count();
  const std::size_t size = game.spaces[bank].size();
  std::vector<double> payoff(size);
  std::vector<double> buf(N);
  Profile p = profile;
  for (std::size_t k = 0; k < size; ++k) {
    p[bank] = k;
    evaluate(game, prep, p, buf.data());
    payoff[k] = buf[bank - 1];
  }
  const double best = *std::max_element(payoff.begin(), payoff.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < size; ++k) {
    if (payoff[k] >= best - tol) out.push_back(k);
  }
  return out;
}

bool is_nash(const GameSpec& game, const Profile& profile, double tol) {
  for (int i = 1; i < game.network.node_count(); ++i) {
    const std::vector<std::size_t> br = best_responses(game, profile, i, tol);
    if (std::find(br.begin(), br.end(), profile[i]) == br.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Payoff tables

PayoffTable::PayoffTable(ProfileSpace space, int banks)
    : space_(std::move(space)),
      banks_(banks),
      width_(static_cast<std::size_t>(banks) + 1) {}

PayoffTable PayoffTable::build(const GameSpec& game, std::size_t limit) {
  game.validate();
  ProfileSpace space(game);
  if (space.count() > limit) {
    throw Error(ErrorCode::kSpaceTooLarge,
                "profile space has more than " + std::to_string(limit) +
                    " profiles");
  }
  const int n = game.network.bank_count();
  PayoffTable table(space, n);
  table.data_.assign(space.count() * table.width_, 0.0);
  const Prepared prep = prepare(game);
  parallel_for(
      space.count(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
          evaluate(game, prep, table.space_.decode(idx),
                   table.data_.data() + idx * table.width_);
        }
      },
      64);
  return table;
}

double PayoffTable::best_payoff(std::size_t profile, int bank) const {
  const std::size_t stride = space_.stride(bank);
  const std::size_t radix = space_.radix(bank);
  const std::size_t own = (profile / stride) % radix;
  const std::size_t base = profile - own * stride;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < radix; ++k) {
    best = std::max(best, equity(base + k * stride, bank));
  }
  return best;
}

std::vector<Profile> nash_from_table(const PayoffTable& table, double tol) {
  const std::size_t count = table.count();
  const int n = static_cast<int>(table.space().decode(0).size()) - 1;
  std::vector<char> is_eq(count, 0);
  parallel_for(
      count,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
          bool ok = true;
          for (int i = 1; i <= n && ok; ++i) {
            ok = table.equity(idx, i) >= table.best_payoff(idx, i) - tol;
          }
          is_eq[idx] = ok;
        }
      },
      1024);
  std::vector<Profile> out;
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (is_eq[idx]) out.push_back(table.space().decode(idx));
  }
  return out;
}

std::vector<Profile> enumerate_nash(const GameSpec& game, double tol) {
  return nash_from_table(PayoffTable::build(game, kMaxNashProfiles), tol);
}

std::vector<DominanceReport> check_dominance_full_risky(const GameSpec& game,
                                                        double tol) {
  const PayoffTable table = PayoffTable::build(game, kMaxDominanceProfiles);
  const ProfileSpace& space = table.space();
  const int n = game.network.bank_count();
  std::vector<DominanceReport> out;
  for (int i = 1; i <= n; ++i) {
    DominanceReport report;
    report.bank = i;
    const StrategySpace& s = game.spaces[i];
    const std::size_t top = s.kind() == StrategySpace::Kind::kRiskyShareGrid
                                ? s.find_share(1.0)
                                : s.size();
    if (top == s.size() || s.size() < 2) {
      out.push_back(report);
      continue;
    }
    report.applicable = true;
    const std::size_t stride = space.stride(i);
    const std::size_t radix = space.radix(i);
    // Opponent profiles are the table indices with bank i's digit at 0.
    const std::size_t opponents = space.count() / radix;
    const auto base_of = [&](std::size_t o) {
      return (o / stride) * stride * radix + o % stride;
    };
    const int workers = std::max(1, thread_count());
    std::vector<double> block_min(workers, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> block_arg(workers, 0);
    const std::size_t chunk = (opponents + workers - 1) / workers;
    parallel_for(static_cast<std::size_t>(workers),
                 [&](std::size_t wb, std::size_t we) {
                   for (std::size_t w = wb; w < we; ++w) {
                     const std::size_t begin = w * chunk;
                     const std::size_t end = std::min(opponents, begin + chunk);
                     for (std::size_t o = begin; o < end; ++o) {
                       const std::size_t base = base_of(o);
                       const double at_top = table.equity(base + top * stride, i);
                       double other = -std::numeric_limits<double>::infinity();
                       for (std::size_t k = 0; k < radix; ++k) {
                         if (k != top) {
                           other = std::max(other, table.equity(base + k * stride, i));
                         }
                       }
                       const double margin = at_top - other;
                       if (margin < block_min[w]) {
                         block_min[w] = margin;
                         block_arg[w] = base + top * stride;
                       }
                     }
                   }
                 });
    report.min_margin = std::numeric_limits<double>::infinity();
    for (int w = 0; w < workers; ++w) {
      if (block_min[w] < report.min_margin) {
        report.min_margin = block_min[w];
        report.worst = space.decode(block_arg[w]);
      }
    }
    report.strict = report.min_margin > tol;
    out.push_back(report);
  }
  return out;
}

SocialOptimum social_optimum(const GameSpec& game, double tol) {
  const PayoffTable table = PayoffTable::build(game, kMaxNashProfiles);
  SocialOptimum out;
  out.welfare = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < table.count(); ++idx) {
    out.welfare = std::max(out.welfare, table.welfare(idx));
  }
  for (std::size_t idx = 0; idx < table.count(); ++idx) {
    if (table.welfare(idx) >= out.welfare - tol) {
      out.argmax.push_back(table.space().decode(idx));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sufficient conditions

std::vector<std::pair<int, int>> prop2_sufficient_condition(
    const Network& network, double R_high, double R_low) {
  const int n = network.bank_count();
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i) {
    const double gap_i = network.nominal_liabilities(i) - network.nominal_assets(i);
    if (!(R_low <= gap_i && gap_i < R_high)) continue;
    for (int j = 1; j <= n; ++j) {
      if (j == i || !(network.debt(i, j) > 0.0)) continue;
      const double gap_j =
          network.nominal_liabilities(j) - network.nominal_assets(j);
      if (R_low < gap_j) out.emplace_back(i, j);
    }
  }
  return out;
}

Prop3Verdict prop3_sufficient_condition(const Network& network, double R_low) {
  const int n = network.bank_count();
  const int N = n + 1;
  // reach(i, j): a debt path among banks leads from i to j.
  std::vector<char> reach(N * N, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (network.debt(j, i) > 0.0) reach[i * N + j] = 1;
    }
  }
  for (int k = 1; k <= n; ++k) {
    for (int i = 1; i <= n; ++i) {
      if (!reach[i * N + k]) continue;
      for (int j = 1; j <= n; ++j) {
        if (reach[k * N + j]) reach[i * N + j] = 1;
      }
    }
  }
  Prop3Verdict v;
  v.acyclic.assign(N, 0);
  v.low_liability.assign(N, 0);
  v.net_debtor.assign(N, 0);
  v.satisfied.assign(N, 0);
  v.all = true;
  for (int i = 1; i <= n; ++i) {
    const double L = network.nominal_liabilities(i);
    v.acyclic[i] = !reach[i * N + i];
    v.low_liability[i] = L <= R_low;
    v.net_debtor[i] = L - network.nominal_assets(i) >= R_low;
    v.satisfied[i] = v.acyclic[i] || v.low_liability[i] || v.net_debtor[i];
    v.all = v.all && v.satisfied[i];
  }
  return v;
}

bool all_on_asset_is_nash(const GameSpec& game, int asset, double tol) {
  const int N = game.network.node_count();
  Profile p(N, 0);
  for (int i = 1; i < N; ++i) {
    const StrategySpace& s = game.spaces[i];
    if (s.kind() != StrategySpace::Kind::kAssetChoice) {
      throw Error(ErrorCode::kInvalidSpec, "asset-choice spaces required");
    }
    const auto it = std::find(s.assets().begin(), s.assets().end(), asset);
    if (it == s.assets().end()) return false;
    p[i] = static_cast<std::size_t>(it - s.assets().begin());
  }
  return is_nash(game, p, tol);
}

namespace {

bool all_same_portfolio(const GameSpec& game, const Profile& p) {
  const int N = game.network.node_count();
  const int K = game.scenarios.asset_count();
  for (int i = 2; i < N; ++i) {
    if (game.spaces[i].weights(p[i], K) != game.spaces[1].weights(p[1], K)) {
      return false;
    }
  }
  return true;
}

}  // namespace

Prop4Verdict prop4_uniqueness_condition(const GameSpec& game, double R_high,
                                        double R_low, double tol) {
  game.validate();
  const int n = game.network.bank_count();
  const int N = n + 1;
  if (n - 1 > 20) {
    throw Error(ErrorCode::kSpaceTooLarge, "too many banks for the pattern scan");
  }
  ClearingOptions options;
  options.selection = game.selection;
  options.forced_solvent = game.forced_solvent;
  Prop4Verdict v;
  v.condition = true;
  const std::uint32_t patterns = 1u << (n - 1);
  for (int i = 1; i <= n; ++i) {
    std::vector<double> lo(n, std::numeric_limits<double>::infinity());
    std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
    for (std::uint32_t mask = 0; mask < patterns; ++mask) {
      Vector e = Vector::Zero(N);
      int bit = 0;
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        const bool high = (mask >> bit++) & 1u;
        e[j] = game.capital_of(j) * (high ? R_high : R_low);
      }
      e[i] = game.capital_of(i) * R_high;
      const double up =
          std::max(clear_with_assets(game.network, e, game.costs, options).values[i], 0.0);
      e[i] = game.capital_of(i) * R_low;
      const double down =
          std::max(clear_with_assets(game.network, e, game.costs, options).values[i], 0.0);
      const int level = std::popcount(mask);
      lo[level] = std::min(lo[level], up - down);
      hi[level] = std::max(hi[level], up - down);
    }
    bool ok = true;
    for (int c = 1; c < n; ++c) ok = ok && lo[c] > hi[c - 1] + tol;
    if (!ok) {
      v.condition = false;
      v.failing_banks.push_back(i);
    }
  }
  if (v.condition) {
    v.nash = enumerate_nash(game, tol);
    v.nash_checked = true;
    v.all_correlated = true;
    for (const Profile& p : v.nash) {
      v.all_correlated = v.all_correlated && all_same_portfolio(game, p);
    }
  }
  return v;
}

}  // namespace netclear
