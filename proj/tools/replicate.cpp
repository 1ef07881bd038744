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


#include "replicate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "netclear/centrality.hpp"
#include "netclear/equity.hpp"
#include "netclear/errors.hpp"
#include "netclear/game.hpp"
#include "netclear/io.hpp"
#include "netclear/regulation.hpp"

namespace netclear::tools {

namespace {

// Root of an affine function from two samples.
double affine_root(double x0, double f0, double x1, double f1) {
  return x0 - f0 * (x1 - x0) / (f1 - f0);
}

// --- two-bank chain ---------------------------------------------------------

struct Chain {
  double D = 0.3, r = 0.05, theta = 0.8, R = 1.5, chi = 0.5;

  Network network() const {
    Matrix debt = Matrix::Zero(3, 3);
    debt(1, 2) = 2.0 * D;
    debt(0, 1) = D;
    return Network::from_debt(debt);
  }
  ScenarioSet scenarios() const {
    return independent_two_point(1, theta, R, 0.0).with_constant_asset(1.0 + r);
  }
  GameSpec game(double cost) const {
    GameSpec g;
    g.network = network();
    g.scenarios = scenarios();
    g.costs = CostModel(BankruptcyCostSpec{0.0, cost});
    g.spaces = {StrategySpace(), default_grid(g.network, 1, 0, 1, r),
                default_grid(g.network, 2, 0, 1, r)};
    return g;
  }
  Matrix holdings(double s1, double s2) const {
    Matrix q = Matrix::Zero(3, 2);
    q(1, 0) = s1;
    q(1, 1) = 1.0 - s1;
    q(2, 0) = s2;
    q(2, 1) = 1.0 - s2;
    return q;
  }
  double welfare(double s1, double s2, double cost) const {
    return expected_welfare(network(), holdings(s1, s2), scenarios(),
                            CostModel(BankruptcyCostSpec{0.0, cost}))
        .total;
  }
  // E[V_2] without limited liability.
  double bank2_value(double s2, double cost) const {
    const Network net = network();
    const Matrix q = holdings(1.0, s2);
    const CostModel costs(BankruptcyCostSpec{0.0, cost});
    return expectation(scenarios(), [&](const Scenario& sc) {
      return clear(net, q, sc.returns, costs).values[2];
    });
  }
};

Report motivating_2bank() {
  Report rep;
  rep.target = "motivating-2bank";
  rep.summary =
      "Bank 2 owes 2D to bank 1, bank 1 owes D outside; both choose a risky "
      "share on a 101-point grid (D=0.3, r=0.05, theta=0.8, R=1.5, chi=0.5).";
  const Chain c;
  const double excess = c.theta * c.R - (1.0 + c.r);
  const double cover = 2.0 * c.D / (1.0 + c.r);
  rep.expect("2(1-theta)chi > 2D/(1+r) (theta R - (1+r))",
             2.0 * (1.0 - c.theta) * c.chi > cover * excess);

  const GameSpec game = c.game(c.chi);
  for (const DominanceReport& d : check_dominance_full_risky(game)) {
    rep.expect("bank " + std::to_string(d.bank) + " full risky strictly dominant",
               d.applicable && d.strict);
  }
  const std::vector<Profile> nash = enumerate_nash(game);
  const bool unique_risky = nash.size() == 1 &&
                            game.spaces[1].share(nash[0][1]) == 1.0 &&
                            game.spaces[2].share(nash[0][2]) == 1.0;
  rep.expect("unique Nash equilibrium is (1, 1)", unique_risky);

  const SocialOptimum opt = social_optimum(game);
  rep.expect("unique social optimum", opt.argmax.size() == 1);
  rep.near("optimal share of bank 1", game.spaces[1].share(opt.argmax[0][1]), 1.0, 0.0);
  rep.near("optimal share of bank 2", game.spaces[2].share(opt.argmax[0][2]),
           1.0 - cover, 1e-12);
  const double gap = opt.welfare - c.welfare(1.0, 1.0, c.chi);
  rep.near("welfare(optimum) - welfare(Nash)", gap,
           2.0 * (1.0 - c.theta) * c.chi - cover * excess, 1e-9);
  rep.expect("inefficiency gap is positive", gap > 0.0);

  // Thresholds in chi at which protecting bank 2 becomes socially optimal
  // and at which bank 2 itself would choose it if it bore its own losses.
  const double cap = 1.0 - cover;
  const auto social = [&](double chi) {
    return c.welfare(1.0, cap, chi) - c.welfare(1.0, 1.0, chi);
  };
  const auto own = [&](double chi) {
    return c.bank2_value(cap, chi) - c.bank2_value(1.0, chi);
  };
  const double chi_social = affine_root(0.5, social(0.5), 1.5, social(1.5));
  const double chi_own = affine_root(0.5, own(0.5), 1.5, own(1.5));
  const double expected_social = c.D * excess / ((1.0 + c.r) * (1.0 - c.theta));
  rep.near("social threshold chi", chi_social, expected_social, 1e-9);
  rep.near("own-loss threshold chi", chi_own, 2.0 * expected_social, 1e-9);
  rep.near("threshold ratio", chi_own / chi_social, 2.0, 1e-9);
  return rep;
}

// --- correlation incentives -------------------------------------------------

Report claim1() {
  Report rep;
  rep.target = "claim1";
  rep.summary =
      "Banks 2 and 3 owe D to bank 1 and D/2 to each other, bank 1 owes D "
      "outside; three independent assets with R = (2.00, 2.01, 2.02), "
      "theta = 0.7, D = 1, chi = 0.4; bank 1 holds asset 1.";
  const double D = 1.0, chi = 0.4, theta = 0.7;
  const std::vector<double> R{2.0, 2.01, 2.02};
  rep.expect("chi <= D/2 and R_k >= 1.5 D",
             chi <= 0.5 * D && *std::min_element(R.begin(), R.end()) >= 1.5 * D);
  rep.expect("returns within 1% of each other",
             (R.back() - R.front()) / R.front() <= 0.01 + 1e-12);

  Matrix debt = Matrix::Zero(4, 4);
  debt(1, 2) = debt(1, 3) = D;
  debt(2, 3) = debt(3, 2) = 0.5 * D;
  debt(0, 1) = D;
  GameSpec game;
  game.network = Network::from_debt(debt);
  game.scenarios = independent_two_point({theta, theta, theta}, R, {0.0, 0.0, 0.0});
  game.costs = CostModel(BankruptcyCostSpec{0.0, chi});
  game.spaces = {StrategySpace(), StrategySpace::fixed({1.0, 0.0, 0.0}),
                 StrategySpace::asset_choice({0, 1, 2}),
                 StrategySpace::asset_choice({0, 1, 2})};

  const std::vector<Profile> nash = enumerate_nash(game);
  std::ostringstream csv;
  CsvWriter w(csv, {"bank2_asset", "bank3_asset", "equity2", "equity3", "welfare"});
  bool all_same = !nash.empty();
  bool lowest = false;
  for (const Profile& p : nash) {
    const int a2 = game.spaces[2].asset(p[2]);
    const int a3 = game.spaces[3].asset(p[3]);
    all_same = all_same && a2 == a3;
    lowest = lowest || (a2 == 0 && a3 == 0);
    const Vector e = expected_equities(game, p);
    w << a2 + 1 << a3 + 1 << e[2] << e[3] << profile_welfare(game, p).total;
    w.end_row();
  }
  rep.csv = csv.str();
  rep.near("number of Nash equilibria", static_cast<double>(nash.size()), 3.0, 0.0);
  rep.expect("all Nash have banks 2,3 on same asset", all_same);
  rep.expect("a Nash puts banks 2,3 on the lowest-return asset", lowest);

  const SocialOptimum opt = social_optimum(game);
  bool distinct = !opt.argmax.empty();
  for (const Profile& p : opt.argmax) {
    const int a2 = game.spaces[2].asset(p[2]);
    const int a3 = game.spaces[3].asset(p[3]);
    distinct = distinct && a2 != a3 && a2 != 0 && a3 != 0;
  }
  rep.expect("social optimum assigns distinct assets", distinct);
  return rep;
}

// --- core-periphery regimes ---------------------------------------------------

CPParams grid_params(int n_c, double theta, double chi) {
  CPParams p;
  p.n_c = n_c;
  p.n_p = n_c;
  p.D = 0.2;
  p.D0 = 0.8;
  p.theta = theta;
  p.R = 1.1;
  p.r = 0.05;
  p.chi = chi;
  p.m = 2;
  return p;
}

std::set<std::vector<double>> core_cap_sets(const std::vector<Policy>& policies,
                                            int n_c) {
  std::set<std::vector<double>> out;
  for (const Policy& pol : policies) {
    std::vector<double> caps(pol.caps.begin() + 1, pol.caps.begin() + 1 + n_c);
    std::sort(caps.begin(), caps.end(), std::greater<>());
    out.insert(caps);
  }
  return out;
}

Report cp_regimes() {
  Report rep;
  rep.target = "cp-regimes";
  rep.summary =
      "Core-periphery networks (D=0.2, D0=0.8, R=1.1, r=0.05, m=2) on a 20x20 "
      "(theta, chi) grid for n_c = 3, 4, 5: the cap regime from the default "
      "cascade count against exhaustive search over the candidate caps by "
      "clearing.";
  std::ostringstream csv;
  CsvWriter w(csv, {"n_c", "theta", "chi", "regime", "threshold_regime", "tie",
                    "welfare_cascade", "welfare_search", "gap"});
  double worst_gap = 0.0;
  bool same_argmax = true;
  int asym_open = 0;
  for (int n_c = 3; n_c <= 5; ++n_c) {
    const double chi_min = 1.1 + (n_c - 3) * 0.2;
    for (int a = 0; a < 20; ++a) {
      const double theta = 0.955 + (0.999 - 0.955) * a / 19.0;
      for (int b = 0; b < 20; ++b) {
        const double chi = chi_min + (6.0 - chi_min) * b / 19.0;
        const CPParams p = grid_params(n_c, theta, chi);
        const CPRegimeResult res = cp_optimal_regime(p);
        const GameSpec game = cp_game(p, 2);
        std::vector<std::vector<double>> candidates(game.network.node_count());
        std::vector<int> core;
        for (int i = 1; i <= n_c; ++i) {
          candidates[i] = cp_candidate_caps(p);
          core.push_back(i);
        }
        SearchOptions options;
        options.exchangeable = {core};
        const SearchResult search = optimal_policy_search(game, candidates, options);
        const double gap = std::abs(search.welfare - res.welfare);
        worst_gap = std::max(worst_gap, gap);
        const std::set<std::vector<double>> found = core_cap_sets(search.argmax, n_c);
        const std::set<std::vector<double>> claimed(res.optimal_caps.begin(),
                                                    res.optimal_caps.end());
        same_argmax = same_argmax && found == claimed;
        const CPThresholds& t = res.thresholds;
        if (res.regime == Regime::kAsymmetricCap && !res.tie && t.asym_feasible &&
            t.theta_low < theta && theta < t.theta_high) {
          ++asym_open;
        }
        w << n_c << theta << chi << regime_name(res.regime)
          << regime_name(res.threshold_regime) << res.tie << res.welfare
          << search.welfare << gap;
        w.end_row();
      }
    }
  }
  rep.csv = csv.str();
  rep.near("max welfare gap", worst_gap, 0.0, 1e-9);
  rep.expect("identical optimal cap multisets", same_argmax);
  rep.at_least("strictly asymmetric points with theta_low < theta < theta_high",
               asym_open, 1);
  return rep;
}

Report cp_asym_example() {
  Report rep;
  rep.target = "cp-asym-example";
  rep.summary =
      "Three core banks, m=2, k^R=k^r=1 (D=0.2, D0=0.8, R=1.1, r=0.05, "
      "theta=0.99): two banks fully safe and one free against every bank "
      "holding D0/(1+r) in the safe asset.";
  const double theta = 0.99;
  CPParams p = grid_params(3, theta, 2.0);
  const CPThresholds t = cp_thresholds(p);
  rep.near("k^R", t.k_R, 1, 0.0);
  rep.near("k^r", t.k_r, 1, 0.0);
  const double c0 = reserve_cap(p.D0, p.r);
  const auto difference = [&](double chi) {
    p.chi = chi;
    const GameSpec game = cp_game(p, 2);
    return policy_welfare(core_policy(p, {1.0, 0.0, 0.0}), game).welfare -
           policy_welfare(core_policy(p, {c0, c0, c0}), game).welfare;
  };
  const double x0 = 1.1, x1 = 3.1;
  const double root = affine_root(x0, difference(x0), x1, difference(x1));
  const double expected = (3.0 * p.D0 / (1.0 + p.r) - 2.0) *
                          (theta * p.R - (1.0 + p.r)) / (1.0 - theta);
  rep.near("boundary chi", root, expected, 64 * 2.2e-16 * expected / (1.0 - theta));
  rep.near("asymmetric - symmetric at the boundary", difference(expected), 0.0, 1e-12);
  return rep;
}

// --- nested split -------------------------------------------------------------

Report ns_example() {
  Report rep;
  rep.target = "ns-example";
  rep.summary =
      "Two-tier core: a clique of 2 banks linked to everyone and an "
      "independent set of 3 (D=0.2, D0=0.8, R=1.3, r=0.05, theta=0.9, chi=2, "
      "m=3, so k^R=2, k^r=1).";
  NestedSplitSpec spec;
  spec.tiers = {Tier{3, {1}}, Tier{2, {0, 1}}};
  spec.D = 0.2;
  spec.D0 = 0.8;
  const NestedSplitNetwork ns = build_nested_split(spec);
  CPParams p;
  p.n_c = ns.core_count;
  p.n_p = ns.core_count;
  p.D = spec.D;
  p.D0 = spec.D0;
  p.theta = 0.9;
  p.R = 1.3;
  p.r = 0.05;
  p.chi = 2.0;
  p.m = 3;
  const GameSpec game = ns_game(ns, p, 2);
  const int N = ns.network.node_count();

  Policy clique_safe = Policy::laissez_faire(N - 1);
  for (int b : ns.clique) clique_safe.caps[b] = 0.0;
  Policy ind_safe = Policy::laissez_faire(N - 1);
  ind_safe.caps[ns.independent[0]] = 0.0;
  ind_safe.caps[ns.independent[1]] = 0.0;

  // Default frequency of the regulated banks over the failure scenarios.
  const auto conditional = [&](const Policy& pol, const std::vector<int>& banks) {
    Matrix q = Matrix::Zero(N, ns.core_count + 1);
    for (int i = 1; i <= ns.core_count; ++i) {
      q(i, i - 1) = pol.caps[i];
      q(i, ns.core_count) = 1.0 - pol.caps[i];
    }
    double mass = 0.0, hits = 0.0;
    for (const Scenario& sc : game.scenarios.scenarios()) {
      const bool failure = std::any_of(sc.returns.begin(), sc.returns.end() - 1,
                                       [](double x) { return x == 0.0; });
      if (!failure) continue;
      const ClearingSolution sol = clear(ns.network, q, sc.returns, game.costs);
      mass += sc.probability;
      for (int b : banks) hits += sc.probability * sol.is_default(b) / banks.size();
    }
    return hits / mass;
  };
  rep.near("P(regulated clique defaults | failure)",
           conditional(clique_safe, ns.clique), 0.7, 1e-12);
  rep.near("P(regulated independent bank defaults | failure)",
           conditional(ind_safe, {ns.independent[0], ns.independent[1]}), 0.3, 1e-12);

  const double fail = p.n_c * (1.0 - p.theta) / p.m;
  const double free_bank = p.theta * p.R - (1.0 - p.theta) * p.chi;
  const double w_clique = policy_welfare(clique_safe, game).welfare;
  const double w_ind = policy_welfare(ind_safe, game).welfare;
  rep.near("surplus, clique regulated", w_clique,
           2.0 * ((1.0 + p.r) - fail * 0.7 * p.chi) + 3.0 * free_bank, 1e-9);
  rep.near("surplus, independent banks regulated", w_ind,
           2.0 * ((1.0 + p.r) - fail * 0.3 * p.chi) + 3.0 * free_bank, 1e-9);
  rep.expect("regulating the independent set beats regulating the clique",
             w_ind > w_clique);

  CPParams high = p;
  high.theta = 0.99;
  const NSRegimeVerdict v = ns_regime_check(spec, high);
  rep.expect("theta = 0.99 exceeds the hierarchical threshold", v.threshold_holds);
  rep.near("hierarchical surplus", v.hierarchical_welfare,
           v.closed_form_hierarchical, 1e-9);
  rep.expect("hierarchical policy beats every symmetric cap", v.certified);
  return rep;
}

// --- centrality -----------------------------------------------------------------

Report star_nfc() {
  Report rep;
  rep.target = "star-nfc";
  rep.summary =
      "Star of 3 banks with mutual claims D=0.02, outside debt 1, r=0.03, "
      "R=2, theta=0.9, chi=5 and perfectly correlated risky assets (m=n).";
  const int n = 3;
  const double D = 0.02, r = 0.03;
  rep.expect("1+r < 1+(n-1)D", 1.0 + r < 1.0 + (n - 1) * D);
  rep.expect("1+r >= 1+D", 1.0 + r >= 1.0 + D);
  const Network net = build_star(n, D, 1.0);
  const ScenarioSet sc = m_correlated({n, 0.9, n, 2.0, r});
  Matrix q = Matrix::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) q(i, i - 1) = 1.0;
  const CostModel costs(BankruptcyCostSpec{0.0, 5.0});
  std::ostringstream csv;
  CsvWriter w(csv, {"bank", "nfc"});
  for (const RankedBank& b : nfc_ranking(net, q, to_safe_asset(n), sc, costs)) {
    if (b.bank == 1) {
      rep.near("center NFC", b.nfc, 0.0, 1e-12);
    } else {
      rep.expect("bank " + std::to_string(b.bank) + " NFC > 0", b.nfc > 0.0);
      rep.near("bank " + std::to_string(b.bank) + " NFC = (1-theta) chi", b.nfc,
               0.1 * 5.0, 1e-9);
    }
    w << b.bank << b.nfc;
    w.end_row();
  }
  rep.csv = csv.str();
  return rep;
}

Report wheel_nfc() {
  Report rep;
  rep.target = "wheel-nfc";
  rep.summary =
      "Bank 1 owes D=0.1 to each of banks 2..n, which owe 2D around a "
      "directed cycle; all owe 1 outside; independent assets with R_1=2, "
      "R_-1=1.05, theta=0.9, chi=5 and a safe asset 1+r = 1+(n-1)D+0.05.";
  std::ostringstream csv;
  CsvWriter w(csv, {"n", "bank", "nfc"});
  const double D = 0.1, R1 = 2.0, Rm = 1.05;
  for (int n : {4, 5}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    rep.expect(tag + "R_1 > (n-1)D + 1 and 1 < R_-1 < D + 1",
               R1 > (n - 1) * D + 1.0 && Rm > 1.0 && Rm < D + 1.0);
    const double r = (n - 1) * D + 0.05;
    const Network net = build_directed_wheel(n, D, 1.0);
    std::vector<double> high(n, Rm);
    high[0] = R1;
    const ScenarioSet sc =
        independent_two_point(std::vector<double>(n, 0.9), high,
                              std::vector<double>(n, 0.0))
            .with_constant_asset(1.0 + r);
    Matrix q = Matrix::Zero(n + 1, n + 1);
    for (int i = 1; i <= n; ++i) q(i, i - 1) = 1.0;
    const CostModel costs(BankruptcyCostSpec{0.0, 5.0});
    const std::vector<RankedBank> ranked =
        nfc_ranking(net, q, to_safe_asset(n), sc, costs);
    double center = 0.0;
    for (const RankedBank& b : ranked) {
      if (b.bank == 1) center = b.nfc;
      w << n << b.bank << b.nfc;
      w.end_row();
    }
    rep.near(tag + "center NFC = (1-theta) chi", center, 0.5, 1e-9);
    rep.expect(tag + "every peripheral bank ranks above the center",
               ranked.back().bank == 1 && ranked[ranked.size() - 2].nfc > center);
  }
  rep.csv = csv.str();
  return rep;
}

// --- defaults against correlation --------------------------------------------------

Report sweep_m() {
  Report rep;
  rep.target = "sweep-m";
  rep.summary =
      "Expected core defaults under laissez-faire against the correlation "
      "parameter m (n_c=6, D=0.2, D0=0.8, R=1.25, theta=0.9, chi=2, r=0.05).";
  CPParams p;
  p.n_c = 6;
  p.n_p = 6;
  p.D = 0.2;
  p.D0 = 0.8;
  p.R = 1.25;
  p.theta = 0.9;
  p.chi = 2.0;
  p.r = 0.05;
  p.m = 1;
  const int k_R = cp_thresholds(p).k_R;
  const double base = (1.0 - p.theta) * p.n_c;
  rep.expect("n_c - 2 >= k^R >= (1-theta) n_c", p.n_c - 2 >= k_R && k_R >= base);
  const std::vector<DefaultsRow> rows = sweep_defaults_vs_m(p);
  std::ostringstream csv;
  CsvWriter w(csv, {"m", "feasible", "expected_defaults", "closed_form"});
  double worst = 0.0;
  for (const DefaultsRow& row : rows) {
    worst = std::max(worst, std::abs(row.expected_defaults - row.closed_form));
    w << row.m << row.feasible << row.expected_defaults << row.closed_form;
    w.end_row();
  }
  rep.csv = csv.str();
  rep.near("max deviation from closed form", worst, 0.0, 1e-12);
  bool flat = true;
  for (int m = 1; m <= k_R; ++m) {
    flat = flat && std::abs(rows[m - 1].expected_defaults - base) < 1e-12;
  }
  rep.expect("constant at (1-theta) n_c for m <= k^R", flat);
  const auto peak = std::max_element(
      rows.begin(), rows.end(), [](const DefaultsRow& a, const DefaultsRow& b) {
        return a.expected_defaults < b.expected_defaults;
      });
  rep.near("argmax m", peak->m, k_R + 1, 0.0);
  bool declining = true;
  for (int m = k_R + 2; m <= p.n_c; ++m) {
    declining = declining &&
                rows[m - 1].expected_defaults < rows[m - 2].expected_defaults;
  }
  rep.expect("strictly decreasing after the peak", declining);
  rep.near("expected defaults at m = n_c", rows.back().expected_defaults, base, 1e-12);
  return rep;
}

// --- single-bank regimes -------------------------------------------------------------

// Number of 4-connected regions of one label on a row-major grid.
int components(const std::vector<RegimeCell>& cells, int rows, int cols,
               BankRegime label) {
  std::vector<int> seen(cells.size(), 0);
  int count = 0;
  for (int start = 0; start < rows * cols; ++start) {
    if (seen[start] || cells[start].result.regime != label) continue;
    ++count;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      const int a = k / cols, b = k % cols;
      const int nbr[4][2] = {{a - 1, b}, {a + 1, b}, {a, b - 1}, {a, b + 1}};
      for (const auto& nb : nbr) {
        if (nb[0] < 0 || nb[0] >= rows || nb[1] < 0 || nb[1] >= cols) continue;
        const int t = nb[0] * cols + nb[1];
        if (seen[t] || cells[t].result.regime != label) continue;
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return count;
}

Report regime_map() {
  Report rep;
  rep.target = "regime-map";
  rep.summary =
      "Single-bank regulation regimes over the (excess return, NFC) plane "
      "with c=0.25 and the (bailout cost, NFC) plane with excess return 0.2, "
      "D^L=1.";
  std::ostringstream csv;
  CsvWriter w(csv, {"plane", "x", "nfc", "regime", "boundary"});
  for (RegimePlane plane : {RegimePlane::kExcessReturn, RegimePlane::kBailoutCost}) {
    RegimeMapSpec spec;
    spec.plane = plane;
    spec.x_min = 0.0;
    spec.x_max = 0.5;
    spec.x_steps = 41;
    spec.nfc_min = 0.0;
    spec.nfc_max = 0.6;
    spec.nfc_steps = 47;
    spec.liability = 1.0;
    spec.fixed_cost = 0.25;
    spec.fixed_excess = 0.2;
    const std::vector<RegimeCell> cells = sweep_regime_map(spec);
    const std::string name =
        plane == RegimePlane::kExcessReturn ? "excess-return" : "bailout-cost";
    bool straddles = true;
    for (int a = 0; a < spec.x_steps; ++a) {
      for (int b = 0; b < spec.nfc_steps; ++b) {
        const RegimeCell& cell = cells[a * spec.nfc_steps + b];
        w << name << cell.x << cell.nfc << bank_regime_name(cell.result.regime)
          << cell.result.boundary;
        w.end_row();
        // Neighbors with different regimes must sit on opposite sides of one
        // of the lines cost = NFC, c = NFC, cost = c.
        for (int t : {a * spec.nfc_steps + b + 1, (a + 1) * spec.nfc_steps + b}) {
          if ((t == a * spec.nfc_steps + b + 1 && b + 1 >= spec.nfc_steps) ||
              t >= static_cast<int>(cells.size())) {
            continue;
          }
          const SingleBankRegime& u = cell.result;
          const SingleBankRegime& v = cells[t].result;
          if (u.regime == v.regime || u.boundary || v.boundary) continue;
          const auto side = [](const SingleBankRegime& s) {
            return std::make_tuple(s.opportunity_cost < s.nfc, s.bailout_cost < s.nfc,
                                   s.opportunity_cost <= s.bailout_cost);
          };
          straddles = straddles && side(u) != side(v);
        }
      }
    }
    for (BankRegime g : {BankRegime::kLaissezFaire, BankRegime::kRestrict,
                         BankRegime::kBailout}) {
      rep.near(name + ": regions labelled " + bank_regime_name(g),
               components(cells, spec.x_steps, spec.nfc_steps, g), 1, 0.0);
    }
    rep.expect(name + ": regime changes only across the dividing lines", straddles);
  }
  rep.csv = csv.str();

  // Anchor on a cleared network: bank 2 of the two-bank chain.
  const Chain c;
  const Matrix q = c.holdings(1.0, 1.0);
  const CostModel costs(BankruptcyCostSpec{0.0, c.chi});
  const SingleBankRegime cheap = single_bank_regime(
      c.network(), q, 2, 0, 1, c.r, 0.05, c.scenarios(), costs);
  const SingleBankRegime dear = single_bank_regime(
      c.network(), q, 2, 0, 1, c.r, 0.15, c.scenarios(), costs);
  rep.near("chain bank 2 NFC = 2(1-theta) chi", cheap.nfc,
           2.0 * (1.0 - c.theta) * c.chi, 1e-12);
  rep.expect("chain bank 2 with c=0.05 is bailed out",
             cheap.regime == BankRegime::kBailout);
  rep.expect("chain bank 2 with c=0.15 is restricted",
             dear.regime == BankRegime::kRestrict);
  return rep;
}

// --- equity cross-holdings ------------------------------------------------------------

Report equity_countervail() {
  Report rep;
  rep.target = "equity-countervail";
  rep.summary =
      "Bank 2 owes d=0.3 to bank 1 and holds a share s of bank 1's equity; "
      "bank 2 holds asset 2 fully (theta=0.8, R=1.5, r=0.05); bank 1's best "
      "response across 50 values of s.";
  const double d = 0.3, theta = 0.8, R = 1.5, r = 0.05;
  std::ostringstream csv;
  CsvWriter w(csv, {"s", "lhs", "rhs", "prefers_safe", "best_response",
                    "engine_risky", "engine_cap"});
  int validated = 0, flips = 0;
  bool clear_of_tie = true;
  bool previous = false, first = false;
  for (int k = 0; k < 50; ++k) {
    const double s = 0.3 + (0.99 - 0.3) * k / 49.0;
    const CountervailingResult res = countervailing_example(d, s, theta, R, r, -1.0, 101);
    validated += res.cross_validated;
    clear_of_tie = clear_of_tie && std::abs(res.lhs - res.rhs) > 1e-6;
    if (k == 0) first = res.prefers_safe;
    if (k > 0 && res.prefers_safe != previous) ++flips;
    previous = res.prefers_safe;
    w << s << res.lhs << res.rhs << res.prefers_safe
      << (res.best_responses.empty() ? -1.0 : res.best_responses.front())
      << res.engine_risky << res.engine_cap;
    w.end_row();
  }
  rep.csv = csv.str();
  rep.expect("no sweep point within 1e-6 of the crossing", clear_of_tie);
  rep.near("points where the best response matches the condition", validated, 50, 0.0);
  rep.near("flips from risky to capped", flips, 1, 0.0);
  rep.expect("risky at the smallest s, capped at the largest", !first && previous);
  return rep;
}

// --- conservation -------------------------------------------------------------------

Report conservation(std::uint64_t seed) {
  Report rep;
  rep.target = "conservation";
  rep.summary =
      "Value conservation V_0 = sum q p - sum b on 100 random debt-only and "
      "100 random debt-plus-equity instances.";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 8);
  double worst_debt = 0.0, worst_equity = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    const int K = 3;
    Matrix debt = Matrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i != j && unit(rng) < 0.5) debt(i, j) = unit(rng);
      }
    }
    const Network net = Network::from_debt(debt);
    Matrix q = Matrix::Zero(n + 1, K);
    for (int i = 1; i <= n; ++i) {
      for (int k = 0; k < K; ++k) q(i, k) = unit(rng);
    }
    std::vector<double> p(K);
    for (double& x : p) x = 2.0 * unit(rng);
    const CostModel costs(BankruptcyCostSpec{0.3 * unit(rng), 0.5 * unit(rng)});
    if (trial < 100) {
      worst_debt = std::max(worst_debt, value_conservation_check(net, q, p, costs));
    } else {
      Matrix S = Matrix::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        double left = 0.9;
        for (int i = 0; i < n; ++i) {
          if (i == j || unit(rng) < 0.5) continue;
          S(i, j) = left * unit(rng);
          left -= S(i, j);
        }
      }
      const EquityMatrix E = EquityMatrix::from_bank_matrix(S);
      worst_equity = std::max(worst_equity, conservation_check_equity(net, E, q, p, costs));
    }
  }
  rep.near("max residual, debt only", worst_debt, 0.0, 1e-9);
  rep.near("max residual, debt and equity", worst_equity, 0.0, 1e-9);
  return rep;
}

}  // namespace

bool Report::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::near(const std::string& label, double computed, double expected,
                  double tol) {
  checks.push_back({label, computed, expected, std::abs(computed - expected) <= tol});
}

void Report::at_least(const std::string& label, double computed, double minimum) {
  checks.push_back({label, computed, minimum, computed >= minimum});
}

void Report::expect(const std::string& label, bool ok) {
  checks.push_back({label, ok ? 1.0 : 0.0, 1.0, ok});
}

std::string Report::render() const {
  std::ostringstream os;
  os << "# " << target << "\n# " << summary << "\n";
  for (const Check& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.label
       << "  computed=" << format_double(c.computed)
       << " expected=" << format_double(c.expected) << "\n";
  }
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

const std::vector<std::string>& replicate_targets() {
  static const std::vector<std::string> names{
      "motivating-2bank", "claim1",    "cp-regimes", "cp-asym-example",
      "ns-example",       "star-nfc",  "wheel-nfc",  "sweep-m",
      "regime-map",       "equity-countervail", "conservation"};
  return names;
}

Report run_replicate(const std::string& name, std::uint64_t seed) {
  static const std::map<std::string, std::function<Report(std::uint64_t)>> table{
      {"motivating-2bank", [](std::uint64_t) { return motivating_2bank(); }},
      {"claim1", [](std::uint64_t) { return claim1(); }},
      {"cp-regimes", [](std::uint64_t) { return cp_regimes(); }},
      {"cp-asym-example", [](std::uint64_t) { return cp_asym_example(); }},
      {"ns-example", [](std::uint64_t) { return ns_example(); }},
      {"star-nfc", [](std::uint64_t) { return star_nfc(); }},
      {"wheel-nfc", [](std::uint64_t) { return wheel_nfc(); }},
      {"sweep-m", [](std::uint64_t) { return sweep_m(); }},
      {"regime-map", [](std::uint64_t) { return regime_map(); }},
      {"equity-countervail", [](std::uint64_t) { return equity_countervail(); }},
      {"conservation", [](std::uint64_t s) { return conservation(s); }},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw Error(ErrorCode::kInvalidSpec, "unknown replicate target \"" + name + "\"");
  }
  return it->second(seed);
}

}  // namespace netclear::tools
