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


#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netclear/centrality.hpp"
#include "netclear/clearing.hpp"
#include "netclear/equity.hpp"
#include "netclear/errors.hpp"
#include "netclear/game.hpp"
#include "netclear/io.hpp"
#include "netclear/regulation.hpp"
#include "replicate.hpp"

namespace netclear::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string network;
  std::string scenarios;
  std::string holdings;
  std::string costs;
  std::string game;
  std::string policy;
  std::string config;
  std::string target;
  std::string selection;  // empty: greatest, or the game file's choice
  std::uint64_t seed = 42;
  std::string out;
  int safe_asset = -1;
};

Selection parse_selection(const std::string& s) {
  if (s.empty() || s == "greatest") return Selection::kGreatest;
  if (s == "least") return Selection::kLeast;
  throw Error(ErrorCode::kInvalidSpec, "selection must be greatest or least");
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParseError, source + ": line " + std::to_string(line) +
                                            ", column " + std::to_string(col) +
                                            ": " + e.what());
  }
}

// Node-indexed rows of asset weights. Without a file, bank i holds asset
// i-1 when there is one asset per bank and nothing when there are none.
Matrix load_holdings(const std::string& path, const Network& net, int K) {
  const int N = net.node_count();
  if (path.empty()) {
    if (K == 0) return Matrix::Zero(N, 0);
    if (K < net.bank_count()) {
      throw Error(ErrorCode::kInvalidSpec,
                  "--holdings is required unless there is an asset per bank");
    }
    Matrix q = Matrix::Zero(N, K);
    for (int i = 1; i < N; ++i) q(i, i - 1) = 1.0;
    return q;
  }
  const json doc = parse_json(read_text(path), path);
  const json& rows = doc.is_object() ? doc.at("holdings") : doc;
  if (!rows.is_array() || static_cast<int>(rows.size()) != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                path + ": holdings need one row per node");
  }
  Matrix q = Matrix::Zero(N, K);
  for (int i = 0; i < N; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != K) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path + ": holdings row " + std::to_string(i) + " needs " +
                      std::to_string(K) + " entries");
    }
    for (int k = 0; k < K; ++k) q(i, k) = rows[i][k].get<double>();
  }
  return q;
}

// A single scenario with no assets when no file is given.
ScenarioSet load_scenarios(const std::string& path, std::uint64_t seed) {
  if (path.empty()) return ScenarioSet::from_scenarios({Scenario{1.0, {}}});
  ScenarioSet set = scenarios_from_json(read_text(path), path);
  if (set.monte_carlo()) {
    MonteCarlo mc = *set.monte_carlo();
    mc.seed = seed;
    set = set.with_monte_carlo(mc);
  }
  return set;
}

CostModel load_costs(const std::string& path) {
  if (path.empty()) return CostModel();
  return costs_from_json(read_text(path), path);
}

// Writes to <out>/<name> or, without --out, to the stream.
void emit(const RunConfig& cfg, const std::string& name, const std::string& text,
          std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  fs::create_directories(cfg.out);
  write_text(fs::path(cfg.out) / name, text);
}

struct Inputs {
  NetworkDocument doc;
  ScenarioSet scenarios;
  Matrix q;
  CostModel costs;
};

Inputs load_inputs(const RunConfig& cfg) {
  if (cfg.network.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "--network is required");
  }
  Inputs in;
  in.doc = network_from_json(read_text(cfg.network), cfg.network);
  in.scenarios = load_scenarios(cfg.scenarios, cfg.seed);
  in.q = load_holdings(cfg.holdings, in.doc.network, in.scenarios.asset_count());
  in.costs = load_costs(cfg.costs);
  return in;
}

int cmd_clear(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const Selection selection = parse_selection(cfg.selection);
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);
  std::ostringstream summary;
  CsvWriter w(summary, {"scenario_id", "prob", "defaults", "total_cost"});
  const std::vector<Scenario> support = in.scenarios.realize();
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Scenario& sc = support[k];
    const ClearingSolution sol =
        in.doc.equity ? clear_debt_equity(in.doc.network, *in.doc.equity, in.q,
                                          sc.returns, in.costs, selection)
                      : clear(in.doc.network, in.q, sc.returns, in.costs, selection);
    write_text(dir / ("solution_" + std::to_string(k) + ".json"),
               solution_to_json(sol));
    w << k << sc.probability << sol.default_count() << sol.total_cost();
    w.end_row();
  }
  write_text(dir / "summary.csv", summary.str());
  out << "cleared " << support.size() << " scenario(s) into " << dir.string() << "\n";
  return kExitOk;
}

int cmd_replicate(const RunConfig& cfg, std::ostream& out) {
  const Report rep = run_replicate(cfg.target, cfg.seed);
  out << rep.render();
  if (!cfg.out.empty()) {
    fs::create_directories(cfg.out);
    write_text(fs::path(cfg.out) / (cfg.target + ".txt"), rep.render());
    if (!rep.csv.empty()) write_text(fs::path(cfg.out) / (cfg.target + ".csv"), rep.csv);
  }
  return rep.passed() ? kExitOk : kExitAcceptanceFailed;
}

// --- sweep --------------------------------------------------------------------

struct Axis {
  std::string name;
  double min = 0.0, max = 0.0;
  int steps = 1;

  double at(int k) const {
    return steps == 1 ? min : min + (max - min) * k / (steps - 1);
  }
};

std::vector<Axis> parse_axes(const json& doc) {
  std::vector<Axis> axes;
  for (const json& a : doc.value("axes", json::array())) {
    Axis axis;
    axis.name = a.at("name").get<std::string>();
    axis.min = a.at("min").get<double>();
    axis.max = a.value("max", axis.min);
    axis.steps = a.value("steps", 1);
    if (axis.steps < 1) {
      throw Error(ErrorCode::kInvalidSpec, "axis " + axis.name + " needs steps >= 1");
    }
    axes.push_back(axis);
  }
  return axes;
}

// Visits the cartesian product, first axis outermost.
void for_each_point(const std::vector<Axis>& axes,
                    const std::function<void(const std::vector<double>&)>& f) {
  std::vector<int> idx(axes.size(), 0);
  std::vector<double> x(axes.size());
  while (true) {
    for (std::size_t d = 0; d < axes.size(); ++d) x[d] = axes[d].at(idx[d]);
    f(x);
    int d = static_cast<int>(axes.size()) - 1;
    while (d >= 0 && ++idx[d] == axes[d].steps) idx[d--] = 0;
    if (d < 0) return;
  }
}

void set_cp_field(CPParams& p, const std::string& name, double v) {
  if (name == "n_c") p.n_c = static_cast<int>(std::lround(v));
  else if (name == "n_p") p.n_p = static_cast<int>(std::lround(v));
  else if (name == "D") p.D = v;
  else if (name == "D0") p.D0 = v;
  else if (name == "theta") p.theta = v;
  else if (name == "R") p.R = v;
  else if (name == "r") p.r = v;
  else if (name == "chi") p.chi = v;
  else if (name == "m") p.m = static_cast<int>(std::lround(v));
  else throw Error(ErrorCode::kInvalidSpec, "unknown core-periphery parameter " + name);
}

std::string sweep_cp(const json& doc) {
  CPParams base;
  const json fields = doc.value("base", json::object());
  for (const auto& [key, value] : fields.items()) {
    set_cp_field(base, key, value.get<double>());
  }
  const std::vector<Axis> axes = parse_axes(doc);
  std::vector<std::string> header;
  for (const Axis& a : axes) header.push_back(a.name);
  for (const char* h : {"regime", "threshold_regime", "tie", "welfare", "theta_low",
                        "theta_high", "theta_sym"}) {
    header.emplace_back(h);
  }
  std::ostringstream os;
  CsvWriter w(os, header);
  for_each_point(axes, [&](const std::vector<double>& x) {
    CPParams p = base;
    for (std::size_t d = 0; d < axes.size(); ++d) set_cp_field(p, axes[d].name, x[d]);
    const CPRegimeResult res = cp_optimal_regime(p);
    for (double v : x) w << v;
    w << regime_name(res.regime) << regime_name(res.threshold_regime) << res.tie
      << res.welfare << res.thresholds.theta_low << res.thresholds.theta_high
      << res.thresholds.theta_sym;
    w.end_row();
  });
  return os.str();
}

std::string sweep_regime_map_csv(const json& doc) {
  RegimeMapSpec spec;
  const std::string plane = doc.value("plane", std::string("excess_return"));
  if (plane == "excess_return") {
    spec.plane = RegimePlane::kExcessReturn;
  } else if (plane == "bailout_cost") {
    spec.plane = RegimePlane::kBailoutCost;
  } else {
    throw Error(ErrorCode::kInvalidSpec, "plane must be excess_return or bailout_cost");
  }
  spec.x_min = doc.value("x_min", spec.x_min);
  spec.x_max = doc.value("x_max", spec.x_max);
  spec.x_steps = doc.value("x_steps", spec.x_steps);
  spec.nfc_min = doc.value("nfc_min", spec.nfc_min);
  spec.nfc_max = doc.value("nfc_max", spec.nfc_max);
  spec.nfc_steps = doc.value("nfc_steps", spec.nfc_steps);
  spec.liability = doc.value("liability", spec.liability);
  spec.fixed_excess = doc.value("fixed_excess", spec.fixed_excess);
  spec.fixed_cost = doc.value("fixed_cost", spec.fixed_cost);
  std::ostringstream os;
  CsvWriter w(os, {"x", "nfc", "regime", "opportunity_cost", "bailout_cost",
                   "boundary"});
  for (const RegimeCell& cell : sweep_regime_map(spec)) {
    w << cell.x << cell.nfc << bank_regime_name(cell.result.regime)
      << cell.result.opportunity_cost << cell.result.bailout_cost
      << cell.result.boundary;
    w.end_row();
  }
  return os.str();
}

// Expected welfare of a fixed network and portfolio as cost parameters vary.
std::string sweep_clearing(const json& doc, const fs::path& base_dir,
                           const RunConfig& cfg) {
  RunConfig local = cfg;
  const auto resolve = [&](const char* key) -> std::string {
    if (!doc.contains(key)) return {};
    return (base_dir / doc.at(key).get<std::string>()).string();
  };
  local.network = resolve("network");
  local.scenarios = resolve("scenarios");
  local.holdings = resolve("holdings");
  local.costs = resolve("costs");
  if (doc.contains("selection")) local.selection = doc.at("selection").get<std::string>();
  const Inputs in = load_inputs(local);
  const Selection selection = parse_selection(local.selection);
  const std::vector<Axis> axes = parse_axes(doc);
  for (const Axis& a : axes) {
    if (a.name != "chi" && a.name != "a") {
      throw Error(ErrorCode::kInvalidSpec, "clearing sweeps vary chi or a, not " + a.name);
    }
  }
  std::vector<std::string> header;
  for (const Axis& a : axes) header.push_back(a.name);
  for (const char* h : {"welfare", "returns", "bankruptcy_costs", "expected_defaults"}) {
    header.emplace_back(h);
  }
  std::ostringstream os;
  CsvWriter w(os, header);
  const int N = in.doc.network.node_count();
  for_each_point(axes, [&](const std::vector<double>& x) {
    std::vector<BankruptcyCostSpec> specs(N);
    for (int i = 0; i < N; ++i) {
      specs[i] = in.costs.at(i);
      for (std::size_t d = 0; d < axes.size(); ++d) {
        (axes[d].name == "chi" ? specs[i].chi : specs[i].a) = x[d];
      }
    }
    const WelfareReport rep = expected_welfare(in.doc.network, in.q, in.scenarios,
                                               CostModel(specs), selection);
    for (double v : x) w << v;
    w << rep.total << rep.returns << rep.costs << rep.expected_defaults;
    w.end_row();
  });
  return os.str();
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.config.empty()) throw Error(ErrorCode::kInvalidSpec, "--config is required");
  const json doc = parse_json(read_text(cfg.config), cfg.config);
  const std::string kind = doc.value("kind", std::string());
  std::string csv;
  if (kind == "cp") {
    csv = sweep_cp(doc);
  } else if (kind == "regime_map") {
    csv = sweep_regime_map_csv(doc);
  } else if (kind == "clearing") {
    csv = sweep_clearing(doc, fs::path(cfg.config).parent_path(), cfg);
  } else {
    throw Error(ErrorCode::kInvalidSpec,
                cfg.config + ": kind must be cp, regime_map or clearing");
  }
  emit(cfg, "sweep.csv", csv, out);
  return kExitOk;
}

// --- games, centrality, policies ----------------------------------------------

GameSpec load_game(const RunConfig& cfg) {
  if (cfg.game.empty()) throw Error(ErrorCode::kInvalidSpec, "--game is required");
  GameSpec game = game_from_json(read_text(cfg.game),
                                 fs::path(cfg.game).parent_path(), cfg.game);
  if (!cfg.selection.empty()) game.selection = parse_selection(cfg.selection);
  return game;
}

std::string describe_profile(const GameSpec& game, const Profile& p) {
  std::string s;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (i > 1) s += ' ';
    s += game.spaces[i].describe(p[i]);
  }
  return s;
}

int cmd_nash(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = load_game(cfg);
  const int n = game.network.bank_count();
  std::vector<std::string> header{"kind", "profile"};
  for (int i = 1; i <= n; ++i) header.push_back("equity_" + std::to_string(i));
  header.emplace_back("welfare");
  header.emplace_back("is_nash");
  std::ostringstream os;
  CsvWriter w(os, header);
  const auto row = [&](const char* kind, const Profile& p, bool nash) {
    const Vector e = expected_equities(game, p);
    w << kind << describe_profile(game, p);
    for (int i = 1; i <= n; ++i) w << e[i];
    w << profile_welfare(game, p).total << nash;
    w.end_row();
  };
  for (const Profile& p : enumerate_nash(game)) row("nash", p, true);
  for (const Profile& p : social_optimum(game).argmax) row("optimum", p, is_nash(game, p));
  emit(cfg, "nash.csv", os.str(), out);
  return kExitOk;
}

int cmd_centrality(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const int K = in.scenarios.asset_count();
  const int safe = cfg.safe_asset >= 0 ? cfg.safe_asset : K - 1;
  if (safe < 0 || safe >= K) {
    throw Error(ErrorCode::kInvalidSpec, "--safe-asset is out of range");
  }
  std::ostringstream os;
  CsvWriter w(os, {"bank", "nfc", "bailout_centrality"});
  for (const CentralityRow& row :
       centrality_report(in.doc.network, in.q, to_safe_asset(safe), in.scenarios,
                         in.costs, parse_selection(cfg.selection))) {
    w << row.bank << row.nfc << row.bailout;
    w.end_row();
  }
  emit(cfg, "centrality.csv", os.str(), out);
  return kExitOk;
}

int cmd_policy(const RunConfig& cfg, std::ostream& out) {
  const GameSpec game = load_game(cfg);
  if (cfg.policy.empty()) throw Error(ErrorCode::kInvalidSpec, "--policy is required");
  const Policy policy = policy_from_json(read_text(cfg.policy), cfg.policy);
  const PolicyOutcome res = policy_welfare(policy, game, true);
  std::vector<std::string> header{"welfare", "returns", "bankruptcy_costs",
                                  "bailout_costs", "expected_defaults"};
  for (std::size_t i = 1; i < res.shares.size(); ++i) {
    header.push_back("share_" + std::to_string(i));
  }
  std::ostringstream os;
  CsvWriter w(os, header);
  w << res.welfare << res.returns << res.bankruptcy_costs << res.bailout_costs
    << res.expected_defaults;
  for (std::size_t i = 1; i < res.shares.size(); ++i) w << res.shares[i];
  w.end_row();
  emit(cfg, "policy.csv", os.str(), out);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoConvergence:
    case ErrorCode::kSpaceTooLarge:
      return kExitSolverError;
    default:
      return kExitConfigError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app("Clearing, investment games and regulation on interbank networks",
               "netclear");
  app.require_subcommand(1);
  app.add_option("--selection", cfg.selection, "Fixed point to report")
      ->check(CLI::IsMember({"greatest", "least"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled scenario sets");
  app.add_option("--out", cfg.out, "Output directory");

  const auto inputs = [&](CLI::App* sub) {
    sub->add_option("--network", cfg.network, "Network JSON")->required();
    sub->add_option("--scenarios", cfg.scenarios, "Scenario JSON");
    sub->add_option("--holdings", cfg.holdings, "Node-indexed holdings JSON");
    sub->add_option("--costs", cfg.costs, "Bankruptcy cost JSON");
  };
  CLI::App* clear_cmd = app.add_subcommand("clear", "Clear every scenario");
  inputs(clear_cmd);
  CLI::App* replicate_cmd = app.add_subcommand("replicate", "Run a named reproduction");
  replicate_cmd->add_option("target", cfg.target, "Target name")->required();
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Parameter grid to CSV");
  sweep_cmd->add_option("--config", cfg.config, "Sweep JSON")->required();
  CLI::App* nash_cmd = app.add_subcommand("nash", "Nash equilibria and optimum");
  nash_cmd->add_option("--game", cfg.game, "Game JSON")->required();
  CLI::App* centrality_cmd = app.add_subcommand("centrality", "NFC and bailout centrality");
  inputs(centrality_cmd);
  centrality_cmd->add_option("--safe-asset", cfg.safe_asset,
                             "Counterfactual asset (default: last)");
  CLI::App* policy_cmd = app.add_subcommand("policy", "Welfare of a policy");
  policy_cmd->add_option("--game", cfg.game, "Game JSON")->required();
  policy_cmd->add_option("--policy", cfg.policy, "Policy JSON")->required();
  for (CLI::App* sub : {clear_cmd, replicate_cmd, sweep_cmd, nash_cmd, centrality_cmd,
                        policy_cmd}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*clear_cmd) return cmd_clear(cfg, out);
    if (*replicate_cmd) return cmd_replicate(cfg, out);
    if (*sweep_cmd) return cmd_sweep(cfg, out);
    if (*nash_cmd) return cmd_nash(cfg, out);
    if (*centrality_cmd) return cmd_centrality(cfg, out);
    if (*policy_cmd) return cmd_policy(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error [config]: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const fs::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace netclear::tools
