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

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "netclear/io.hpp"

namespace netclear {
namespace {

namespace fs = std::filesystem;
using tools::run_cli;

const fs::path kConfigs = NETCLEAR_CONFIG_DIR;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string cfg(const char* name) { return (kConfigs / name).string(); }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("netclear_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c == '"') {
        if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = !quoted;
        }
      } else if (c == ',' && !quoted) {
        row.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

TEST(Cli, ClearWritesFiles) {
  TempDir dir;
  const CliRun r = cli({"--out", dir.str(), "clear", "--network", cfg("two_bank.network.json"),
                     "--scenarios", cfg("two_bank.scenarios.json"), "--holdings",
                     cfg("two_bank.holdings.json"), "--costs", cfg("two_bank.costs.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(read_text(dir.path() / "summary.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"scenario_id", "prob", "defaults", "total_cost"}));
  double total = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    total += std::stod(rows[k][1]);
    EXPECT_TRUE(fs::exists(dir.path() / ("solution_" + rows[k][0] + ".json")));
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Cli, EmptyNetworkSucceeds) {
  TempDir dir;
  const CliRun r = cli({"--out", dir.str(), "clear", "--network", cfg("empty.network.json")});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ConfigErrorsExitTwo) {
  TempDir dir;
  const fs::path bad = dir.path() / "bad.json";
  write_text(bad, "{\n  \"n\": 2,\n  \"debt\": [[0, 1]\n");
  const CliRun r = cli({"clear", "--network", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"replicate", "no-such-target"}).code, 2);
  EXPECT_EQ(cli({"clear", "--network", (dir.path() / "missing.json").string()}).code, 2);
  EXPECT_EQ(cli({"--selection", "middle", "replicate", "claim1"}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
}

TEST(Cli, ReplicateThreeBankTarget) {
  const CliRun r = cli({"replicate", "claim1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS  all Nash have banks 2,3 on same asset"), std::string::npos)
      << r.out;
}

TEST(Cli, OutputsAreDeterministic) {
  TempDir a, b;
  for (const TempDir* d : {&a, &b}) {
    ASSERT_EQ(cli({"--out", d->str(), "replicate", "sweep-m"}).code, 0);
    ASSERT_EQ(cli({"--out", d->str(), "sweep", "--config", cfg("sweep_cp_theta.json")}).code, 0);
  }
  for (const char* f : {"sweep-m.txt", "sweep-m.csv", "sweep.csv"}) {
    EXPECT_EQ(read_text(a.path() / f), read_text(b.path() / f)) << f;
  }
}

TEST(Cli, ClearingSweepMatchesLibrary) {
  TempDir dir;
  const fs::path config = kConfigs / "sweep_two_bank_chi.json";
  const CliRun r = cli({"sweep", "--config", config.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 12u);
  const std::size_t chi = column(rows[0], "chi");
  const std::size_t welfare = column(rows[0], "welfare");

  const Network net = network_from_json(read_text(kConfigs / "two_bank.network.json")).network;
  const ScenarioSet sc = scenarios_from_json(read_text(kConfigs / "two_bank.scenarios.json"));
  Matrix q = Matrix::Zero(3, 2);
  q(1, 0) = q(2, 0) = 1.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double x = std::stod(rows[k][chi]);
    const WelfareReport rep = expected_welfare(net, q, sc, CostModel(BankruptcyCostSpec{0.0, x}));
    EXPECT_EQ(std::stod(rows[k][welfare]), rep.total) << "chi=" << x;
  }
}

TEST(Cli, ThetaSweepThresholdColumn) {
  const CliRun r = cli({"sweep", "--config", cfg("sweep_cp_theta.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 46u);
  CPParams p{3, 3, 0.2, 0.8, 0.0, 1.1, 0.05, 2.0, 2};
  for (std::size_t k = 1; k < rows.size(); ++k) {
    p.theta = std::stod(rows[k][column(rows[0], "theta")]);
    const CPThresholds t = cp_thresholds(p);
    EXPECT_EQ(std::stod(rows[k][column(rows[0], "theta_high")]), t.theta_high);
    EXPECT_EQ(std::stod(rows[k][column(rows[0], "theta_low")]), t.theta_low);
  }
}

TEST(Cli, RegimeMapHasThreeRegions) {
  const CliRun r = cli({"sweep", "--config", cfg("sweep_regime_map.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 41u * 47u);
  std::set<std::string> regimes;
  for (std::size_t k = 1; k < rows.size(); ++k) regimes.insert(rows[k][2]);
  EXPECT_EQ(regimes.size(), 3u);
}

TEST(Cli, NashOnTwoBankGame) {
  const CliRun r = cli({"nash", "--game", cfg("two_bank.game.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u) << r.out;
  EXPECT_EQ(rows[1][0], "nash");
  EXPECT_NEAR(std::stod(rows[1][column(rows[0], "welfare")]), 2.2, 1e-12);
  EXPECT_EQ(rows[2][0], "optimum");
  EXPECT_NEAR(std::stod(rows[2][column(rows[0], "welfare")]), 0.8 * 1.5 + 0.6 * (1.05 - 0.8 * 1.5) / 1.05 + 1.2,
              1e-12);
  EXPECT_EQ(rows[2].back(), "0");
}

TEST(Cli, CentralityColumns) {
  const CliRun r = cli({"centrality", "--network", cfg("two_bank.network.json"), "--scenarios",
                     cfg("two_bank.scenarios.json"), "--holdings", cfg("two_bank.holdings.json"),
                     "--costs", cfg("two_bank.costs.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"bank", "nfc", "bailout_centrality"}));
}

TEST(Cli, PolicyWelfare) {
  const CliRun r =
      cli({"policy", "--game", cfg("two_bank.game.json"), "--policy", cfg("two_bank.policy.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][0]), 0.8 * 1.5 + 0.6 * (1.05 - 0.8 * 1.5) / 1.05 + 1.2, 1e-12);
}

TEST(Cli, OversizedGameIsSolverError) {
  TempDir dir;
  std::ostringstream game;
  game << R"({"network": {"n": 6, "debt": [)";
  for (int i = 0; i <= 6; ++i) {
    game << (i ? "," : "") << "[0,0,0,0,0,0,0]";
  }
  game << R"(]}, "scenarios": {"model": "independent", "assets": 1, "theta": 0.8,
             "high": 1.5, "low": 0.0, "safe": 1.05}, "strategies": [)";
  for (int i = 0; i < 6; ++i) {
    game << (i ? "," : "") << R"({"type": "grid", "risky": 0, "safe": 1})";
  }
  game << "]}";
  const fs::path path = dir.path() / "big.game.json";
  write_text(path, game.str());
  const CliRun r = cli({"nash", "--game", path.string()});
  EXPECT_EQ(r.code, 3) << r.err;
}

}  // namespace
}  // namespace netclear
