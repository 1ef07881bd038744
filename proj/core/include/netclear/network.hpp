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

// Interbank debt networks.
//
// All node-indexed containers in the library have length n + 1. Index 0 is the
// outside sector (depositors and other private creditors); banks are 1..n.
// debt(i, j) is the face value that debtor j owes creditor i.

#ifndef NETCLEAR_NETWORK_HPP_
#define NETCLEAR_NETWORK_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netclear {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class Network {
 public:
  // The empty network: no banks, only the outside node.
  Network();

  // Validates and wraps a (n+1)x(n+1) debt matrix. Throws kDimensionMismatch,
  // kNegativeEntry or kNonzeroDiagonal.
  static Network from_debt(Matrix debt, std::vector<std::string> labels = {});

  int bank_count() const { return static_cast<int>(debt_.rows()) - 1; }
  int node_count() const { return static_cast<int>(debt_.rows()); }

  const Matrix& debt() const { return debt_; }
  double debt(int creditor, int debtor) const { return debt_(creditor, debtor); }

  // D_i^A: total face value owed to node i.
  double nominal_assets(int i) const { return assets_[i]; }
  // D_i^L: total face value owed by node i.
  double nominal_liabilities(int i) const { return liabilities_[i]; }
  const Vector& nominal_assets() const { return assets_; }
  const Vector& nominal_liabilities() const { return liabilities_; }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int i) const;

  // True when the outside node both owes to and is owed by some bank. The
  // canonical constructors never produce this; general inputs may.
  bool outside_node_two_sided() const;

  // What node 0 owes banks minus what banks owe node 0. Equals the sum over
  // banks of D^A - D^L.
  double outside_net_liability() const;

  bool operator==(const Network& other) const;

 private:
  Matrix debt_;
  Vector assets_;
  Vector liabilities_;
  std::vector<std::string> labels_;
};

Network build_general(const Matrix& debt);

// Bankruptcy cost of a defaulting bank: chi + a * (its assets).
struct BankruptcyCostSpec {
  double a = 0.0;
  double chi = 0.0;
};

void validate(const BankruptcyCostSpec& spec);

// Per-node bankruptcy costs. Implicitly constructible from a single spec,
// which then applies to every bank.
class CostModel {
 public:
  CostModel(BankruptcyCostSpec uniform = {});  // NOLINT(runtime/explicit)
  explicit CostModel(std::vector<BankruptcyCostSpec> per_node);

  const BankruptcyCostSpec& at(int node) const {
    return per_node_.empty() ? uniform_ : per_node_[node];
  }
  bool is_uniform() const { return per_node_.empty(); }

  // Copy with node i's spec replaced; expands a uniform model to n+1 entries.
  CostModel with_override(int node_count, int node,
                          BankruptcyCostSpec spec) const;

 private:
  BankruptcyCostSpec uniform_;
  std::vector<BankruptcyCostSpec> per_node_;
};

// Investable capital and asset availability per bank.
struct AssetUniverse {
  int asset_count = 0;
  std::vector<std::vector<int>> available;  // node-indexed, asset ids 0..K-1
  std::vector<double> capital;              // node-indexed

  static AssetUniverse unrestricted(int bank_count, int asset_count,
                                    double capital = 1.0);
};

// Throws kInfeasiblePortfolio unless every bank row of q is nonnegative, uses
// only available assets and spends exactly its capital.
void validate_portfolio(const AssetUniverse& universe, const Matrix& q,
                        double tol = 1e-9);

// Core banks are 1..n_c and form a clique with mutual claims D. Peripheral
// banks follow, n_p / n_c per core bank in core order. Each core bank owes
// D_0 split equally over its peripheral banks, which pass it on to node 0.
struct CorePeripherySpec {
  int n_c = 0;
  int n_p = 0;
  double D = 0.0;
  double D0 = 0.0;
};

Network build_core_periphery(const CorePeripherySpec& spec);

// Core index range helpers for the layout above.
int periphery_per_core(const CorePeripherySpec& spec);
std::vector<int> peripheral_banks_of(const CorePeripherySpec& spec, int core);

struct Tier {
  int size = 0;
  // Tiers (0-based, lowest first) whose banks this tier's banks have mutual
  // claims with. Listing the tier itself links its members to each other.
  std::vector<int> counterparty_tiers;
};

struct NestedSplitSpec {
  std::vector<Tier> tiers;  // lowest tier first
  double D = 0.0;
  double D0 = 0.0;
  int periphery_per_core = 1;
};

struct NestedSplitNetwork {
  Network network;
  std::vector<int> tier_of;      // node-indexed, -1 for node 0 and periphery
  std::vector<int> independent;  // core banks in tiers below the cut
  std::vector<int> clique;       // core banks in tiers at or above the cut
  int clique_cut = 0;            // first clique tier (0-based)
  int core_count = 0;
};

// Throws kInvalidSpec for malformed tiers and kNotNested when counterparty
// sets are not strictly nested or no clique/independent split exists.
NestedSplitNetwork build_nested_split(const NestedSplitSpec& spec);

// Bank 1 is the center. Throws kTooSmall for n < 2.
Network build_star(int n, double D, double outside_debt);

// Center owes D to banks 2..n; bank j owes 2D to bank j+1, bank n owes 2D to
// bank 2. Throws kTooSmall for n < 4.
Network build_directed_wheel(int n, double D, double outside_debt);

}  // namespace netclear

#endif  // NETCLEAR_NETWORK_HPP_
