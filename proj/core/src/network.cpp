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

#include "netclear/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "netclear/errors.hpp"

namespace netclear {

Network::Network() : debt_(Matrix::Zero(1, 1)), assets_(Vector::Zero(1)),
                     liabilities_(Vector::Zero(1)) {}

Network Network::from_debt(Matrix debt, std::vector<std::string> labels) {
  if (debt.rows() < 1 || debt.rows() != debt.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "debt matrix must be square with side n+1 >= 1");
  }
  const int nodes = static_cast<int>(debt.rows());
  if (!labels.empty() && static_cast<int>(labels.size()) != nodes - 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected one label per bank, got " +
                    std::to_string(labels.size()));
  }
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      const double v = debt(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::kNegativeEntry,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is negative or not finite");
      }
    }
    if (debt(i, i) != 0.0) {
      throw Error(ErrorCode::kNonzeroDiagonal,
                  "node " + std::to_string(i) + " has a claim on itself");
    }
  }
  Network net;
  net.debt_ = std::move(debt);
  net.assets_ = net.debt_.rowwise().sum();
  net.liabilities_ = net.debt_.colwise().sum().transpose();
  net.labels_ = std::move(labels);
  return net;
}

std::string Network::label(int i) const {
  if (i == 0) return "outside";
  if (!labels_.empty()) return labels_[i - 1];
  return "bank" + std::to_string(i);
}

bool Network::outside_node_two_sided() const {
  for (int i = 1; i < node_count(); ++i) {
    if (debt_(0, i) > 0.0 && debt_(i, 0) > 0.0) return true;
  }
  return false;
}

double Network::outside_net_liability() const {
  return liabilities_[0] - assets_[0];
}

bool Network::operator==(const Network& other) const {
  return debt_.rows() == other.debt_.rows() && debt_ == other.debt_ &&
         labels_ == other.labels_;
}

Network build_general(const Matrix& debt) { return Network::from_debt(debt); }

void validate(const BankruptcyCostSpec& spec) {
  if (!(spec.a >= 0.0 && spec.a <= 1.0) || !(spec.chi >= 0.0) ||
      !std::isfinite(spec.chi)) {
    throw Error(ErrorCode::kInvalidSpec,
                "bankruptcy costs need 0 <= a <= 1 and finite chi >= 0");
  }
}

CostModel::CostModel(BankruptcyCostSpec uniform) : uniform_(uniform) {
  validate(uniform_);
}

CostModel::CostModel(std::vector<BankruptcyCostSpec> per_node)
    : per_node_(std::move(per_node)) {
  for (const auto& spec : per_node_) validate(spec);
}

CostModel CostModel::with_override(int node_count, int node,
                                   BankruptcyCostSpec spec) const {
  std::vector<BankruptcyCostSpec> expanded;
  expanded.reserve(node_count);
  for (int i = 0; i < node_count; ++i) expanded.push_back(at(i));
  expanded[node] = spec;
  return CostModel(std::move(expanded));
}

AssetUniverse AssetUniverse::unrestricted(int bank_count, int asset_count,
                                          double capital) {
  AssetUniverse u;
  u.asset_count = asset_count;
  std::vector<int> all(asset_count);
  for (int k = 0; k < asset_count; ++k) all[k] = k;
  u.available.assign(bank_count + 1, all);
  u.capital.assign(bank_count + 1, capital);
  u.capital[0] = 0.0;
  return u;
}

void validate_portfolio(const AssetUniverse& universe, const Matrix& q,
                        double tol) {
  const int nodes = static_cast<int>(universe.capital.size());
  if (q.rows() != nodes || q.cols() != universe.asset_count) {
    throw Error(ErrorCode::kDimensionMismatch,
                "portfolio must be (n+1) x K");
  }
  for (int i = 1; i < nodes; ++i) {
    double spent = 0.0;
    for (int k = 0; k < universe.asset_count; ++k) {
      const double w = q(i, k);
      if (w < -tol) {
        throw Error(ErrorCode::kInfeasiblePortfolio,
                    "negative holding for bank " + std::to_string(i));
      }
      if (w > tol && std::find(universe.available[i].begin(),
                               universe.available[i].end(),
                               k) == universe.available[i].end()) {
        throw Error(ErrorCode::kInfeasiblePortfolio,
                    "bank " + std::to_string(i) + " holds unavailable asset " +
                        std::to_string(k));
      }
      spent += w;
    }
    if (std::abs(spent - universe.capital[i]) > tol) {
      throw Error(ErrorCode::kInfeasiblePortfolio,
                  "bank " + std::to_string(i) + " does not spend its capital");
    }
  }
}

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidSpec, std::string(what) + " must be > 0");
  }
}

// Appends per-core peripheral banks after the first core_count banks.
Matrix with_periphery(Matrix core_block, int core_count, int per_core,
                      double D0) {
  const int nodes = 1 + core_count + core_count * per_core;
  Matrix debt = Matrix::Zero(nodes, nodes);
  debt.topLeftCorner(core_count + 1, core_count + 1) = core_block;
  const double share = D0 / per_core;
  for (int c = 1; c <= core_count; ++c) {
    for (int t = 0; t < per_core; ++t) {
      const int p = core_count + (c - 1) * per_core + t + 1;
      debt(p, c) = share;
      debt(0, p) = share;
    }
  }
  return debt;
}

}  // namespace

int periphery_per_core(const CorePeripherySpec& spec) {
  return spec.n_p / spec.n_c;
}

std::vector<int> peripheral_banks_of(const CorePeripherySpec& spec, int core) {
  const int per = periphery_per_core(spec);
  std::vector<int> banks;
  for (int t = 0; t < per; ++t) {
    banks.push_back(spec.n_c + (core - 1) * per + t + 1);
  }
  return banks;
}

Network build_core_periphery(const CorePeripherySpec& spec) {
  if (spec.n_c < 1 || spec.n_p < 1 || spec.n_p % spec.n_c != 0) {
    throw Error(ErrorCode::kInvalidSpec,
                "need n_c >= 1 and n_p a positive multiple of n_c");
  }
  require_positive(spec.D, "D");
  require_positive(spec.D0, "D0");
  Matrix core = Matrix::Zero(spec.n_c + 1, spec.n_c + 1);
  for (int i = 1; i <= spec.n_c; ++i) {
    for (int j = 1; j <= spec.n_c; ++j) {
      if (i != j) core(i, j) = spec.D;
    }
  }
  return Network::from_debt(with_periphery(std::move(core), spec.n_c,
                                           periphery_per_core(spec), spec.D0));
}

NestedSplitNetwork build_nested_split(const NestedSplitSpec& spec) {
  const int tiers = static_cast<int>(spec.tiers.size());
  if (tiers == 0) throw Error(ErrorCode::kInvalidSpec, "no tiers");
  if (spec.periphery_per_core < 1) {
    throw Error(ErrorCode::kInvalidSpec, "periphery_per_core must be >= 1");
  }
  require_positive(spec.D, "D");
  require_positive(spec.D0, "D0");

  std::vector<std::set<int>> links(tiers);
  for (int t = 0; t < tiers; ++t) {
    if (spec.tiers[t].size < 1) {
      throw Error(ErrorCode::kInvalidSpec, "tier sizes must be >= 1");
    }
    for (int u : spec.tiers[t].counterparty_tiers) {
      if (u < 0 || u >= tiers) {
        throw Error(ErrorCode::kInvalidSpec, "counterparty tier out of range");
      }
      links[t].insert(u);
    }
  }
  for (int t = 0; t < tiers; ++t) {
    for (int u : links[t]) {
      if (!links[u].count(t)) {
        throw Error(ErrorCode::kInvalidSpec,
                    "tier links must be mutual: " + std::to_string(t) +
                        " lists " + std::to_string(u));
      }
    }
  }
  for (int t = 0; t + 1 < tiers; ++t) {
    const bool subset = std::includes(links[t + 1].begin(), links[t + 1].end(),
                                      links[t].begin(), links[t].end());
    if (!subset || links[t] == links[t + 1]) {
      throw Error(ErrorCode::kNotNested,
                  "counterparty tiers of tier " + std::to_string(t) +
                      " are not a strict subset of those of tier " +
                      std::to_string(t + 1));
    }
  }

  // Independent tiers: a prefix with no links among themselves. The rest must
  // be fully linked, including to themselves.
  int cut = 0;
  while (cut < tiers) {
    bool linked_below = false;
    for (int u : links[cut]) linked_below |= (u <= cut);
    if (linked_below) break;
    ++cut;
  }
  for (int t = cut; t < tiers; ++t) {
    for (int u = cut; u < tiers; ++u) {
      if (!links[t].count(u)) {
        throw Error(ErrorCode::kNotNested,
                    "tiers above the cut do not form a clique");
      }
    }
  }

  NestedSplitNetwork out;
  std::vector<int> first(tiers + 1, 1);
  for (int t = 0; t < tiers; ++t) first[t + 1] = first[t] + spec.tiers[t].size;
  const int core_count = first[tiers] - 1;
  out.core_count = core_count;
  out.clique_cut = cut;
  out.tier_of.assign(1 + core_count * (1 + spec.periphery_per_core), -1);

  Matrix core = Matrix::Zero(core_count + 1, core_count + 1);
  for (int t = 0; t < tiers; ++t) {
    for (int i = first[t]; i < first[t + 1]; ++i) {
      out.tier_of[i] = t;
      (t < cut ? out.independent : out.clique).push_back(i);
      for (int u : links[t]) {
        for (int j = first[u]; j < first[u + 1]; ++j) {
          if (i != j) core(i, j) = spec.D;
        }
      }
    }
  }

  // Degrees must strictly increase with the tier.
  for (int t = 0; t + 1 < tiers; ++t) {
    const int lo = static_cast<int>((core.row(first[t]).array() > 0).count());
    const int hi =
        static_cast<int>((core.row(first[t + 1]).array() > 0).count());
    if (hi <= lo) {
      throw Error(ErrorCode::kNotNested,
                  "core degree does not increase from tier " +
                      std::to_string(t));
    }
  }

  out.network = Network::from_debt(
      with_periphery(std::move(core), core_count, spec.periphery_per_core,
                     spec.D0));
  return out;
}

Network build_star(int n, double D, double outside_debt) {
  if (n < 2) throw Error(ErrorCode::kTooSmall, "star needs n >= 2");
  Matrix debt = Matrix::Zero(n + 1, n + 1);
  for (int i = 2; i <= n; ++i) {
    debt(i, 1) = D;
    debt(1, i) = D;
  }
  for (int i = 1; i <= n; ++i) debt(0, i) = outside_debt;
  return Network::from_debt(std::move(debt));
}

Network build_directed_wheel(int n, double D, double outside_debt) {
  if (n < 4) throw Error(ErrorCode::kTooSmall, "directed wheel needs n >= 4");
  Matrix debt = Matrix::Zero(n + 1, n + 1);
  for (int j = 2; j <= n; ++j) {
    debt(j, 1) = D;
    const int next = (j == n) ? 2 : j + 1;
    debt(next, j) = 2.0 * D;
  }
  for (int i = 1; i <= n; ++i) debt(0, i) = outside_debt;
  return Network::from_debt(std::move(debt));
}

}  // namespace netclear
