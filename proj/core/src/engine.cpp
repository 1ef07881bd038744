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

// Two-level fictitious-default iteration.
//
// The unknown vector x holds, per bank, its value V_i while the bank is
// treated as solvent and its total payment P_i while it is treated as
// defaulting. For a fixed default set the map x -> Phi(x) is monotone, so
// Gauss-Seidel sweeps started above (below) the greatest (least) fixed point
// descend (ascend) to it. Each inner solve ends with an exact linear solve
// in the identified regime. The outer loop then moves banks into (greatest)
// or out of (least) the default set; monotonicity makes every such move
// final, so at most n outer rounds run.

#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "netclear/errors.hpp"

namespace netclear::detail {

namespace {

constexpr int kMaxSweeps = 200000;
constexpr int kPolishEvery = 16;
constexpr double kStepTol = 4.0 * std::numeric_limits<double>::epsilon();

struct Claim {
  int debtor;
  double face;
  double share;  // face / D^L_debtor
};

struct Holding {
  int issuer;
  double fraction;
};

enum class Regime { kValue, kZero, kCapped, kInterior };

class Solver {
 public:
  explicit Solver(const EngineInput& in);
  ClearingSolution run();

 private:
  double assets_of(int i, const std::vector<double>& x) const;
  double raw_payment(int i, double assets) const {
    return (1.0 - a_[i]) * assets - chi_[i];
  }
  double update(int i, double assets) const;
  void inner(bool descending);
  bool polish(bool descending);
  void init_greatest();
  void init_least();
  ClearingSolution assemble() const;

  const EngineInput& in_;
  int n_ = 0;
  std::vector<std::vector<Claim>> claims_;
  std::vector<std::vector<Holding>> holdings_;
  std::vector<double> base_;  // q_i p + D_i0
  std::vector<double> L_, a_, chi_, tol_;
  std::vector<char> def_, forced_;
  std::vector<double> x_;
  int rounds_ = 0;
};

Solver::Solver(const EngineInput& in) : in_(in) {
  const Network& net = *in.network;
  n_ = net.bank_count();
  const int N = n_ + 1;
  const Matrix& D = net.debt();
  claims_.resize(N);
  holdings_.resize(N);
  base_.assign(N, 0.0);
  L_.assign(N, 0.0);
  a_.assign(N, 0.0);
  chi_.assign(N, 0.0);
  tol_.assign(N, 0.0);
  def_.assign(N, 0);
  forced_.assign(N, 0);
  x_.assign(N, 0.0);
  if (in.external->size() != N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "external asset vector must have n+1 entries");
  }
  for (int i = 1; i < N; ++i) {
    L_[i] = net.nominal_liabilities(i);
    tol_[i] = kSolvencyTol * std::max(1.0, L_[i]);
    const BankruptcyCostSpec& c = in.costs->at(i);
    a_[i] = c.a;
    chi_[i] = c.chi;
    base_[i] = (*in.external)[i] + D(i, 0);
    for (int j = 1; j < N; ++j) {
      if (D(i, j) > 0.0) {
        claims_[i].push_back({j, D(i, j), 0.0});
      }
    }
    if (in.equity != nullptr) {
      for (int h = 1; h < N; ++h) {
        const double s = (*in.equity)(i, h);
        if (s > 0.0) holdings_[i].push_back({h, s});
      }
    }
  }
  for (int i = 1; i < N; ++i) {
    for (Claim& c : claims_[i]) c.share = c.face / L_[c.debtor];
  }
  if (in.forced != nullptr) {
    for (int i : *in.forced) {
      if (i < 1 || i > n_) {
        throw Error(ErrorCode::kInvalidSpec,
                    "forced-solvent bank out of range: " + std::to_string(i));
      }
      forced_[i] = 1;
    }
  }
}

double Solver::assets_of(int i, const std::vector<double>& x) const {
  double total = base_[i];
  for (const Claim& c : claims_[i]) {
    total += def_[c.debtor] ? c.share * x[c.debtor] : c.face;
  }
  for (const Holding& h : holdings_[i]) {
    if (!def_[h.issuer]) total += h.fraction * std::max(x[h.issuer], 0.0);
  }
  return total;
}

double Solver::update(int i, double assets) const {
  if (!def_[i]) return assets - L_[i];
  return std::clamp(raw_payment(i, assets), 0.0, L_[i]);
}

void Solver::inner(bool descending) {
  double delta = 0.0;
  double scale = 1.0;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    delta = 0.0;
    scale = 1.0;
    for (int i = 1; i <= n_; ++i) {
      const double next = update(i, assets_of(i, x_));
      delta = std::max(delta, std::abs(next - x_[i]));
      scale = std::max(scale, std::abs(next));
      x_[i] = next;
    }
    if (delta <= kStepTol * scale) return;
    if (sweep % kPolishEvery == 0 && polish(descending)) return;
  }
  if (delta <= kPaymentTol * scale) return;
  throw Error(ErrorCode::kNoConvergence,
              "payment iteration did not converge (last step " +
                  std::to_string(delta) + ")");
}

// Solves the linear system of the regime the iterate sits in and accepts the
// result when it is a fixed point on the correct side of the iterate.
bool Solver::polish(bool descending) {
  const int N = n_ + 1;
  std::vector<Regime> regime(N, Regime::kValue);
  std::vector<int> index(N, -1);
  std::vector<int> unknowns;
  for (int i = 1; i <= n_; ++i) {
    if (def_[i]) {
      const double raw = raw_payment(i, assets_of(i, x_));
      regime[i] = raw <= 0.0       ? Regime::kZero
                  : raw >= L_[i]   ? Regime::kCapped
                                   : Regime::kInterior;
    }
    if (regime[i] == Regime::kValue || regime[i] == Regime::kInterior) {
      index[i] = static_cast<int>(unknowns.size());
      unknowns.push_back(i);
    }
  }
  const int m = static_cast<int>(unknowns.size());
  std::vector<double> z = x_;
  if (m > 0) {
    Matrix A = Matrix::Zero(m, m);
    Vector c = Vector::Zero(m);
    for (int u = 0; u < m; ++u) {
      const int i = unknowns[u];
      double constant = base_[i];
      for (const Claim& cl : claims_[i]) {
        const int j = cl.debtor;
        if (!def_[j]) {
          constant += cl.face;
        } else if (regime[j] == Regime::kCapped) {
          constant += cl.share * L_[j];
        } else if (regime[j] == Regime::kInterior) {
          A(u, index[j]) += cl.share;
        }
      }
      for (const Holding& h : holdings_[i]) {
        if (!def_[h.issuer] && x_[h.issuer] > 0.0) {
          A(u, index[h.issuer]) += h.fraction;
        }
      }
      const double factor = def_[i] ? 1.0 - a_[i] : 1.0;
      A.row(u) *= factor;
      c[u] = factor * constant - (def_[i] ? chi_[i] : L_[i]);
    }
    Eigen::FullPivLU<Matrix> lu(Matrix::Identity(m, m) - A);
    if (!lu.isInvertible()) return false;
    const Vector y = lu.solve(c);
    for (int u = 0; u < m; ++u) {
      if (!std::isfinite(y[u])) return false;
      z[unknowns[u]] = y[u];
    }
  }
  double scale = 1.0;
  for (int i = 1; i <= n_; ++i) {
    if (regime[i] == Regime::kZero) z[i] = 0.0;
    if (regime[i] == Regime::kCapped) z[i] = L_[i];
    scale = std::max(scale, std::abs(z[i]));
  }
  const double slack = 1e-11 * scale;
  for (int i = 1; i <= n_; ++i) {
    if (regime[i] == Regime::kInterior) {
      if (z[i] < -slack || z[i] > L_[i] + slack) return false;
      z[i] = std::clamp(z[i], 0.0, L_[i]);
    } else if (regime[i] == Regime::kValue) {
      const bool was_positive = x_[i] > 0.0;
      if (was_positive && z[i] < -slack) return false;
      if (!was_positive && z[i] > slack) return false;
    }
    if (descending && z[i] > x_[i] + slack) return false;
    if (!descending && z[i] < x_[i] - slack) return false;
  }
  for (int i = 1; i <= n_; ++i) {
    if (std::abs(update(i, assets_of(i, z)) - z[i]) > slack) return false;
  }
  x_ = std::move(z);
  return true;
}

void Solver::init_greatest() {
  Vector w = Vector::Zero(n_);
  for (int i = 1; i <= n_; ++i) {
    double full = base_[i];
    for (const Claim& c : claims_[i]) full += c.face;
    w[i - 1] = full - L_[i];
  }
  if (in_.equity == nullptr) {
    for (int i = 1; i <= n_; ++i) x_[i] = w[i - 1];
    return;
  }
  // Upper bound U = (I - S)^{-1} max(w, 0) satisfies Phi(U) <= U.
  const Matrix S = in_.equity->block(1, 1, n_, n_);
  const Vector U = (Matrix::Identity(n_, n_) - S).partialPivLu().solve(
      w.cwiseMax(0.0));
  for (int i = 1; i <= n_; ++i) {
    if (!std::isfinite(U[i - 1]) || U[i - 1] < -1e-9) {
      throw Error(ErrorCode::kSingularOwnership,
                  "cross-holdings admit no finite equity values");
    }
    x_[i] = std::max(U[i - 1], w[i - 1]);
  }
}

void Solver::init_least() {
  for (int i = 1; i <= n_; ++i) {
    def_[i] = (L_[i] > 0.0 && !forced_[i]) ? 1 : 0;
    x_[i] = def_[i] ? 0.0 : base_[i] - L_[i];
  }
}

ClearingSolution Solver::run() {
  if (in_.selection == Selection::kGreatest) {
    init_greatest();
    for (rounds_ = 1; rounds_ <= n_ + 1; ++rounds_) {
      inner(/*descending=*/true);
      bool grew = false;
      for (int i = 1; i <= n_; ++i) {
        if (!def_[i] && !forced_[i] && L_[i] > 0.0 && x_[i] < -tol_[i]) {
          def_[i] = 1;
          x_[i] = L_[i];
          grew = true;
        }
      }
      if (!grew) break;
    }
  } else {
    init_least();
    for (rounds_ = 1; rounds_ <= n_ + 1; ++rounds_) {
      inner(/*descending=*/false);
      std::vector<int> solvent;
      for (int i = 1; i <= n_; ++i) {
        if (def_[i] && assets_of(i, x_) >= L_[i] - tol_[i]) solvent.push_back(i);
      }
      if (solvent.empty()) break;
      for (int i : solvent) {
        const double assets = assets_of(i, x_);
        def_[i] = 0;
        x_[i] = assets - L_[i];
      }
    }
  }
  return assemble();
}

ClearingSolution Solver::assemble() const {
  const int N = n_ + 1;
  const Matrix& D = in_.network->debt();
  ClearingSolution sol;
  sol.values = Vector::Zero(N);
  sol.payments = Matrix::Zero(N, N);
  sol.defaulted.assign(N, 0);
  sol.costs = Vector::Zero(N);
  sol.assets = Vector::Zero(N);
  sol.external = *in_.external;
  sol.external[0] = 0.0;
  sol.outer_rounds = std::min(rounds_, n_);
  for (int j = 1; j < N; ++j) sol.payments(j, 0) = D(j, 0);
  double outside = 0.0;
  for (int i = 1; i < N; ++i) {
    const double assets = assets_of(i, x_);
    sol.assets[i] = assets;
    if (def_[i]) {
      const double beta = chi_[i] + a_[i] * assets;
      sol.defaulted[i] = 1;
      sol.costs[i] = beta;
      sol.values[i] = assets - L_[i] - beta;
      for (int k = 0; k < N; ++k) {
        if (D(k, i) > 0.0) sol.payments(k, i) = D(k, i) / L_[i] * x_[i];
      }
    } else {
      double v = assets - L_[i];
      if (forced_[i] && v < -tol_[i]) sol.assisted.push_back(i);
      if (v < 0.0) v = 0.0;
      sol.values[i] = v;
      for (int k = 0; k < N; ++k) sol.payments(k, i) = D(k, i);
    }
  }
  // Outside accrual: receipts minus what it owes, its equity in solvent banks
  // and the losses of defaults deep enough to exceed all liabilities.
  for (int j = 1; j < N; ++j) {
    outside += sol.payments(0, j) - D(j, 0);
    if (!def_[j]) {
      double outside_share = 1.0;
      if (in_.equity != nullptr) {
        for (int i = 1; i < N; ++i) outside_share -= (*in_.equity)(i, j);
      }
      outside += outside_share * sol.values[j];
    } else if (sol.values[j] + L_[j] < 0.0) {
      outside += sol.values[j] + L_[j];
    }
  }
  sol.outside_value = outside;
  return sol;
}

}  // namespace

ClearingSolution solve(const EngineInput& input) {
  Solver solver(input);
  return solver.run();
}

}  // namespace netclear::detail
