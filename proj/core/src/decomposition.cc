// Copyright 2026 The Chaoscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chaoscope/decomposition.h"

#include <cmath>
#include <vector>

#include "chaoscope/errors.h"
#include "chaoscope/linear_program.h"

namespace chaoscope {

Decomposition Decompose(const BimatrixGame& game) {
  return {(game.A() - game.B()) / 2.0, (game.A() + game.B()) / 2.0};
}

double QuadrupleCombination(const Matrix& k, int j, int j2, int c, int c2) {
  return k(j, c) + k(j2, c2) - k(j, c2) - k(j2, c);
}

bool IsTrivial(const Matrix& k, double tol) {
  for (Eigen::Index j = 1; j < k.rows(); ++j) {
    for (Eigen::Index c = 1; c < k.cols(); ++c) {
      if (std::abs(k(j, c) - k(j, 0) - k(0, c) + k(0, 0)) > tol) return false;
    }
  }
  return true;
}

Matrix TrivialMatrix::Materialize() const {
  return u.replicate(1, v.size()) + v.transpose().replicate(u.size(), 1);
}

ChebyshevFit ChebyshevTrivialFit(const Matrix& k) {
  const int n = static_cast<int>(k.rows());
  const int m = static_cast<int>(k.cols());
  ChebyshevFit fit;
  fit.g = Vector::Zero(n);
  fit.h = Vector::Zero(m);
  fit.dual_weights = Matrix::Zero(n, m);
  const double scale = k.cwiseAbs().maxCoeff();
  if (n == 0 || m == 0 || scale == 0.0) return fit;
  const Matrix ks = k / scale;

  // Columns: r | g_1+ .. g_{n-1}+ | g_1- .. | h_0+ .. h_{m-1}+ | h_0- ..
  const int ng = n - 1;
  const int vars = 1 + 2 * ng + 2 * m;
  auto g_plus = [&](int j) { return 1 + (j - 1); };
  auto g_minus = [&](int j) { return 1 + ng + (j - 1); };
  auto h_plus = [&](int c) { return 1 + 2 * ng + c; };
  auto h_minus = [&](int c) { return 1 + 2 * ng + m + c; };

  LinearProgram lp;
  lp.c = Vector::Zero(vars);
  lp.c[0] = 1.0;
  lp.a_ub = Matrix::Zero(2 * n * m, vars);
  lp.b_ub = Vector::Zero(2 * n * m);
  lp.a_eq = Matrix::Zero(0, vars);
  lp.b_eq = Vector::Zero(0);
  // Row 2e:   g_j + h_k - r <= K_jk   (residual >= -r)
  // Row 2e+1: -g_j - h_k - r <= -K_jk (residual <= r)
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < m; ++c) {
      const int e = j * m + c;
      for (int side = 0; side < 2; ++side) {
        const int row = 2 * e + side;
        const double s = side == 0 ? 1.0 : -1.0;
        lp.a_ub(row, 0) = -1.0;
        if (j > 0) {
          lp.a_ub(row, g_plus(j)) = s;
          lp.a_ub(row, g_minus(j)) = -s;
        }
        lp.a_ub(row, h_plus(c)) = s;
        lp.a_ub(row, h_minus(c)) = -s;
        lp.b_ub[row] = s * ks(j, c);
      }
    }
  }
  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error("chebyshev fit: linear program did not reach an optimum");
  }

  for (int j = 1; j < n; ++j) {
    fit.g[j] = scale * (sol.x[g_plus(j)] - sol.x[g_minus(j)]);
  }
  for (int c = 0; c < m; ++c) {
    fit.h[c] = scale * (sol.x[h_plus(c)] - sol.x[h_minus(c)]);
  }
  // Report the attained residual rather than the LP variable so the witness
  // and the radius agree exactly.
  const Matrix residual = k - fit.g.replicate(1, m) -
                          fit.h.transpose().replicate(n, 1);
  fit.r = residual.cwiseAbs().maxCoeff();
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < m; ++c) {
      const int e = j * m + c;
      // Multipliers are <= 0 for a minimization; W = lambda_upper - lambda_lower.
      fit.dual_weights(j, c) = sol.dual_ub[2 * e] - sol.dual_ub[2 * e + 1];
    }
  }
  return fit;
}

L2Projection L2TrivialProjection(const Matrix& k) {
  L2Projection out;
  const double grand = k.mean();
  out.trivial.u = k.rowwise().mean().array() - grand;
  out.trivial.v = k.colwise().mean().transpose();
  out.residual = k - out.trivial.Materialize();
  out.distance = out.residual.norm();
  return out;
}

std::optional<Matrix> ExtractBimatrixPotential(const BimatrixGame& game,
                                               double tol) {
  const Matrix& a = game.A();
  const Matrix& b = game.B();
  if (!IsTrivial(a - b, tol)) return std::nullopt;
  // P_jk = A_jk - A_0k + B_0k: A - P depends on k only by construction, and
  // B - P depends on j only because A - B is trivial.
  Matrix p = a;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    p.col(c).array() += b(0, c) - a(0, c);
  }
  const Matrix a_rest = a - p;
  const Matrix b_rest = b - p;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (std::abs(a_rest(j, c) - a_rest(0, c)) > tol ||
          std::abs(b_rest(j, c) - b_rest(j, 0)) > tol) {
        return std::nullopt;
      }
    }
  }
  return p;
}

NormalFormGame PotentialCoordinationLift(const NormalFormGame& game,
                                         const Tensor& potential) {
  if (potential.shape() != game.strategy_counts()) {
    throw InvalidArgument("potential: shape does not match strategy_counts");
  }
  return NormalFormGame(
      game.strategy_counts(),
      std::vector<Tensor>(game.num_players(), potential));
}

bool IsPotentialGame(const NormalFormGame& game, const Tensor& potential,
                     double tol) {
  const auto& counts = game.strategy_counts();
  if (potential.shape() != counts) {
    throw InvalidArgument("potential: shape does not match strategy_counts");
  }
  std::vector<int> s(counts.size(), 0);
  const auto& pv = potential.values();
  do {
    const std::int64_t flat = potential.FlatIndex(s);
    for (int i = 0; i < game.num_players(); ++i) {
      if (s[i] == 0) continue;
      const std::int64_t base = flat - s[i] * potential.stride(i);
      const auto& ui = game.payoffs(i).values();
      const double diff = (ui[flat] - pv[flat]) - (ui[base] - pv[base]);
      if (std::abs(diff) > tol) return false;
    }
  } while (NextProfile(counts, s));
  return true;
}

std::optional<Tensor> ExtractPotential(const NormalFormGame& game,
                                       double tol) {
  const auto& counts = game.strategy_counts();
  Tensor potential(counts);
  auto& pv = potential.mutable_values();
  std::vector<int> s(counts.size(), 0);
  do {
    // Walk 0..0 -> (s_0,0..0) -> (s_0,s_1,0..) -> s, summing each mover's
    // payoff change.
    const std::int64_t flat = potential.FlatIndex(s);
    std::int64_t prefix = 0;
    double value = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
      const std::int64_t next = prefix + s[i] * potential.stride(i);
      const auto& ui = game.payoffs(i).values();
      value += ui[next] - ui[prefix];
      prefix = next;
    }
    pv[flat] = value;
  } while (NextProfile(counts, s));
  if (!IsPotentialGame(game, potential, tol)) return std::nullopt;
  return potential;
}

}  // namespace chaoscope
