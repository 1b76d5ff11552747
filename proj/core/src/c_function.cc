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

#include "chaoscope/c_function.h"

#include <string>

#include "chaoscope/errors.h"

namespace chaoscope {
namespace {

// One pair's contribution, with u_ik of shape n_i x n_k and u_ki of shape
// n_k x n_i.
double PairTerm(const Matrix& u_ik, const Matrix& u_ki, const Vector& xi,
                const Vector& xk) {
  const Vector ui = u_ik * xk;
  const Vector uk = u_ki * xi;
  double total = 0.0;
  for (Eigen::Index j = 0; j < u_ik.rows(); ++j) {
    for (Eigen::Index l = 0; l < u_ik.cols(); ++l) {
      total += xi[j] * xk[l] * (u_ki(l, j) - uk[l]) * (u_ik(j, l) - ui[j]);
    }
  }
  return 0.0 - total;  // +0 rather than -0 for null games
}

void CheckBimatrixPoint(const Matrix& a, const DualPoint& p) {
  const int counts[2] = {static_cast<int>(a.rows()), static_cast<int>(a.cols())};
  CheckShape(counts, p);
}

void CheckBudget(const NormalFormGame& game, std::int64_t budget) {
  const std::int64_t profiles = ProfileCount(game.strategy_counts());
  if (profiles > budget) {
    throw BudgetExceeded("normal-form game: profile space of " +
                         std::to_string(profiles) + " exceeds budget " +
                         std::to_string(budget));
  }
}

}  // namespace

double CBimatrix(const BimatrixGame& game, const DualPoint& p) {
  CheckBimatrixPoint(game.A(), p);
  const Vector x = Softmax(p.blocks[0]);
  const Vector y = Softmax(p.blocks[1]);
  return PairTerm(game.A(), game.B().transpose(), x, y);
}

double CBimatrixExpectationForm(const BimatrixGame& game, const DualPoint& p) {
  CheckBimatrixPoint(game.A(), p);
  const Vector x = Softmax(p.blocks[0]);
  const Vector y = Softmax(p.blocks[1]);
  const Matrix& a = game.A();
  const Matrix& b = game.B();
  const Vector a_row = a * y;
  const Vector a_col = a.transpose() * x;
  const Vector b_row = b * y;
  const Vector b_col = b.transpose() * x;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      cross += x[j] * y[k] * (a(j, k) - a_row[j] - a_col[k]) *
               (b(j, k) - b_row[j] - b_col[k]);
    }
  }
  return -cross + x.dot(a_row) * x.dot(b_row);
}

double CZeroSumQuadruple(const Matrix& z, const DualPoint& p) {
  CheckBimatrixPoint(z, p);
  const Vector x = Softmax(p.blocks[0]);
  const Vector y = Softmax(p.blocks[1]);
  const Eigen::Index n = z.rows();
  const Eigen::Index m = z.cols();
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index j2 = 0; j2 < n; ++j2) {
      for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index k2 = 0; k2 < m; ++k2) {
          const double d = z(j, k) + z(j2, k2) - z(j, k2) - z(j2, k);
          total += x[j] * y[k] * x[j2] * y[k2] * d * d;
        }
      }
    }
  }
  return total / 4.0;
}

double CMulti(const NormalFormGame& game, const DualPoint& p,
              std::int64_t budget) {
  CheckShape(game.strategy_counts(), p);
  CheckBudget(game, budget);
  const MixedProfile x = DualToPrimal(p);
  const int n = game.num_players();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      total += PairTerm(PairPayoffs(game, x, i, k), PairPayoffs(game, x, k, i),
                        x.blocks[i], x.blocks[k]);
    }
  }
  return total;
}

GraphicalGame InducedGraphicalGame(const NormalFormGame& game,
                                   const DualPoint& p, std::int64_t budget) {
  CheckShape(game.strategy_counts(), p);
  CheckBudget(game, budget);
  const MixedProfile x = DualToPrimal(p);
  GraphicalGame h(game.strategy_counts());
  for (int i = 0; i < game.num_players(); ++i) {
    for (int k = 0; k < game.num_players(); ++k) {
      if (i != k) h.SetEdge(i, k, PairPayoffs(game, x, i, k));
    }
  }
  return h;
}

double CGraphical(const GraphicalGame& game, const DualPoint& p) {
  CheckShape(game.strategy_counts(), p);
  const int n = game.num_players();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const Matrix& h_ik = game.Edge(i, k);
      const Matrix& h_ki = game.Edge(k, i);
      if (h_ik.isZero(0.0) && h_ki.isZero(0.0)) continue;
      total += PairTerm(h_ik, h_ki, Softmax(p.blocks[i]),
                        Softmax(p.blocks[k]));
    }
  }
  return total;
}

double CValue(const Game& game, const DualPoint& p, std::int64_t budget) {
  if (const auto* g = std::get_if<BimatrixGame>(&game)) return CBimatrix(*g, p);
  if (const auto* g = std::get_if<GraphicalGame>(&game)) {
    return CGraphical(*g, p);
  }
  return CMulti(std::get<NormalFormGame>(game), p, budget);
}

}  // namespace chaoscope
