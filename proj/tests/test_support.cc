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

#include "test_support.h"

namespace chaoscope::testing {

Matrix RandomMatrix(Rng& rng, int rows, int cols, double scale) {
  std::uniform_real_distribution<double> unif(-scale, scale);
  Matrix m(rows, cols);
  for (int j = 0; j < rows; ++j) {
    for (int k = 0; k < cols; ++k) m(j, k) = unif(rng);
  }
  return m;
}

Matrix RandomTrivial(Rng& rng, int rows, int cols, double scale) {
  const Matrix u = RandomMatrix(rng, rows, 1, scale);
  const Matrix v = RandomMatrix(rng, 1, cols, scale);
  return u.replicate(1, cols) + v.replicate(rows, 1);
}

BimatrixGame RandomBimatrix(Rng& rng, int rows, int cols) {
  Matrix a = RandomMatrix(rng, rows, cols);
  Matrix b = RandomMatrix(rng, rows, cols);
  return BimatrixGame(std::move(a), std::move(b));
}

Tensor RandomTensor(Rng& rng, const std::vector<int>& shape) {
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  Tensor t(shape);
  for (double& v : t.mutable_values()) v = unif(rng);
  return t;
}

NormalFormGame RandomNormalForm(Rng& rng, const std::vector<int>& counts) {
  std::vector<Tensor> payoffs;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    payoffs.push_back(RandomTensor(rng, counts));
  }
  return NormalFormGame(counts, std::move(payoffs));
}

GraphicalGame RandomGraphical(Rng& rng, const std::vector<int>& counts) {
  GraphicalGame g(counts);
  const int n = static_cast<int>(counts.size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i != k) g.SetEdge(i, k, RandomMatrix(rng, counts[i], counts[k]));
    }
  }
  return g;
}

NormalFormGame RandomPotentialGame(Rng& rng, const std::vector<int>& counts,
                                   Tensor* potential) {
  *potential = RandomTensor(rng, counts);
  const int n = static_cast<int>(counts.size());
  std::vector<Tensor> payoffs;
  for (int i = 0; i < n; ++i) {
    // h_i ignores player i's own strategy.
    std::vector<int> others = counts;
    others[i] = 1;
    const Tensor h = RandomTensor(rng, others);
    Tensor u(counts);
    std::vector<int> s(n, 0);
    do {
      std::vector<int> si = s;
      si[i] = 0;
      u.at(s) = potential->at(s) + h.at(si);
    } while (NextProfile(counts, s));
    payoffs.push_back(std::move(u));
  }
  return NormalFormGame(counts, std::move(payoffs));
}

DualPoint RandomDualPoint(Rng& rng, const std::vector<int>& counts,
                          double spread) {
  std::normal_distribution<double> normal(0.0, spread);
  DualPoint p;
  for (int n : counts) {
    Vector b(n);
    for (int j = 0; j < n; ++j) b[j] = normal(rng);
    p.blocks.push_back(b);
  }
  return p;
}

DualPoint RandomRegionPoint(Rng& rng, const std::vector<int>& counts,
                            double delta) {
  std::exponential_distribution<double> expo(1.0);
  DualPoint p;
  for (int n : counts) {
    Vector e(n);
    for (int j = 0; j < n; ++j) e[j] = expo(rng);
    const Vector x = (delta + (1.0 - n * delta) * (e / e.sum()).array());
    p.blocks.push_back(x.array().log().matrix());
  }
  return p;
}

Matrix OraclePairPayoffs(const NormalFormGame& game, const MixedProfile& x,
                         int i, int k) {
  const auto& counts = game.strategy_counts();
  const int n = game.num_players();
  Matrix out = Matrix::Zero(counts[i], counts[k]);
  std::vector<int> s(n, 0);
  do {
    double w = 1.0;
    for (int r = 0; r < n; ++r) {
      if (r != i && r != k) w *= x.blocks[r][s[r]];
    }
    out(s[i], s[k]) += w * game.Payoff(i, s);
  } while (NextProfile(counts, s));
  return out;
}

Matrix OracleMwuJacobian(const NormalFormGame& game, const DualPoint& p) {
  const auto& counts = game.strategy_counts();
  const int n = game.num_players();
  MixedProfile x;
  for (const Vector& b : p.blocks) {
    const Vector e = (b.array() - b.maxCoeff()).exp();
    x.blocks.push_back(e / e.sum());
  }
  int d = 0;
  std::vector<int> offset;
  for (int c : counts) {
    offset.push_back(d);
    d += c;
  }
  Matrix jac = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const Matrix u = OraclePairPayoffs(game, x, i, k);
      for (int j = 0; j < counts[i]; ++j) {
        double ui = 0.0;
        for (int l = 0; l < counts[k]; ++l) ui += u(j, l) * x.blocks[k][l];
        for (int l = 0; l < counts[k]; ++l) {
          jac(offset[i] + j, offset[k] + l) = x.blocks[k][l] * (u(j, l) - ui);
        }
      }
    }
  }
  return jac;
}

double OracleCFromJacobian(const Matrix& jacobian) {
  const double tr = jacobian.trace();
  return 0.5 * (tr * tr - (jacobian * jacobian).trace());
}

double OracleCDoubleCentered(const Matrix& a, const Matrix& b,
                             const DualPoint& p) {
  auto soft = [](const Vector& v) {
    const Vector e = (v.array() - v.maxCoeff()).exp();
    return Vector(e / e.sum());
  };
  const Vector x = soft(p.blocks[0]);
  const Vector y = soft(p.blocks[1]);
  auto center = [&](const Matrix& m) {
    const Vector row = m * y;
    const Vector col = m.transpose() * x;
    const double mid = x.dot(m * y);
    Matrix c = m;
    for (int j = 0; j < m.rows(); ++j) {
      for (int k = 0; k < m.cols(); ++k) {
        c(j, k) = m(j, k) - row[j] - col[k] + mid;
      }
    }
    return c;
  };
  const Matrix at = center(a);
  const Matrix bt = center(b);
  double s = 0.0;
  for (int j = 0; j < a.rows(); ++j) {
    for (int k = 0; k < a.cols(); ++k) s += x[j] * y[k] * at(j, k) * bt(j, k);
  }
  return -s;
}

}  // namespace chaoscope::testing
