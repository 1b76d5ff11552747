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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "chaoscope/decomposition.h"
#include "test_support.h"

namespace chaoscope {
namespace {

BimatrixGame WorkedExample() {
  Matrix a(3, 3);
  a << 4, 12, -6, -8, 0, 12, 14, -8, 4;
  Matrix b(3, 3);
  b << 4, -4, 10, 8, 0, -4, -2, 8, 4;
  return BimatrixGame(a, b);
}

// r(K) through the dual: the extreme points of {W : zero margins,
// sum |W| <= 1} are alternating cycles with weights 1 / (2L). Enumerates all
// of them.
double CycleOracle(const Matrix& k) {
  const int n = static_cast<int>(k.rows());
  const int m = static_cast<int>(k.cols());
  double best = 0.0;
  for (int len = 2; len <= std::min(n, m); ++len) {
    std::vector<int> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<int> cols(m);
    std::iota(cols.begin(), cols.end(), 0);
    // All ordered selections of len rows and len columns.
    std::vector<int> rsel(len);
    std::vector<int> csel(len);
    std::function<void(int)> pick_cols;
    std::function<void(int)> pick_rows = [&](int depth) {
      if (depth == len) {
        pick_cols(0);
        return;
      }
      for (int r = 0; r < n; ++r) {
        if (std::find(rsel.begin(), rsel.begin() + depth, r) !=
            rsel.begin() + depth) {
          continue;
        }
        rsel[depth] = r;
        pick_rows(depth + 1);
      }
    };
    pick_cols = [&](int depth) {
      if (depth == len) {
        double s = 0.0;
        for (int t = 0; t < len; ++t) {
          s += k(rsel[t], csel[t]) - k(rsel[(t + 1) % len], csel[t]);
        }
        best = std::max(best, std::abs(s) / (2.0 * len));
        return;
      }
      for (int c = 0; c < m; ++c) {
        if (std::find(csel.begin(), csel.begin() + depth, c) !=
            csel.begin() + depth) {
          continue;
        }
        csel[depth] = c;
        pick_cols(depth + 1);
      }
    };
    pick_rows(0);
  }
  return best;
}

TEST(DecomposeTest, WorkedExampleParts) {
  const Decomposition dec = Decompose(WorkedExample());
  Matrix z(3, 3);
  z << 0, 8, -8, -8, 0, 8, 8, -8, 0;
  Matrix c(3, 3);
  c << 4, 4, 2, 0, 0, 4, 6, 0, 4;
  EXPECT_EQ(dec.zero_sum, z);
  EXPECT_EQ(dec.coordination, c);
}

TEST(DecomposeTest, PartsReassemble) {
  testing::Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const BimatrixGame g = testing::RandomBimatrix(rng, 2 + t % 4, 2 + t % 3);
    const Decomposition dec = Decompose(g);
    EXPECT_LT((dec.zero_sum + dec.coordination - g.A()).norm(), 1e-12);
    EXPECT_LT((dec.coordination - dec.zero_sum - g.B()).norm(), 1e-12);
  }
}

TEST(QuadrupleTest, AntisymmetricAndKillsTrivial) {
  testing::Rng rng(32);
  const Matrix k = testing::RandomMatrix(rng, 4, 3);
  const Matrix t = testing::RandomTrivial(rng, 4, 3);
  EXPECT_DOUBLE_EQ(QuadrupleCombination(k, 0, 2, 1, 2),
                   -QuadrupleCombination(k, 2, 0, 1, 2));
  EXPECT_NEAR(QuadrupleCombination(t, 0, 3, 0, 2), 0.0, 1e-12);
  EXPECT_TRUE(IsTrivial(t, 1e-9));
  EXPECT_FALSE(IsTrivial(k, 1e-9));
}

TEST(ChebyshevTest, WorkedExampleRadii) {
  const Decomposition dec = Decompose(WorkedExample());
  EXPECT_NEAR(ChebyshevTrivialFit(dec.zero_sum).r, 8.0, 1e-9);
  EXPECT_NEAR(ChebyshevTrivialFit(dec.coordination).r, 2.0, 1e-9);
  EXPECT_NEAR(CycleOracle(dec.zero_sum), 8.0, 1e-12);
  EXPECT_NEAR(CycleOracle(dec.coordination), 2.0, 1e-12);
}

TEST(ChebyshevTest, TwoByTwoClosedForm) {
  testing::Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const Matrix k = testing::RandomMatrix(rng, 2, 2);
    EXPECT_NEAR(ChebyshevTrivialFit(k).r,
                std::abs(QuadrupleCombination(k, 0, 1, 0, 1)) / 4.0, 1e-9);
  }
}

TEST(ChebyshevTest, MatchesCycleOracle) {
  testing::Rng rng(34);
  for (int t = 0; t < 60; ++t) {
    const Matrix k = testing::RandomMatrix(rng, 2 + t % 3, 2 + (t / 3) % 3);
    EXPECT_NEAR(ChebyshevTrivialFit(k).r, CycleOracle(k), 1e-8) << "t=" << t;
  }
}

TEST(ChebyshevTest, PrimalAndDualCertificatesAgree) {
  testing::Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 5;
    const int m = 2 + (t / 5) % 4;
    const Matrix k = testing::RandomMatrix(rng, n, m);
    const ChebyshevFit fit = ChebyshevTrivialFit(k);
    // Primal: the fitted trivial matrix attains r.
    Matrix residual = k;
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < m; ++c) residual(j, c) -= fit.g[j] + fit.h[c];
    }
    EXPECT_NEAR(residual.cwiseAbs().maxCoeff(), fit.r, 1e-8);
    // Dual: zero margins, unit mass, and <K, W> = r.
    const Matrix& w = fit.dual_weights;
    EXPECT_LT(w.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(w.colwise().sum().cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE(w.cwiseAbs().sum(), 1.0 + 1e-9);
    EXPECT_NEAR((k.array() * w.array()).sum(), fit.r, 1e-8);
  }
}

TEST(ChebyshevTest, TrivialShiftInvariance) {
  testing::Rng rng(36);
  for (int t = 0; t < 20; ++t) {
    const Matrix k = testing::RandomMatrix(rng, 3, 4);
    const Matrix shifted = k + testing::RandomTrivial(rng, 3, 4);
    EXPECT_NEAR(ChebyshevTrivialFit(k).r, ChebyshevTrivialFit(shifted).r,
                1e-8);
  }
}

TEST(L2ProjectionTest, ResidualIsDoublyCentered) {
  testing::Rng rng(37);
  const Matrix k = testing::RandomMatrix(rng, 4, 3);
  const L2Projection proj = L2TrivialProjection(k);
  EXPECT_LT(proj.residual.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(proj.residual.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((proj.trivial.Materialize() + proj.residual - k).norm(), 1e-12);
  EXPECT_NEAR(proj.distance, proj.residual.norm(), 1e-12);
  // Any other trivial matrix is at least as far away.
  const Matrix t = proj.trivial.Materialize() + testing::RandomTrivial(rng, 4, 3, 0.1);
  EXPECT_GE((k - t).norm(), proj.distance);
}

TEST(PotentialTest, BimatrixExtractionRecoversPotential) {
  testing::Rng rng(38);
  for (int t = 0; t < 10; ++t) {
    const Matrix p = testing::RandomMatrix(rng, 3, 4);
    // A = P + a_k, B = P + b_j.
    const Matrix a = p + testing::RandomMatrix(rng, 1, 4).replicate(3, 1);
    const Matrix b = p + testing::RandomMatrix(rng, 3, 1).replicate(1, 4);
    const std::optional<Matrix> got =
        ExtractBimatrixPotential(BimatrixGame(a, b), 1e-9);
    ASSERT_TRUE(got.has_value());
    const Matrix diff = *got - p;
    EXPECT_NEAR(diff.maxCoeff() - diff.minCoeff(), 0.0, 1e-10);
  }
  const BimatrixGame pennies(Matrix{{1, -1}, {-1, 1}}, Matrix{{-1, 1}, {1, -1}});
  EXPECT_FALSE(ExtractBimatrixPotential(pennies, 1e-9).has_value());
}

TEST(PotentialTest, MultiPlayerExtractionAndLift) {
  testing::Rng rng(39);
  Tensor potential;
  const NormalFormGame g =
      testing::RandomPotentialGame(rng, {2, 3, 2}, &potential);
  EXPECT_TRUE(IsPotentialGame(g, potential, 1e-9));
  const std::optional<Tensor> got = ExtractPotential(g, 1e-9);
  ASSERT_TRUE(got.has_value());
  EXPECT_TRUE(IsPotentialGame(g, *got, 1e-9));
  const NormalFormGame lift = PotentialCoordinationLift(g, potential);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(lift.payoffs(i).values(), potential.values());
  }
  const NormalFormGame generic = testing::RandomNormalForm(rng, {2, 2, 2});
  EXPECT_FALSE(ExtractPotential(generic, 1e-9).has_value());
}

}  // namespace
}  // namespace chaoscope
