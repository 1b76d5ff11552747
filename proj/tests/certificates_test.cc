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
#include <limits>

#include "chaoscope/c_function.h"
#include "chaoscope/certificates.h"
#include "chaoscope/decomposition.h"
#include "chaoscope/errors.h"
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

// Minimum of sign * C over random region points, an upper bound on the true
// minimum that any certificate must respect.
double SampledMin(const Game& g, double delta, double sign, int n,
                  std::uint64_t seed) {
  testing::Rng rng(seed);
  const std::vector<int> counts = StrategyCounts(g);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    best = std::min(best,
                    sign * CValue(g, testing::RandomRegionPoint(rng, counts, delta)));
  }
  return best;
}

TEST(DominationTest, MatchesAllOrderedQuadruples) {
  testing::Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    const int m = 2 + (t / 3) % 3;
    const Matrix k = testing::RandomMatrix(rng, n, m);
    const Matrix l = 0.4 * testing::RandomMatrix(rng, n, m);
    bool dominates = true;
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      for (int j2 = 0; j2 < n; ++j2) {
        for (int c = 0; c < m; ++c) {
          for (int c2 = 0; c2 < m; ++c2) {
            if (j == j2 || c == c2) continue;
            const double dk =
                k(j, c) - k(j, c2) - k(j2, c) + k(j2, c2);
            const double dl =
                l(j, c) - l(j, c2) - l(j2, c) + l(j2, c2);
            dominates = dominates && std::abs(dk) >= std::abs(dl);
            best = std::max(best, std::abs(dk) - std::abs(dl));
          }
        }
      }
    }
    const DominationReport r = CheckDomination(k, l);
    EXPECT_EQ(r.dominates, dominates) << "t=" << t;
    EXPECT_NEAR(r.theta_margin, best, 1e-12);
  }
}

TEST(DominationTest, WorkedExample) {
  const Decomposition dec = Decompose(WorkedExample());
  const DominationReport r = CheckDomination(dec.zero_sum, dec.coordination);
  EXPECT_TRUE(r.dominates);
  EXPECT_EQ(r.theta_margin, 18.0);
  const auto cert = CertifyDomination(WorkedExample(), RegionSpec{0.2}, 0.01,
                                      Algorithm::kMwu);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->theta, 18.0);
  EXPECT_NEAR(cert->cbar_lower, 324.0 * std::pow(0.2, 4), 1e-12);
  EXPECT_NEAR(cert->lyapunov_exponent, cert->cbar_lower * 1e-4 / 12.0, 1e-18);
  ASSERT_TRUE(cert->theorem_exponent.has_value());
  EXPECT_NEAR(*cert->theorem_exponent, 324.0 * 0.04 * 1e-4 / 12.0, 1e-18);
  EXPECT_FALSE(CertifyDomination(WorkedExample(), RegionSpec{0.2}, 0.01,
                                 Algorithm::kOmwu)
                   .has_value());
}

TEST(DominationTest, WorkedExampleCertificateIsSound) {
  const auto cert = CertifyDomination(WorkedExample(), RegionSpec{0.2}, 0.01,
                                      Algorithm::kMwu);
  ASSERT_TRUE(cert.has_value());
  EXPECT_GE(SampledMin(WorkedExample(), 0.2, 1.0, 3000, 5),
            cert->cbar_lower - 1e-9);
}

TEST(LpCertificateTest, SoundOnRandomCorpus) {
  testing::Rng rng(72);
  int issued = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    const Matrix z = testing::RandomMatrix(rng, n, n);
    const Matrix c = 0.05 * testing::RandomMatrix(rng, n, n);
    const bool omwu = t % 2 == 1;
    // OMWU wants the coordination part to dominate.
    const BimatrixGame g = omwu ? BimatrixGame(c + z, z - c)
                                : BimatrixGame(z + c, c - z);
    const Algorithm alg = omwu ? Algorithm::kOmwu : Algorithm::kMwu;
    const double delta = 0.2;
    const auto cert = CertifyLp(g, RegionSpec{delta}, 0.01, alg);
    if (!cert) continue;
    ++issued;
    EXPECT_EQ(cert->kind, CertificateKind::kLp);
    EXPECT_GE(SampledMin(g, delta, omwu ? -1.0 : 1.0, 500, t),
              cert->cbar_lower - 1e-9);
  }
  EXPECT_GT(issued, 10);
}

TEST(LpCertificateTest, ZeroSumTwoByTwo) {
  // r(Z) = |dZ| / 4 = 1 and r(C) = 0, so cbar = delta^2.
  const BimatrixGame g(Matrix{{1, -1}, {-1, 1}}, Matrix{{-1, 1}, {1, -1}});
  const auto cert = CertifyLp(g, RegionSpec{0.1}, 0.01, Algorithm::kMwu);
  ASSERT_TRUE(cert.has_value());
  EXPECT_NEAR(cert->cbar_lower, 0.01, 1e-9);
  EXPECT_NEAR(cert->theta, 1.0, 1e-8);
}

TEST(GraphicalCertificateTest, ZeroSumEdgesCertifyAndAreSound) {
  testing::Rng rng(73);
  const std::vector<int> counts = {2, 3, 2};
  GraphicalGame h(counts);
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      const Matrix z = testing::RandomMatrix(rng, counts[i], counts[k]);
      h.SetEdge(i, k, z);
      h.SetEdge(k, i, -z.transpose());
    }
  }
  const auto cert =
      CertifyGraphicalFamily(h, RegionSpec{0.2}, 0.01, Algorithm::kMwu);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->dual_dimension, 7);
  EXPECT_GE(SampledMin(h, 0.2, 1.0, 1000, 9), cert->cbar_lower - 1e-9);
}

TEST(GraphicalCertificateTest, OneFailingEdgeFailsTheFamily) {
  const std::vector<int> counts = {2, 2, 2};
  GraphicalGame h(counts);
  const Matrix z{{1, -1}, {-1, 1}};
  h.SetEdge(0, 1, z);
  h.SetEdge(1, 0, -z.transpose());
  h.SetEdge(1, 2, z);
  h.SetEdge(2, 1, z.transpose());  // coordination edge
  EXPECT_FALSE(CertifyGraphicalFamily(h, RegionSpec{0.2}, 0.01,
                                      Algorithm::kMwu)
                   .has_value());
}

TEST(PotentialCertificateTest, TwoPlayerDistanceBound) {
  testing::Rng rng(74);
  for (int t = 0; t < 10; ++t) {
    Tensor p;
    const NormalFormGame g = testing::RandomPotentialGame(rng, {3, 3}, &p);
    const auto cert =
        CertifyPotentialNegativity(g, p, RegionSpec{0.2}, 0.01);
    ASSERT_TRUE(cert.has_value());
    EXPECT_EQ(cert->algorithm, Algorithm::kOmwu);
    EXPECT_FALSE(cert->theorem_exponent.has_value());
    EXPECT_GE(SampledMin(g, 0.2, -1.0, 500, t), cert->cbar_lower - 1e-9);
  }
}

TEST(PotentialCertificateTest, ThreePlayerNeverContradicted) {
  testing::Rng rng(75);
  for (int t = 0; t < 15; ++t) {
    Tensor p;
    const NormalFormGame g =
        testing::RandomPotentialGame(rng, {2, 2, 3}, &p);
    const auto cert =
        CertifyPotentialNegativity(g, p, RegionSpec{0.25}, 0.01);
    if (!cert) continue;
    EXPECT_GE(SampledMin(g, 0.25, -1.0, 500, t), cert->cbar_lower - 1e-9);
  }
}

TEST(PotentialCertificateTest, RejectsNonPotentialPair) {
  testing::Rng rng(76);
  const NormalFormGame g = testing::RandomNormalForm(rng, {2, 2, 2});
  const Tensor p = testing::RandomTensor(rng, {2, 2, 2});
  EXPECT_THROW(CertifyPotentialNegativity(g, p, RegionSpec{0.2}, 0.01),
               InvalidArgument);
}

TEST(PotentialCertificateTest, GraphicalRoute) {
  testing::Rng rng(77);
  const std::vector<int> counts = {2, 3, 2};
  GraphicalGame h(counts);
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      const Matrix p = testing::RandomMatrix(rng, counts[i], counts[k]);
      h.SetEdge(i, k, p);
      h.SetEdge(k, i, p.transpose());
    }
  }
  const auto cert =
      CertifyGraphicalPotentialNegativity(h, RegionSpec{0.2}, 0.01);
  ASSERT_TRUE(cert.has_value());
  EXPECT_GE(SampledMin(h, 0.2, -1.0, 1000, 3), cert->cbar_lower - 1e-9);
}

TEST(CbarSampleTest, MatchingPenniesVertexMinimum) {
  const BimatrixGame g(Matrix{{1, -1}, {-1, 1}}, Matrix{{-1, 1}, {1, -1}});
  const CbarSampleResult r =
      CbarSample(g, RegionSpec{0.1}, Algorithm::kMwu, 1000, 1);
  EXPECT_NEAR(r.min_value, 16.0 * std::pow(0.1 * 0.9, 2), 1e-12);
  EXPECT_EQ(r.num_points, 1000);
}

TEST(CbarSampleTest, DeterministicAndThreadInvariant) {
  testing::Rng rng(78);
  const NormalFormGame g = testing::RandomNormalForm(rng, {3, 2, 2});
  const CbarSampleResult a =
      CbarSample(g, RegionSpec{0.1}, Algorithm::kOmwu, 500, 9);
  setenv("CHAOSCOPE_THREADS", "1", 1);
  const CbarSampleResult b =
      CbarSample(g, RegionSpec{0.1}, Algorithm::kOmwu, 500, 9);
  unsetenv("CHAOSCOPE_THREADS");
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.argmin.Flatten(), b.argmin.Flatten());
}

TEST(ConverseTest, NonDominationYieldsNegativeC) {
  testing::Rng rng(79);
  int found = 0;
  for (int t = 0; t < 50; ++t) {
    const BimatrixGame g = testing::RandomBimatrix(rng, 3, 3);
    const Decomposition dec = Decompose(g);
    const DominationReport r = CheckDomination(dec.zero_sum, dec.coordination);
    if (r.dominates) continue;
    const auto p = FindNegativeCPoint(g, r.witness);
    ASSERT_TRUE(p.has_value()) << "t=" << t;
    EXPECT_LT(CBimatrix(g, *p), 0.0);
    ++found;
  }
  EXPECT_GT(found, 10);
}

}  // namespace
}  // namespace chaoscope
