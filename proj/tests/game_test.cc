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

#include <cmath>
#include <string>

#include "chaoscope/errors.h"
#include "chaoscope/game.h"
#include "chaoscope/game_io.h"
#include "test_support.h"

namespace chaoscope {
namespace {

TEST(SoftmaxTest, ZeroVectorIsUniform) {
  const Vector x = Softmax(Vector::Zero(3));
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(x[j], 1.0 / 3.0);
}

TEST(SoftmaxTest, ShiftInvariantAndStableForLargeInputs) {
  Vector p(3);
  p << 1000.0, 1001.0, 999.0;
  const Vector x = Softmax(p);
  const Vector y = Softmax((p.array() - 1000.0).matrix());
  EXPECT_TRUE(x.allFinite());
  EXPECT_NEAR((x - y).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_NEAR(x.sum(), 1.0, 1e-15);
}

TEST(DualPrimalTest, RoundTripUpToPerPlayerShift) {
  testing::Rng rng(7);
  const std::vector<int> counts = {3, 2, 4};
  const DualPoint p = testing::RandomDualPoint(rng, counts);
  const DualPoint q = PrimalToDual(DualToPrimal(p));
  for (int i = 0; i < 3; ++i) {
    const Vector diff = q.blocks[i] - p.blocks[i];
    EXPECT_NEAR(diff.maxCoeff() - diff.minCoeff(), 0.0, 1e-12);
  }
}

TEST(DualPointTest, FlattenUnflatten) {
  testing::Rng rng(8);
  const std::vector<int> counts = {2, 3};
  const DualPoint p = testing::RandomDualPoint(rng, counts);
  const Vector flat = p.Flatten();
  ASSERT_EQ(flat.size(), 5);
  const DualPoint q = DualPoint::Unflatten(flat, counts);
  EXPECT_EQ(q.blocks[0], p.blocks[0]);
  EXPECT_EQ(q.blocks[1], p.blocks[1]);
}

TEST(ExpectedPayoffTest, MatchesBilinearForm) {
  testing::Rng rng(9);
  const BimatrixGame g = testing::RandomBimatrix(rng, 3, 4);
  const std::vector<int> counts = {3, 4};
  const MixedProfile x =
      DualToPrimal(testing::RandomDualPoint(rng, counts));
  const NormalFormGame nf = g.ToNormalForm();
  const FocalStrategy none_pinned[] = {{1, 3}};
  EXPECT_NEAR(ExpectedPayoff(nf, x, none_pinned),
              (g.B().transpose() * x.blocks[0])[3], 1e-12);
  const FocalStrategy focal[] = {{0, 2}};
  EXPECT_NEAR(ExpectedPayoff(nf, x, focal), (g.A() * x.blocks[1])[2], 1e-12);
  const Vector u1 = PlayerPayoffs(nf, x, 1);
  EXPECT_NEAR((u1 - g.B().transpose() * x.blocks[0]).norm(), 0.0, 1e-12);
}

TEST(PairPayoffsTest, AgreesWithEnumerationOracle) {
  testing::Rng rng(10);
  const std::vector<int> counts = {2, 3, 2};
  const NormalFormGame g = testing::RandomNormalForm(rng, counts);
  const MixedProfile x = DualToPrimal(testing::RandomDualPoint(rng, counts));
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (i == k) continue;
      const Matrix got = PairPayoffs(g, x, i, k);
      const Matrix want = testing::OraclePairPayoffs(g, x, i, k);
      EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(GraphicalGameTest, NormalFormPayoffIsEdgeSum) {
  testing::Rng rng(11);
  const std::vector<int> counts = {2, 3, 2};
  const GraphicalGame h = testing::RandomGraphical(rng, counts);
  const NormalFormGame nf = GraphicalToNormalForm(h);
  std::vector<int> s = {1, 2, 0};
  for (int i = 0; i < 3; ++i) {
    double want = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (k != i) want += h.Edge(i, k)(s[i], s[k]);
    }
    EXPECT_NEAR(nf.Payoff(i, s), want, 1e-12);
  }
}

TEST(GraphicalGameTest, BudgetIsEnforced) {
  GraphicalGame h(std::vector<int>(6, 10));
  EXPECT_THROW(GraphicalToNormalForm(h, 1000), BudgetExceeded);
}

TEST(RegionTest, DeltaRangeAndMembership) {
  const std::vector<int> counts = {2, 3};
  EXPECT_THROW((RegionSpec{0.0}).Validate(counts), InvalidArgument);
  EXPECT_THROW((RegionSpec{0.34}).Validate(counts), InvalidArgument);
  EXPECT_NO_THROW((RegionSpec{1.0 / 3.0}).Validate(counts));
  EXPECT_TRUE(InRegion(DualPoint::Zeros(counts), RegionSpec{0.3}));
  DualPoint p = DualPoint::Zeros(counts);
  p.blocks[1][0] = 5.0;
  EXPECT_FALSE(InRegion(p, RegionSpec{0.05}));
}

TEST(GameIoTest, ParsesAllThreeKinds) {
  const Game b = ParseGame(
      R"({"kind":"bimatrix","A":[[1,2],[3,4]],"B":[[0,1],[1,0]]})");
  ASSERT_TRUE(std::holds_alternative<BimatrixGame>(b));
  EXPECT_EQ(std::get<BimatrixGame>(b).A()(1, 0), 3.0);

  const Game n = ParseGame(
      R"({"kind":"normal_form","strategy_counts":[2,2],
          "payoffs":[[[1,2],[3,4]],[[5,6],[7,8]]]})");
  ASSERT_TRUE(std::holds_alternative<NormalFormGame>(n));
  const int s[] = {1, 0};
  EXPECT_EQ(std::get<NormalFormGame>(n).Payoff(1, s), 7.0);

  const Game g = ParseGame(
      R"({"kind":"graphical","strategy_counts":[2,3],
          "edges":[{"i":0,"k":1,"H_ik":[[1,2,3],[4,5,6]],
                    "H_ki":[[1,0],[0,1],[1,1]]}]})");
  ASSERT_TRUE(std::holds_alternative<GraphicalGame>(g));
  EXPECT_EQ(std::get<GraphicalGame>(g).Edge(1, 0)(2, 1), 1.0);
}

TEST(GameIoTest, DiagnosticsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      ParseGame(text);
    } catch (const InvalidArgument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"kind":"bimatrix","A":[[1,2]],"B":[[1]]})")
                .find("B"),
            std::string::npos);
  EXPECT_NE(message(R"({"kind":"triangle"})").find("kind"),
            std::string::npos);
  EXPECT_NE(message("{not json").find("json"), std::string::npos);
}

TEST(GameIoTest, SerializationRoundTripsEveryKind) {
  testing::Rng rng(12);
  const std::vector<Game> games = {
      testing::RandomBimatrix(rng, 2, 3),
      testing::RandomNormalForm(rng, {2, 2, 3}),
      testing::RandomGraphical(rng, {3, 2, 2}),
  };
  for (const Game& g : games) {
    const std::string text = GameToJson(g);
    const Game back = ParseGame(text);
    EXPECT_EQ(GameToJson(back), text);
  }
}

TEST(GameIoTest, DualPointParsing) {
  const std::vector<int> counts = {2, 3};
  const DualPoint u = ParseDualPoint("\"uniform\"", counts);
  EXPECT_EQ(u.Flatten(), Vector::Zero(5));
  const DualPoint u2 = ParseDualPoint("uniform", counts);
  EXPECT_EQ(u2.Flatten(), Vector::Zero(5));
  const DualPoint p = ParseDualPoint("[[1,2],[3,4,5]]", counts);
  EXPECT_EQ(p.blocks[1][2], 5.0);
  EXPECT_THROW(ParseDualPoint("[[1,2],[3,4]]", counts), InvalidArgument);
  EXPECT_THROW(ParseDualPoint("[[1,2]]", counts), InvalidArgument);
  const auto many = ParseDualPoints(R"(["uniform",[[0,1],[1,0,0]]])", counts);
  EXPECT_EQ(many.size(), 2u);
}

TEST(TensorTest, RowMajorIndexing) {
  Tensor t({2, 3, 4});
  const int idx[] = {1, 2, 3};
  EXPECT_EQ(t.FlatIndex(idx), 1 * 12 + 2 * 4 + 3);
  EXPECT_EQ(ProfileCount(std::vector<int>{2, 3, 4}), 24);
}

}  // namespace
}  // namespace chaoscope
