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

#ifndef CHAOSCOPE_GAME_H_
#define CHAOSCOPE_GAME_H_

// Game representations, expected payoffs, the dual-to-primal (softmax) map and
// the S^delta region of dual points whose primal image keeps every strategy
// at probability at least delta.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace chaoscope {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default cap on the number of pure profiles a dense enumeration may touch.
inline constexpr std::int64_t kDefaultProfileBudget = 10'000'000;

// Number of pure profiles of a product strategy space. Saturates at
// INT64_MAX instead of overflowing.
std::int64_t ProfileCount(std::span<const int> strategy_counts);

// Advances `profile` to the next element of the product space in row-major
// order (last coordinate fastest). Returns false after the last profile.
bool NextProfile(std::span<const int> strategy_counts,
                 std::span<int> profile);

// Dense row-major tensor. Used for payoff tensors and potential functions.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<double> values);

  const std::vector<int>& shape() const { return shape_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  std::int64_t FlatIndex(std::span<const int> index) const;
  double at(std::span<const int> index) const { return values_[FlatIndex(index)]; }
  double& at(std::span<const int> index) { return values_[FlatIndex(index)]; }
  std::int64_t stride(int axis) const { return strides_[axis]; }

  double MaxAbs() const;

 private:
  void InitStrides();

  std::vector<int> shape_;
  std::vector<std::int64_t> strides_;
  std::vector<double> values_;
};

// N-player game with one dense payoff tensor per player.
class NormalFormGame {
 public:
  NormalFormGame(std::vector<int> strategy_counts, std::vector<Tensor> payoffs);

  // All-zero game.
  static NormalFormGame Zero(std::vector<int> strategy_counts);

  int num_players() const { return static_cast<int>(strategy_counts_.size()); }
  const std::vector<int>& strategy_counts() const { return strategy_counts_; }
  const Tensor& payoffs(int player) const { return payoffs_[player]; }
  double Payoff(int player, std::span<const int> profile) const {
    return payoffs_[player].at(profile);
  }
  double MaxAbsPayoff() const;

 private:
  std::vector<int> strategy_counts_;
  std::vector<Tensor> payoffs_;
};

// Two-player game; A pays the row player, B the column player.
class BimatrixGame {
 public:
  BimatrixGame(Matrix a, Matrix b);

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }
  double MaxAbsPayoff() const;
  NormalFormGame ToNormalForm() const;

 private:
  Matrix a_;
  Matrix b_;
};

// Game whose payoffs are sums of pairwise edge games:
//   u_i(s) = sum_{k != i} H^{ik}[s_i, s_k].
// Missing edges are zero matrices.
class GraphicalGame {
 public:
  explicit GraphicalGame(std::vector<int> strategy_counts);

  int num_players() const { return static_cast<int>(strategy_counts_.size()); }
  const std::vector<int>& strategy_counts() const { return strategy_counts_; }

  // Payoff matrix to player i against player k, shape n_i x n_k.
  const Matrix& Edge(int i, int k) const;
  void SetEdge(int i, int k, Matrix h_ik);
  double MaxAbsPayoff() const;

 private:
  std::vector<int> strategy_counts_;
  std::vector<Matrix> edges_;  // N*N, diagonal unused
};

using Game = std::variant<BimatrixGame, NormalFormGame, GraphicalGame>;

// Per-player cumulative payoff vectors.
struct DualPoint {
  std::vector<Vector> blocks;

  int num_players() const { return static_cast<int>(blocks.size()); }
  int dimension() const;
  Vector Flatten() const;
  static DualPoint Unflatten(const Vector& flat,
                            std::span<const int> strategy_counts);
  static DualPoint Zeros(std::span<const int> strategy_counts);
};

// Per-player mixed strategies.
struct MixedProfile {
  std::vector<Vector> blocks;

  int num_players() const { return static_cast<int>(blocks.size()); }
};

struct RegionSpec {
  double delta = 0.0;

  // Throws InvalidArgument unless 0 < delta <= 1 / max_i n_i.
  void Validate(std::span<const int> strategy_counts) const;
};

struct FocalStrategy {
  int player;
  int strategy;
};

// Softmax with max-subtraction.
Vector Softmax(const Vector& p);

MixedProfile DualToPrimal(const DualPoint& p);

// Componentwise log; a preimage of x under DualToPrimal. Requires x > 0.
DualPoint PrimalToDual(const MixedProfile& x);

// U^{i_1...i_g}_{j_1...j_g}(x): expected payoff to the first focal player with
// the focal players pinned and everybody else drawn from x. Exact summation
// over the residual profile space.
double ExpectedPayoff(const NormalFormGame& game, const MixedProfile& x,
                      std::span<const FocalStrategy> focal);

// U^i_j for all j.
Vector PlayerPayoffs(const NormalFormGame& game, const MixedProfile& x,
                     int player);

// U^{ik}_{jl} for all (j, l), shape n_i x n_k.
Matrix PairPayoffs(const NormalFormGame& game, const MixedProfile& x, int i,
                   int k);

NormalFormGame GraphicalToNormalForm(
    const GraphicalGame& game, std::int64_t budget = kDefaultProfileBudget);

bool InRegion(const DualPoint& p, const RegionSpec& region);

// --- Uniform access across the three game representations. ---

std::vector<int> StrategyCounts(const Game& game);
double MaxAbsPayoff(const Game& game);

// Throws InvalidArgument if the point's block sizes do not match the game.
void CheckShape(const Game& game, const DualPoint& p);
void CheckShape(std::span<const int> strategy_counts, const DualPoint& p);

// U^i_j(x) for every player i.
std::vector<Vector> PayoffVectors(const Game& game, const MixedProfile& x);

// U^{ik}(x) for one ordered pair of distinct players.
Matrix PairPayoffs(const Game& game, const MixedProfile& x, int i, int k);

NormalFormGame ToNormalForm(const Game& game,
                            std::int64_t budget = kDefaultProfileBudget);

}  // namespace chaoscope

#endif  // CHAOSCOPE_GAME_H_
