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

#include "chaoscope/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "chaoscope/errors.h"

namespace chaoscope {
namespace {

void CheckStrategyCounts(std::span<const int> counts, int min_players) {
  if (static_cast<int>(counts.size()) < min_players) {
    throw InvalidArgument("strategy_counts: need at least " +
                          std::to_string(min_players) + " players, got " +
                          std::to_string(counts.size()));
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) {
      throw InvalidArgument("strategy_counts[" + std::to_string(i) +
                            "]: must be >= 1");
    }
  }
}

void CheckFinite(const Matrix& m, const std::string& field) {
  if (!m.allFinite()) throw InvalidArgument(field + ": non-finite entry");
}

}  // namespace

std::int64_t ProfileCount(std::span<const int> strategy_counts) {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 1;
  for (int n : strategy_counts) {
    if (n <= 0) return 0;
    if (total > kMax / n) return kMax;
    total *= n;
  }
  return total;
}

bool NextProfile(std::span<const int> strategy_counts, std::span<int> profile) {
  for (int axis = static_cast<int>(profile.size()) - 1; axis >= 0; --axis) {
    if (++profile[axis] < strategy_counts[axis]) return true;
    profile[axis] = 0;
  }
  return false;
}

// ---------------------------------------------------------------- Tensor

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  InitStrides();
  values_.assign(ProfileCount(shape_), 0.0);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  InitStrides();
  if (static_cast<std::int64_t>(values_.size()) != ProfileCount(shape_)) {
    throw InvalidArgument("tensor: expected " +
                          std::to_string(ProfileCount(shape_)) +
                          " entries, got " + std::to_string(values_.size()));
  }
}

void Tensor::InitStrides() {
  for (int n : shape_) {
    if (n < 1) throw InvalidArgument("tensor: every dimension must be >= 1");
  }
  strides_.assign(shape_.size(), 1);
  for (int axis = static_cast<int>(shape_.size()) - 2; axis >= 0; --axis) {
    strides_[axis] = strides_[axis + 1] * shape_[axis + 1];
  }
}

std::int64_t Tensor::FlatIndex(std::span<const int> index) const {
  std::int64_t flat = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    flat += strides_[axis] * index[axis];
  }
  return flat;
}

double Tensor::MaxAbs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

// -------------------------------------------------------- NormalFormGame

NormalFormGame::NormalFormGame(std::vector<int> strategy_counts,
                               std::vector<Tensor> payoffs)
    : strategy_counts_(std::move(strategy_counts)),
      payoffs_(std::move(payoffs)) {
  CheckStrategyCounts(strategy_counts_, 2);
  if (payoffs_.size() != strategy_counts_.size()) {
    throw InvalidArgument("payoffs: expected one tensor per player (" +
                          std::to_string(strategy_counts_.size()) + "), got " +
                          std::to_string(payoffs_.size()));
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].shape() != strategy_counts_) {
      throw InvalidArgument("payoffs[" + std::to_string(i) +
                            "]: shape does not match strategy_counts");
    }
    for (double v : payoffs_[i].values()) {
      if (!std::isfinite(v)) {
        throw InvalidArgument("payoffs[" + std::to_string(i) +
                              "]: non-finite entry");
      }
    }
  }
}

NormalFormGame NormalFormGame::Zero(std::vector<int> strategy_counts) {
  std::vector<Tensor> payoffs(strategy_counts.size(), Tensor(strategy_counts));
  return NormalFormGame(std::move(strategy_counts), std::move(payoffs));
}

double NormalFormGame::MaxAbsPayoff() const {
  double m = 0.0;
  for (const Tensor& t : payoffs_) m = std::max(m, t.MaxAbs());
  return m;
}

// ---------------------------------------------------------- BimatrixGame

BimatrixGame::BimatrixGame(Matrix a, Matrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() < 1 || a_.cols() < 1) {
    throw InvalidArgument("A: must have at least one row and column");
  }
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw InvalidArgument("B: shape " + std::to_string(b_.rows()) + "x" +
                          std::to_string(b_.cols()) + " does not match A " +
                          std::to_string(a_.rows()) + "x" +
                          std::to_string(a_.cols()));
  }
  CheckFinite(a_, "A");
  CheckFinite(b_, "B");
}

double BimatrixGame::MaxAbsPayoff() const {
  return std::max(a_.cwiseAbs().maxCoeff(), b_.cwiseAbs().maxCoeff());
}

NormalFormGame BimatrixGame::ToNormalForm() const {
  std::vector<int> counts = {rows(), cols()};
  std::vector<double> a(a_.size()), b(b_.size());
  for (int j = 0; j < rows(); ++j) {
    for (int k = 0; k < cols(); ++k) {
      a[j * cols() + k] = a_(j, k);
      b[j * cols() + k] = b_(j, k);
    }
  }
  std::vector<Tensor> payoffs;
  payoffs.emplace_back(counts, std::move(a));
  payoffs.emplace_back(counts, std::move(b));
  return NormalFormGame(counts, std::move(payoffs));
}

// --------------------------------------------------------- GraphicalGame

GraphicalGame::GraphicalGame(std::vector<int> strategy_counts)
    : strategy_counts_(std::move(strategy_counts)) {
  CheckStrategyCounts(strategy_counts_, 2);
  const int n = num_players();
  edges_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i != k) {
        edges_[i * n + k] =
            Matrix::Zero(strategy_counts_[i], strategy_counts_[k]);
      }
    }
  }
}

const Matrix& GraphicalGame::Edge(int i, int k) const {
  const int n = num_players();
  if (i < 0 || k < 0 || i >= n || k >= n || i == k) {
    throw InvalidArgument("edge (" + std::to_string(i) + "," +
                          std::to_string(k) + "): invalid player pair");
  }
  return edges_[i * n + k];
}

void GraphicalGame::SetEdge(int i, int k, Matrix h_ik) {
  const int n = num_players();
  if (i < 0 || k < 0 || i >= n || k >= n || i == k) {
    throw InvalidArgument("edge (" + std::to_string(i) + "," +
                          std::to_string(k) + "): invalid player pair");
  }
  if (h_ik.rows() != strategy_counts_[i] ||
      h_ik.cols() != strategy_counts_[k]) {
    throw InvalidArgument("H_" + std::to_string(i) + std::to_string(k) +
                          ": expected shape " +
                          std::to_string(strategy_counts_[i]) + "x" +
                          std::to_string(strategy_counts_[k]));
  }
  CheckFinite(h_ik, "H_" + std::to_string(i) + std::to_string(k));
  edges_[i * n + k] = std::move(h_ik);
}

double GraphicalGame::MaxAbsPayoff() const {
  double m = 0.0;
  for (const Matrix& e : edges_) {
    if (e.size() > 0) m = std::max(m, e.cwiseAbs().maxCoeff());
  }
  return m;
}

// ------------------------------------------------------ Dual and primal

int DualPoint::dimension() const {
  int d = 0;
  for (const Vector& b : blocks) d += static_cast<int>(b.size());
  return d;
}

Vector DualPoint::Flatten() const {
  Vector flat(dimension());
  int offset = 0;
  for (const Vector& b : blocks) {
    flat.segment(offset, b.size()) = b;
    offset += static_cast<int>(b.size());
  }
  return flat;
}

DualPoint DualPoint::Unflatten(const Vector& flat,
                               std::span<const int> strategy_counts) {
  DualPoint p;
  int offset = 0;
  for (int n : strategy_counts) {
    if (offset + n > flat.size()) {
      throw InvalidArgument("dual point: flat vector too short");
    }
    p.blocks.push_back(flat.segment(offset, n));
    offset += n;
  }
  if (offset != flat.size()) {
    throw InvalidArgument("dual point: flat vector too long");
  }
  return p;
}

DualPoint DualPoint::Zeros(std::span<const int> strategy_counts) {
  DualPoint p;
  for (int n : strategy_counts) p.blocks.push_back(Vector::Zero(n));
  return p;
}

void RegionSpec::Validate(std::span<const int> strategy_counts) const {
  int max_n = 1;
  for (int n : strategy_counts) max_n = std::max(max_n, n);
  if (!(delta > 0.0) || delta > 1.0 / max_n) {
    throw InvalidArgument("delta: must lie in (0, 1/" + std::to_string(max_n) +
                          "], got " + std::to_string(delta));
  }
}

Vector Softmax(const Vector& p) {
  const double m = p.maxCoeff();
  Vector e = (p.array() - m).exp();
  return e / e.sum();
}

MixedProfile DualToPrimal(const DualPoint& p) {
  MixedProfile x;
  x.blocks.reserve(p.blocks.size());
  for (const Vector& b : p.blocks) x.blocks.push_back(Softmax(b));
  return x;
}

DualPoint PrimalToDual(const MixedProfile& x) {
  DualPoint p;
  for (const Vector& b : x.blocks) {
    if ((b.array() <= 0.0).any()) {
      throw InvalidArgument("mixed profile: log requires strictly positive "
                            "probabilities");
    }
    p.blocks.push_back(b.array().log().matrix());
  }
  return p;
}

double ExpectedPayoff(const NormalFormGame& game, const MixedProfile& x,
                      std::span<const FocalStrategy> focal) {
  const int n = game.num_players();
  const auto& counts = game.strategy_counts();
  if (focal.empty()) throw InvalidArgument("focal: at least one player");
  std::vector<int> pinned(n, -1);
  for (const FocalStrategy& f : focal) {
    if (f.player < 0 || f.player >= n) {
      throw InvalidArgument("focal player " + std::to_string(f.player) +
                            ": out of range");
    }
    if (f.strategy < 0 || f.strategy >= counts[f.player]) {
      throw InvalidArgument("focal strategy " + std::to_string(f.strategy) +
                            " of player " + std::to_string(f.player) +
                            ": out of range");
    }
    if (pinned[f.player] != -1) {
      throw InvalidArgument("focal player " + std::to_string(f.player) +
                            ": listed twice");
    }
    pinned[f.player] = f.strategy;
  }

  std::vector<int> free_players;
  std::vector<int> free_counts;
  for (int i = 0; i < n; ++i) {
    if (pinned[i] == -1) {
      free_players.push_back(i);
      free_counts.push_back(counts[i]);
    }
  }
  const Tensor& u = game.payoffs(focal.front().player);
  std::vector<int> profile(pinned.begin(), pinned.end());
  std::vector<int> residual(free_players.size(), 0);
  double total = 0.0;
  do {
    double weight = 1.0;
    for (std::size_t r = 0; r < free_players.size(); ++r) {
      profile[free_players[r]] = residual[r];
      weight *= x.blocks[free_players[r]][residual[r]];
    }
    total += weight * u.at(profile);
  } while (NextProfile(free_counts, residual));
  return total;
}

Vector PlayerPayoffs(const NormalFormGame& game, const MixedProfile& x,
                     int player) {
  const auto& counts = game.strategy_counts();
  const int n = game.num_players();
  const Tensor& u = game.payoffs(player);
  Vector out = Vector::Zero(counts[player]);
  std::vector<int> profile(n, 0);
  std::int64_t flat = 0;
  do {
    double weight = 1.0;
    for (int r = 0; r < n; ++r) {
      if (r != player) weight *= x.blocks[r][profile[r]];
    }
    out[profile[player]] += weight * u.values()[flat];
    ++flat;
  } while (NextProfile(counts, profile));
  return out;
}

Matrix PairPayoffs(const NormalFormGame& game, const MixedProfile& x, int i,
                   int k) {
  const auto& counts = game.strategy_counts();
  const int n = game.num_players();
  if (i == k || i < 0 || k < 0 || i >= n || k >= n) {
    throw InvalidArgument("pair payoffs: need two distinct players");
  }
  const Tensor& u = game.payoffs(i);
  Matrix out = Matrix::Zero(counts[i], counts[k]);
  std::vector<int> profile(n, 0);
  std::int64_t flat = 0;
  do {
    double weight = 1.0;
    for (int r = 0; r < n; ++r) {
      if (r != i && r != k) weight *= x.blocks[r][profile[r]];
    }
    out(profile[i], profile[k]) += weight * u.values()[flat];
    ++flat;
  } while (NextProfile(counts, profile));
  return out;
}

NormalFormGame GraphicalToNormalForm(const GraphicalGame& game,
                                     std::int64_t budget) {
  const auto& counts = game.strategy_counts();
  const int n = game.num_players();
  const std::int64_t profiles = ProfileCount(counts);
  if (profiles > budget) {
    throw BudgetExceeded("graphical game: profile space of " +
                         std::to_string(profiles) + " exceeds budget " +
                         std::to_string(budget));
  }
  std::vector<Tensor> payoffs(n, Tensor(counts));
  std::vector<int> profile(n, 0);
  std::int64_t flat = 0;
  do {
    for (int i = 0; i < n; ++i) {
      double total = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k != i) total += game.Edge(i, k)(profile[i], profile[k]);
      }
      payoffs[i].mutable_values()[flat] = total;
    }
    ++flat;
  } while (NextProfile(counts, profile));
  return NormalFormGame(counts, std::move(payoffs));
}

bool InRegion(const DualPoint& p, const RegionSpec& region) {
  for (const Vector& b : p.blocks) {
    if ((Softmax(b).array() < region.delta).any()) return false;
  }
  return true;
}

// ------------------------------------------------------- Game variant

std::vector<int> StrategyCounts(const Game& game) {
  return std::visit(
      [](const auto& g) -> std::vector<int> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BimatrixGame>) {
          return {g.rows(), g.cols()};
        } else {
          return g.strategy_counts();
        }
      },
      game);
}

double MaxAbsPayoff(const Game& game) {
  return std::visit([](const auto& g) { return g.MaxAbsPayoff(); }, game);
}

void CheckShape(const Game& game, const DualPoint& p) {
  CheckShape(StrategyCounts(game), p);
}

void CheckShape(std::span<const int> counts, const DualPoint& p) {
  if (p.blocks.size() != counts.size()) {
    throw InvalidArgument("dual point: expected " +
                          std::to_string(counts.size()) + " players, got " +
                          std::to_string(p.blocks.size()));
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (p.blocks[i].size() != counts[i]) {
      throw InvalidArgument("dual point[" + std::to_string(i) +
                            "]: expected length " + std::to_string(counts[i]) +
                            ", got " + std::to_string(p.blocks[i].size()));
    }
    if (!p.blocks[i].allFinite()) {
      throw InvalidArgument("dual point[" + std::to_string(i) +
                            "]: non-finite entry");
    }
  }
}

std::vector<Vector> PayoffVectors(const Game& game, const MixedProfile& x) {
  if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    return {g->A() * x.blocks[1], g->B().transpose() * x.blocks[0]};
  }
  if (const auto* g = std::get_if<GraphicalGame>(&game)) {
    const int n = g->num_players();
    std::vector<Vector> out;
    for (int i = 0; i < n; ++i) {
      Vector u = Vector::Zero(g->strategy_counts()[i]);
      for (int k = 0; k < n; ++k) {
        if (k != i) u.noalias() += g->Edge(i, k) * x.blocks[k];
      }
      out.push_back(std::move(u));
    }
    return out;
  }
  const auto& g = std::get<NormalFormGame>(game);
  std::vector<Vector> out;
  for (int i = 0; i < g.num_players(); ++i) {
    out.push_back(PlayerPayoffs(g, x, i));
  }
  return out;
}

Matrix PairPayoffs(const Game& game, const MixedProfile& x, int i, int k) {
  if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    if (i == 0 && k == 1) return g->A();
    if (i == 1 && k == 0) return g->B().transpose();
    throw InvalidArgument("pair payoffs: bimatrix players are 0 and 1");
  }
  if (const auto* g = std::get_if<GraphicalGame>(&game)) {
    const Matrix& h = g->Edge(i, k);
    Vector cross = Vector::Zero(h.rows());
    for (int r = 0; r < g->num_players(); ++r) {
      if (r != i && r != k) cross.noalias() += g->Edge(i, r) * x.blocks[r];
    }
    return h.colwise() + cross;
  }
  return PairPayoffs(std::get<NormalFormGame>(game), x, i, k);
}

NormalFormGame ToNormalForm(const Game& game, std::int64_t budget) {
  if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    return g->ToNormalForm();
  }
  if (const auto* g = std::get_if<GraphicalGame>(&game)) {
    return GraphicalToNormalForm(*g, budget);
  }
  return std::get<NormalFormGame>(game);
}

}  // namespace chaoscope
