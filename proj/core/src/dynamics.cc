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

#include "chaoscope/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "chaoscope/c_function.h"
#include "chaoscope/errors.h"
#include "chaoscope/parallel.h"

namespace chaoscope {

void UpdateRule::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon: must be a positive finite number");
  }
  const bool is_ftrl = algorithm == Algorithm::kFtrl;
  if (is_ftrl && regularizer == Regularizer::kNone) {
    throw InvalidArgument("regularizer: required for FTRL");
  }
  if (!is_ftrl && regularizer != Regularizer::kNone) {
    throw InvalidArgument("regularizer: only meaningful for FTRL");
  }
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "mwu") return Algorithm::kMwu;
  if (name == "omwu") return Algorithm::kOmwu;
  if (name == "omwu_surrogate" || name == "omwu-surrogate") {
    return Algorithm::kOmwuSurrogate;
  }
  if (name == "ftrl") return Algorithm::kFtrl;
  throw InvalidArgument("rule: unknown algorithm '" + std::string(name) + "'");
}

Regularizer ParseRegularizer(std::string_view name) {
  if (name == "entropic") return Regularizer::kEntropic;
  if (name == "squared_euclidean" || name == "euclidean") {
    return Regularizer::kSquaredEuclidean;
  }
  throw InvalidArgument("regularizer: unknown value '" + std::string(name) +
                        "'");
}

const char* AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMwu:
      return "MWU";
    case Algorithm::kOmwu:
      return "OMWU";
    case Algorithm::kOmwuSurrogate:
      return "OMWU_SURROGATE";
    case Algorithm::kFtrl:
      return "FTRL";
  }
  return "?";
}

Vector SimplexProjection(const Vector& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending by value, ties by index.
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v[a] > v[b]; });
  double prefix = 0.0;
  double shift = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    prefix += v[order[r]];
    const double candidate = (prefix - 1.0) / static_cast<double>(r + 1);
    if (v[order[r]] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0).matrix();
}

void CheckOverflow(const Vector& p, int t) {
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    if (!std::isfinite(p[a]) || std::abs(p[a]) > kOverflowGuard) {
      throw OverflowAbort("trajectory: dual coordinate " + std::to_string(a) +
                              " overflowed at step " + std::to_string(t),
                          t - 1);
    }
  }
}

// ---------------------------------------------------------------- DualMap

DualMap::DualMap(Game game, UpdateRule rule)
    : game_(std::move(game)), rule_(rule), counts_(StrategyCounts(game_)) {
  rule_.Validate();
  offsets_.reserve(counts_.size());
  for (int n : counts_) {
    offsets_.push_back(dimension_);
    dimension_ += n;
  }
}

void DualMap::Primal(const Vector& p, Vector& x) const {
  x.resize(dimension_);
  const bool euclidean = rule_.algorithm == Algorithm::kFtrl &&
                         rule_.regularizer == Regularizer::kSquaredEuclidean;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto block = p.segment(offsets_[i], counts_[i]);
    auto out = x.segment(offsets_[i], counts_[i]);
    if (euclidean) {
      out = SimplexProjection(block);
    } else {
      const double top = block.maxCoeff();
      out = (block.array() - top).exp().matrix();
      out /= out.sum();
    }
  }
}

void DualMap::Payoffs(const Vector& x, Vector& u) const {
  u.resize(dimension_);
  if (const auto* g = std::get_if<BimatrixGame>(&game_)) {
    const int n = counts_[0];
    const int m = counts_[1];
    u.head(n).noalias() = g->A() * x.tail(m);
    u.tail(m).noalias() = g->B().transpose() * x.head(n);
    return;
  }
  if (const auto* g = std::get_if<GraphicalGame>(&game_)) {
    const int players = g->num_players();
    for (int i = 0; i < players; ++i) {
      auto ui = u.segment(offsets_[i], counts_[i]);
      ui.setZero();
      for (int k = 0; k < players; ++k) {
        if (k != i) {
          ui.noalias() += g->Edge(i, k) * x.segment(offsets_[k], counts_[k]);
        }
      }
    }
    return;
  }
  const MixedProfile mixed{DualPoint::Unflatten(x, counts_).blocks};
  const std::vector<Vector> blocks = PayoffVectors(game_, mixed);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    u.segment(offsets_[i], counts_[i]) = blocks[i];
  }
}

// sum_{k != i, l} x_kl (U^{ik}_{jl} - U^i_j) U^k_l for every (i, j).
void DualMap::SurrogateCorrection(const Vector& x, const Vector& u,
                                  Vector& out) const {
  out = Vector::Zero(dimension_);
  const MixedProfile mixed{DualPoint::Unflatten(x, counts_).blocks};
  const int players = static_cast<int>(counts_.size());
  for (int i = 0; i < players; ++i) {
    auto oi = out.segment(offsets_[i], counts_[i]);
    const auto ui = u.segment(offsets_[i], counts_[i]);
    for (int k = 0; k < players; ++k) {
      if (k == i) continue;
      const auto xk = x.segment(offsets_[k], counts_[k]);
      const auto uk = u.segment(offsets_[k], counts_[k]);
      const Vector weighted = xk.cwiseProduct(uk);
      const Matrix u_ik = PairPayoffs(game_, mixed, i, k);
      oi.noalias() += u_ik * weighted;
      oi -= weighted.sum() * ui;
    }
  }
}

void DualMap::Displacement(const Vector& p, Vector& out,
                           DualMapWorkspace& ws) const {
  if (rule_.algorithm == Algorithm::kOmwu) {
    throw InvalidArgument(
        "rule: two-step OMWU is not a one-step map; use omwu_surrogate");
  }
  Primal(p, ws.x);
  Payoffs(ws.x, ws.u);
  if (rule_.algorithm == Algorithm::kOmwuSurrogate) {
    SurrogateCorrection(ws.x, ws.u, out);
    out = ws.u + rule_.epsilon * out;
  } else {
    out = ws.u;
  }
}

Vector DualMap::Displacement(const Vector& p) const {
  DualMapWorkspace ws;
  Vector out;
  Displacement(p, out, ws);
  return out;
}

void DualMap::Step(const Vector& p, const Vector& prev, Vector& out,
                   DualMapWorkspace& ws) const {
  const double eps = rule_.epsilon;
  switch (rule_.algorithm) {
    case Algorithm::kMwu:
    case Algorithm::kFtrl:
      Primal(p, ws.x);
      Payoffs(ws.x, ws.u);
      out = p + eps * ws.u;
      return;
    case Algorithm::kOmwu:
      Primal(p, ws.x);
      Payoffs(ws.x, ws.u);
      Primal(prev, ws.x_prev);
      Payoffs(ws.x_prev, ws.u_prev);
      out = p + eps * (2.0 * ws.u - ws.u_prev);
      return;
    case Algorithm::kOmwuSurrogate:
      Primal(p, ws.x);
      Payoffs(ws.x, ws.u);
      SurrogateCorrection(ws.x, ws.u, out);
      out = p + eps * ws.u + (eps * eps) * out;
      return;
  }
}

bool DualMap::InRegion(const Vector& p, double delta) const {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto block = p.segment(offsets_[i], counts_[i]);
    const double top = block.maxCoeff();
    const Vector e = (block.array() - top).exp().matrix();
    const double total = e.sum();
    if (((e / total).array() < delta).any()) return false;
  }
  return true;
}

// ------------------------------------------------------ DualPoint wrappers

namespace {

DualPoint StepWith(const Game& game, const DualPoint& p, const DualPoint& prev,
                   const UpdateRule& rule, Algorithm expected) {
  if (rule.algorithm != expected) {
    throw InvalidArgument(std::string("rule: expected algorithm ") +
                          AlgorithmName(expected));
  }
  CheckShape(game, p);
  const DualMap map(game, rule);
  DualMapWorkspace ws;
  Vector out;
  map.Step(p.Flatten(), prev.Flatten(), out, ws);
  return DualPoint::Unflatten(out, map.strategy_counts());
}

}  // namespace

DualPoint MwuStep(const Game& game, const DualPoint& p,
                  const UpdateRule& rule) {
  return StepWith(game, p, p, rule, Algorithm::kMwu);
}

DualPoint OmwuStep(const Game& game, const DualPoint& p_curr,
                   const DualPoint& p_prev, const UpdateRule& rule) {
  CheckShape(game, p_prev);
  return StepWith(game, p_curr, p_prev, rule, Algorithm::kOmwu);
}

DualPoint OmwuSurrogateStep(const Game& game, const DualPoint& p,
                            const UpdateRule& rule) {
  return StepWith(game, p, p, rule, Algorithm::kOmwuSurrogate);
}

DualPoint FtrlStep(const Game& game, const DualPoint& p,
                   const UpdateRule& rule) {
  return StepWith(game, p, p, rule, Algorithm::kFtrl);
}

TrajectoryRecord RunTrajectory(const Game& game, const DualPoint& p0,
                               const UpdateRule& rule, int steps,
                               std::optional<RegionSpec> region) {
  if (steps < 0) throw InvalidArgument("steps: must be >= 0");
  CheckShape(game, p0);
  const DualMap map(game, rule);
  if (region) region->Validate(map.strategy_counts());
  TrajectoryRecord record;
  record.points.reserve(static_cast<std::size_t>(steps) + 1);
  IterateFlat(map, p0.Flatten(), steps, [&](int t, const Vector& p) {
    record.points.push_back(DualPoint::Unflatten(p, map.strategy_counts()));
    if (region && !record.exit_time && !map.InRegion(p, region->delta)) {
      record.exit_time = t;
    }
    return true;
  });
  return record;
}

EscapeReport EquilibriumEscapeProbe(const Game& game,
                                    const MixedProfile& x_star,
                                    const RegionSpec& region,
                                    const UpdateRule& rule, int steps,
                                    int num_probes, double probe_radius,
                                    std::uint64_t seed) {
  if (rule.algorithm != Algorithm::kMwu) {
    throw InvalidArgument("rule: the escape probe runs MWU");
  }
  if (num_probes < 1) throw InvalidArgument("num_probes: must be >= 1");
  if (!(probe_radius > 0.0)) {
    throw InvalidArgument("probe_radius: must be positive");
  }
  if (steps < 0) throw InvalidArgument("steps: must be >= 0");
  for (const Vector& b : x_star.blocks) {
    if ((b.array() <= 0.0).any()) {
      throw InvalidArgument("x_star: must be interior (all entries > 0)");
    }
  }
  const DualPoint center = PrimalToDual(x_star);
  CheckShape(game, center);
  region.Validate(StrategyCounts(game));

  EscapeReport report;
  report.c_value = CValue(game, center);
  report.applicable = report.c_value > 0.0;
  if (!report.applicable) return report;

  const DualMap map(game, rule);
  const Vector p_star = center.Flatten();
  Vector x_ref;
  map.Primal(p_star, x_ref);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> starts;
  for (int r = 0; r < num_probes; ++r) {
    Vector dir(map.dimension());
    for (Eigen::Index a = 0; a < dir.size(); ++a) dir[a] = normal(rng);
    starts.push_back(p_star + probe_radius * dir.normalized());
  }

  report.probes.resize(num_probes);
  ParallelFor(num_probes, [&](int, std::int64_t begin, std::int64_t end) {
    Vector x;
    for (std::int64_t r = begin; r < end; ++r) {
      ProbeOutcome& outcome = report.probes[r];
      IterateFlat(map, starts[r], steps, [&](int t, const Vector& p) {
        map.Primal(p, x);
        outcome.max_primal_distance =
            std::max(outcome.max_primal_distance, (x - x_ref).norm());
        if (!map.InRegion(p, region.delta)) {
          outcome.exit_time = t;
          return false;
        }
        return true;
      });
    }
  });
  return report;
}

}  // namespace chaoscope
