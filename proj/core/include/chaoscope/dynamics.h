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

#ifndef CHAOSCOPE_DYNAMICS_H_
#define CHAOSCOPE_DYNAMICS_H_

// Learning dynamics in the dual (cumulative payoff) space. All players update
// simultaneously.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chaoscope/game.h"

namespace chaoscope {

enum class Algorithm { kMwu, kOmwu, kOmwuSurrogate, kFtrl };
enum class Regularizer { kNone, kEntropic, kSquaredEuclidean };

// Dual coordinates above this magnitude abort a trajectory.
inline constexpr double kOverflowGuard = 1e300;

struct UpdateRule {
  Algorithm algorithm = Algorithm::kMwu;
  double epsilon = 0.01;
  Regularizer regularizer = Regularizer::kNone;  // FTRL only

  // Throws InvalidArgument unless epsilon > 0 and the regularizer is set
  // exactly when the algorithm is FTRL.
  void Validate() const;
};

Algorithm ParseAlgorithm(std::string_view name);
Regularizer ParseRegularizer(std::string_view name);
const char* AlgorithmName(Algorithm algorithm);

// Euclidean projection onto the probability simplex (sort and threshold).
Vector SimplexProjection(const Vector& v);

// Scratch buffers for DualMap; one per thread.
struct DualMapWorkspace {
  Vector x;
  Vector u;
  Vector x_prev;
  Vector u_prev;
};

// A game plus an update rule acting on flattened dual points.
class DualMap {
 public:
  DualMap(Game game, UpdateRule rule);

  const Game& game() const { return game_; }
  const UpdateRule& rule() const { return rule_; }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int dimension() const { return dimension_; }

  // Primal image used by the rule: softmax for MWU/OMWU and entropic FTRL,
  // simplex projection for squared-Euclidean FTRL.
  void Primal(const Vector& p, Vector& x) const;
  // Flattened U^i_j(x) for every player.
  void Payoffs(const Vector& x, Vector& u) const;

  // F with step(p) = p + eps F(p). Undefined for two-step OMWU, which throws.
  void Displacement(const Vector& p, Vector& out,
                    DualMapWorkspace& ws) const;
  Vector Displacement(const Vector& p) const;

  // One update. `prev` is read only by two-step OMWU.
  void Step(const Vector& p, const Vector& prev, Vector& out,
            DualMapWorkspace& ws) const;

  // Every softmax probability is at least delta.
  bool InRegion(const Vector& p, double delta) const;

 private:
  void SurrogateCorrection(const Vector& x, const Vector& u,
                           Vector& out) const;

  Game game_;
  UpdateRule rule_;
  std::vector<int> counts_;
  std::vector<int> offsets_;
  int dimension_ = 0;
};

DualPoint MwuStep(const Game& game, const DualPoint& p, const UpdateRule& rule);
DualPoint OmwuStep(const Game& game, const DualPoint& p_curr,
                   const DualPoint& p_prev, const UpdateRule& rule);
DualPoint OmwuSurrogateStep(const Game& game, const DualPoint& p,
                            const UpdateRule& rule);
DualPoint FtrlStep(const Game& game, const DualPoint& p,
                   const UpdateRule& rule);

struct TrajectoryRecord {
  std::vector<DualPoint> points;  // p^0 .. p^T
  std::optional<int> exit_time;   // first t with p^t outside the region
};

// Iterates the rule for `steps` updates. Two-step OMWU is seeded with
// p^1 = p^0. Recording continues after a region exit. Throws OverflowAbort
// when a coordinate becomes non-finite or exceeds kOverflowGuard.
TrajectoryRecord RunTrajectory(const Game& game, const DualPoint& p0,
                               const UpdateRule& rule, int steps,
                               std::optional<RegionSpec> region);

// Same iteration on flattened points, calling visit(t, p^t) for t = 0..steps
// without storing the trajectory. Stops early when visit returns false.
template <typename Visitor>
void IterateFlat(const DualMap& map, const Vector& p0, int steps,
                 Visitor&& visit);

struct ProbeOutcome {
  std::optional<int> exit_time;
  double max_primal_distance = 0.0;
};

struct EscapeReport {
  bool applicable = false;  // C(log x*) > 0
  double c_value = 0.0;
  std::vector<ProbeOutcome> probes;
};

// Starts num_probes MWU trajectories at dual distance probe_radius from
// log(x_star) in seeded random directions and records whether each leaves
// the region within `steps`.
EscapeReport EquilibriumEscapeProbe(const Game& game,
                                    const MixedProfile& x_star,
                                    const RegionSpec& region,
                                    const UpdateRule& rule, int steps,
                                    int num_probes, double probe_radius,
                                    std::uint64_t seed);

// --- implementation details ---

// Throws OverflowAbort naming step t when p is not finite or too large.
void CheckOverflow(const Vector& p, int t);

template <typename Visitor>
void IterateFlat(const DualMap& map, const Vector& p0, int steps,
                 Visitor&& visit) {
  DualMapWorkspace ws;
  Vector prev = p0;
  Vector curr = p0;
  Vector next(p0.size());
  CheckOverflow(curr, 0);
  if (!visit(0, static_cast<const Vector&>(curr))) return;
  const bool two_step = map.rule().algorithm == Algorithm::kOmwu;
  for (int t = 1; t <= steps; ++t) {
    if (two_step && t == 1) {
      next = curr;  // p^1 = p^0
    } else {
      map.Step(curr, prev, next, ws);
    }
    CheckOverflow(next, t);
    prev.swap(curr);
    curr.swap(next);
    if (!visit(t, static_cast<const Vector&>(curr))) return;
  }
}

}  // namespace chaoscope

#endif  // CHAOSCOPE_DYNAMICS_H_
