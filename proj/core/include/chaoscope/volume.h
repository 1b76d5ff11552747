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

#ifndef CHAOSCOPE_VOLUME_H_
#define CHAOSCOPE_VOLUME_H_

// Empirical side of the volume theory: Jacobians of one-step maps, the
// integrand det(I + eps J), its eps^2 coefficient, log-volume along a
// trajectory and divergence of a perturbed ensemble.

#include <cstdint>
#include <optional>
#include <vector>

#include "chaoscope/dynamics.h"
#include "chaoscope/game.h"

namespace chaoscope {

inline constexpr double kDefaultFdStep = 1e-5;

// Step for the fourth-order stencil used when extrapolating in eps, where
// (det - 1) / eps^2 magnifies any Jacobian error by 1 / eps.
inline constexpr double kExtrapolationFdStep = 1e-3;

enum class FdStencil {
  kSecondOrder,  // (F(p + h) - F(p - h)) / 2h
  kFourthOrder,  // five-point central stencil
};

// dF/dp by central differences, where map(p) = p + eps F(p).
Matrix NumericalJacobian(const DualMap& map, const Vector& p,
                         double fd_step = kDefaultFdStep,
                         FdStencil stencil = FdStencil::kSecondOrder);

// Closed-form MWU Jacobian: J_{(i,j),(k,l)} = x_kl (U^{ik}_{jl} - U^i_j) for
// k != i, and zero diagonal blocks.
Matrix AnalyticMwuJacobian(const Game& game, const DualPoint& p);

// Diagonal block (i, i) of the OMWU surrogate displacement Jacobian:
// eps sum_{k != i, l} x_kl (U^{ik}_{jl} - U^i_j) x_ij2 (U^{ki}_{l j2} - U^k_l).
Matrix AnalyticSurrogateDiagonalBlock(const Game& game, const DualPoint& p,
                                      int player, double epsilon);

// det(I + eps J) by LU with partial pivoting.
double VolumeIntegrand(const Matrix& jacobian, double epsilon);
double VolumeIntegrand(const DualMap& map, const Vector& p,
                       double fd_step = kDefaultFdStep);

struct CCoefficientEstimate {
  double value = 0.0;             // extrapolated eps -> 0 limit
  std::vector<double> epsilons;   // the ladder
  std::vector<double> quotients;  // (det - 1) / eps^2 per rung
  std::vector<double> residuals;  // |det - 1 - value eps^2| per rung
  bool converged = true;          // residual decay between eps^2 and eps^4
};

// Polynomial (Neville) extrapolation of (det(I + eps J_eps) - 1) / eps^2 to
// eps = 0. The rule's epsilon is replaced by each rung of the ladder, which
// must hold at least three strictly decreasing positive values.
CCoefficientEstimate ExtractCCoefficient(
    const Game& game, const UpdateRule& rule, const DualPoint& p,
    const std::vector<double>& eps_ladder,
    double fd_step = kExtrapolationFdStep,
    FdStencil stencil = FdStencil::kFourthOrder);

// Halving ladder 0.04 ... 0.0025.
std::vector<double> DefaultEpsLadder();

struct VolumeLedgerEntry {
  int t = 0;
  double log_det = 0.0;
  double cumulative = 0.0;  // sum of log_det over steps before t
  bool region_valid = true;
};

struct VolumeLedger {
  std::vector<VolumeLedgerEntry> entries;
  std::optional<int> exit_time;
};

// Runs the trajectory and records log det(I + eps J(p^t)) at every step.
// Two-step OMWU is measured on the surrogate one-step map. `start_t` and
// `initial_cumulative` resume a ledger from a saved point so that segments
// concatenate bitwise.
VolumeLedger AccumulateLogVolume(const Game& game, const DualPoint& p0,
                                 const UpdateRule& rule, int steps,
                                 std::optional<RegionSpec> region,
                                 int start_t = 0,
                                 double initial_cumulative = 0.0,
                                 double fd_step = kDefaultFdStep);

struct DivergenceReport {
  std::vector<double> sup_distance;  // per step, over the ensemble
  int window_begin = 0;              // fit uses [window_begin, window_end)
  int window_end = 0;                // first exit of any trajectory
  std::optional<int> first_exit;
  double fitted_gamma = 0.0;
  double lambda_intercept = 0.0;  // exp(intercept) / ball_radius
  double predicted_gamma = 0.0;   // cbar eps^2 / (2 d)
};

// Reference trajectory from p0 plus ensemble_size members started on the
// sphere of radius ball_radius around it (seeded). The growth rate is an
// ordinary least-squares fit of log sup_distance over the in-region window,
// with the first 10% dropped. `cbar` feeds predicted_gamma.
DivergenceReport EnsembleDivergence(const Game& game, const DualPoint& p0,
                                    const UpdateRule& rule, int steps,
                                    const RegionSpec& region,
                                    double ball_radius, int ensemble_size,
                                    std::uint64_t seed, double cbar);

}  // namespace chaoscope

#endif  // CHAOSCOPE_VOLUME_H_
