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

#include "chaoscope/volume.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "chaoscope/errors.h"
#include "chaoscope/parallel.h"

namespace chaoscope {
namespace {

// Below this many columns the thread start-up costs more than it saves.
constexpr int kParallelJacobianMin = 16;

std::vector<int> Offsets(std::span<const int> counts) {
  std::vector<int> offsets;
  int total = 0;
  for (int n : counts) {
    offsets.push_back(total);
    total += n;
  }
  return offsets;
}

UpdateRule VolumeRule(UpdateRule rule) {
  if (rule.algorithm == Algorithm::kOmwu) {
    rule.algorithm = Algorithm::kOmwuSurrogate;
  }
  return rule;
}

}  // namespace

Matrix NumericalJacobian(const DualMap& map, const Vector& p, double fd_step,
                         FdStencil stencil) {
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step: must be positive");
  const int d = map.dimension();
  if (p.size() != d) throw InvalidArgument("point: dimension mismatch");
  Matrix jac(d, d);
  auto columns = [&](std::int64_t begin, std::int64_t end) {
    DualMapWorkspace ws;
    Vector probe = p;
    Vector plus;
    Vector minus;
    Vector plus2;
    Vector minus2;
    for (std::int64_t b = begin; b < end; ++b) {
      probe[b] = p[b] + fd_step;
      map.Displacement(probe, plus, ws);
      probe[b] = p[b] - fd_step;
      map.Displacement(probe, minus, ws);
      if (stencil == FdStencil::kSecondOrder) {
        jac.col(b) = (plus - minus) / (2.0 * fd_step);
      } else {
        probe[b] = p[b] + 2.0 * fd_step;
        map.Displacement(probe, plus2, ws);
        probe[b] = p[b] - 2.0 * fd_step;
        map.Displacement(probe, minus2, ws);
        jac.col(b) =
            (8.0 * (plus - minus) - (plus2 - minus2)) / (12.0 * fd_step);
      }
      probe[b] = p[b];
    }
  };
  if (d >= kParallelJacobianMin) {
    ParallelFor(d, [&](int, std::int64_t b, std::int64_t e) { columns(b, e); });
  } else {
    columns(0, d);
  }
  return jac;
}

Matrix AnalyticMwuJacobian(const Game& game, const DualPoint& p) {
  CheckShape(game, p);
  const std::vector<int> counts = StrategyCounts(game);
  const std::vector<int> offsets = Offsets(counts);
  const MixedProfile x = DualToPrimal(p);
  const int n = static_cast<int>(counts.size());
  const int d = offsets.back() + counts.back();
  Matrix jac = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const Matrix u_ik = PairPayoffs(game, x, i, k);
      const Vector ui = u_ik * x.blocks[k];
      jac.block(offsets[i], offsets[k], counts[i], counts[k]) =
          (u_ik.colwise() - ui) * x.blocks[k].asDiagonal();
    }
  }
  return jac;
}

Matrix AnalyticSurrogateDiagonalBlock(const Game& game, const DualPoint& p,
                                      int player, double epsilon) {
  CheckShape(game, p);
  const std::vector<int> counts = StrategyCounts(game);
  const int n = static_cast<int>(counts.size());
  if (player < 0 || player >= n) throw InvalidArgument("player: out of range");
  const MixedProfile x = DualToPrimal(p);
  const int i = player;
  Matrix block = Matrix::Zero(counts[i], counts[i]);
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    const Matrix u_ik = PairPayoffs(game, x, i, k);  // n_i x n_k
    const Matrix u_ki = PairPayoffs(game, x, k, i);  // n_k x n_i
    const Vector ui = u_ik * x.blocks[k];
    const Vector uk = u_ki * x.blocks[i];
    // left(j, l) = x_kl (U^{ik}_{jl} - U^i_j); right(l, j2) likewise.
    const Matrix left = (u_ik.colwise() - ui) * x.blocks[k].asDiagonal();
    const Matrix right = (u_ki.colwise() - uk) * x.blocks[i].asDiagonal();
    block += left * right;
  }
  return epsilon * block;
}

double VolumeIntegrand(const Matrix& jacobian, double epsilon) {
  const Eigen::Index d = jacobian.rows();
  if (d == 0) return 1.0;
  const Matrix m = Matrix::Identity(d, d) + epsilon * jacobian;
  return m.partialPivLu().determinant();
}

double VolumeIntegrand(const DualMap& map, const Vector& p, double fd_step) {
  return VolumeIntegrand(NumericalJacobian(map, p, fd_step),
                         map.rule().epsilon);
}

CCoefficientEstimate ExtractCCoefficient(const Game& game,
                                         const UpdateRule& rule,
                                         const DualPoint& p,
                                         const std::vector<double>& eps_ladder,
                                         double fd_step, FdStencil stencil) {
  if (eps_ladder.size() < 3) {
    throw InvalidArgument("eps_ladder: needs at least three values");
  }
  for (std::size_t r = 0; r < eps_ladder.size(); ++r) {
    if (!(eps_ladder[r] > 0.0) ||
        (r > 0 && !(eps_ladder[r] < eps_ladder[r - 1]))) {
      throw InvalidArgument(
          "eps_ladder: values must be positive and strictly decreasing");
    }
  }
  CheckShape(game, p);
  const Vector flat = p.Flatten();
  CCoefficientEstimate est;
  est.epsilons = eps_ladder;
  std::vector<double> dets;
  for (double eps : eps_ladder) {
    UpdateRule r = VolumeRule(rule);
    r.epsilon = eps;
    const DualMap map(game, r);
    const double det =
        VolumeIntegrand(NumericalJacobian(map, flat, fd_step, stencil), eps);
    dets.push_back(det);
    est.quotients.push_back((det - 1.0) / (eps * eps));
  }

  // Neville's scheme evaluated at eps = 0.
  std::vector<double> table = est.quotients;
  const std::size_t n = table.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t r = 0; r + level < n; ++r) {
      const double a = eps_ladder[r];
      const double b = eps_ladder[r + level];
      table[r] = (a * table[r + 1] - b * table[r]) / (a - b);
    }
  }
  est.value = table[0];

  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t r = 0; r < n; ++r) {
    const double eps = eps_ladder[r];
    est.residuals.push_back(std::abs(dets[r] - 1.0 - est.value * eps * eps));
  }
  for (std::size_t r = 0; r + 1 < n; ++r) {
    if (est.residuals[r + 1] <= floor && est.residuals[r] <= floor) continue;
    const double shrink = eps_ladder[r] / eps_ladder[r + 1];
    const double ratio = est.residuals[r] / est.residuals[r + 1];
    // Between quadratic and quartic decay, with 10% slack for the next term.
    if (!(ratio >= shrink * shrink / 1.1 &&
          ratio <= 1.1 * std::pow(shrink, 4))) {
      est.converged = false;
    }
  }
  return est;
}

std::vector<double> DefaultEpsLadder() {
  return {0.04, 0.02, 0.01, 0.005, 0.0025};
}

VolumeLedger AccumulateLogVolume(const Game& game, const DualPoint& p0,
                                 const UpdateRule& rule, int steps,
                                 std::optional<RegionSpec> region,
                                 int start_t, double initial_cumulative,
                                 double fd_step) {
  if (steps < 0) throw InvalidArgument("steps: must be >= 0");
  CheckShape(game, p0);
  const DualMap map(game, rule);
  const DualMap volume_map(game, VolumeRule(rule));
  if (region) region->Validate(map.strategy_counts());
  VolumeLedger ledger;
  ledger.entries.reserve(static_cast<std::size_t>(steps) + 1);
  double cumulative = initial_cumulative;
  IterateFlat(map, p0.Flatten(), steps, [&](int t, const Vector& p) {
    const double det = VolumeIntegrand(volume_map, p, fd_step);
    if (!(det > 0.0)) {
      throw Error("volume integrand is not positive at step " +
                  std::to_string(start_t + t) + "; epsilon is too large");
    }
    VolumeLedgerEntry entry;
    entry.t = start_t + t;
    entry.log_det = std::log(det);
    entry.cumulative = cumulative;
    entry.region_valid = !region || map.InRegion(p, region->delta);
    if (!entry.region_valid && !ledger.exit_time) ledger.exit_time = entry.t;
    ledger.entries.push_back(entry);
    cumulative += entry.log_det;
    return true;
  });
  return ledger;
}

DivergenceReport EnsembleDivergence(const Game& game, const DualPoint& p0,
                                    const UpdateRule& rule, int steps,
                                    const RegionSpec& region,
                                    double ball_radius, int ensemble_size,
                                    std::uint64_t seed, double cbar) {
  if (!(ball_radius > 0.0)) throw InvalidArgument("ball_radius: must be > 0");
  if (ensemble_size < 2) throw InvalidArgument("ensemble_size: must be >= 2");
  if (steps < 1) throw InvalidArgument("steps: must be >= 1");
  CheckShape(game, p0);
  const DualMap map(game, rule);
  region.Validate(map.strategy_counts());
  const int d = map.dimension();
  const std::size_t horizon = static_cast<std::size_t>(steps) + 1;

  // Reference trajectory, stored flat.
  Matrix reference(d, static_cast<Eigen::Index>(horizon));
  std::optional<int> first_exit;
  IterateFlat(map, p0.Flatten(), steps, [&](int t, const Vector& p) {
    reference.col(t) = p;
    if (!first_exit && !map.InRegion(p, region.delta)) first_exit = t;
    return true;
  });

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> starts;
  for (int m = 0; m < ensemble_size; ++m) {
    Vector dir(d);
    for (int a = 0; a < d; ++a) dir[a] = normal(rng);
    starts.push_back(reference.col(0) + ball_radius * dir.normalized());
  }
  for (const Vector& s : starts) {
    if (!map.InRegion(s, region.delta) || first_exit == 0) {
      throw InvalidArgument(
          "ball_radius: the initial ball is not inside the region");
    }
  }

  const int workers = WorkerCount();
  std::vector<std::vector<double>> local_sup(
      workers, std::vector<double>(horizon, 0.0));
  std::vector<int> member_exit(ensemble_size, -1);
  ParallelFor(ensemble_size, [&](int w, std::int64_t begin, std::int64_t end) {
    std::vector<double>& sup = local_sup[w];
    for (std::int64_t m = begin; m < end; ++m) {
      IterateFlat(map, starts[m], steps, [&](int t, const Vector& p) {
        sup[t] = std::max(sup[t], (p - reference.col(t)).norm());
        if (member_exit[m] < 0 && !map.InRegion(p, region.delta)) {
          member_exit[m] = t;
        }
        return true;
      });
    }
  });

  DivergenceReport report;
  report.sup_distance.assign(horizon, 0.0);
  for (const auto& sup : local_sup) {
    for (std::size_t t = 0; t < horizon; ++t) {
      report.sup_distance[t] = std::max(report.sup_distance[t], sup[t]);
    }
  }
  for (int e : member_exit) {
    if (e >= 0 && (!first_exit || e < *first_exit)) first_exit = e;
  }
  report.first_exit = first_exit;
  report.window_end = first_exit ? *first_exit : static_cast<int>(horizon);
  report.window_begin = report.window_end / 10;

  // Ordinary least squares of log sup_distance on t.
  const int count = report.window_end - report.window_begin;
  if (count >= 2) {
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (int t = report.window_begin; t < report.window_end; ++t) {
      mean_t += t;
      mean_y += std::log(report.sup_distance[t]);
    }
    mean_t /= count;
    mean_y /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (int t = report.window_begin; t < report.window_end; ++t) {
      const double dt = t - mean_t;
      sxy += dt * (std::log(report.sup_distance[t]) - mean_y);
      sxx += dt * dt;
    }
    report.fitted_gamma = sxy / sxx;
    const double intercept = mean_y - report.fitted_gamma * mean_t;
    report.lambda_intercept = std::exp(intercept) / ball_radius;
  }
  report.predicted_gamma =
      cbar * rule.epsilon * rule.epsilon / (2.0 * static_cast<double>(d));
  return report;
}

}  // namespace chaoscope
