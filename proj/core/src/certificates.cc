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

#include "chaoscope/certificates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "chaoscope/c_function.h"
#include "chaoscope/decomposition.h"
#include "chaoscope/errors.h"
#include "chaoscope/parallel.h"

namespace chaoscope {
namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon: must be a positive finite number");
  }
}

void CheckCertAlgorithm(Algorithm algorithm) {
  if (algorithm != Algorithm::kMwu && algorithm != Algorithm::kOmwu) {
    throw InvalidArgument("algorithm: certificates cover mwu and omwu");
  }
}

int SumCounts(std::span<const int> counts) {
  int d = 0;
  for (int n : counts) d += n;
  return d;
}

ChaosCertificate MakeCertificate(CertificateKind kind, Algorithm algorithm,
                                 const RegionSpec& region, double epsilon,
                                 int dimension, double theta, double cbar) {
  ChaosCertificate cert;
  cert.kind = kind;
  cert.algorithm = algorithm;
  cert.region_delta = region.delta;
  cert.epsilon = epsilon;
  cert.dual_dimension = dimension;
  cert.theta = theta;
  cert.cbar_lower = cbar;
  cert.lyapunov_exponent = cbar * epsilon * epsilon / (2.0 * dimension);
  return cert;
}

// Lower bound on r(K) from the LP dual, never above the primal value.
double ChebyshevLowerBound(const Matrix& k) {
  const ChebyshevFit fit = ChebyshevTrivialFit(k);
  const double dual_value = (k.array() * fit.dual_weights.array()).sum();
  const double mass = fit.dual_weights.cwiseAbs().sum();
  double lower = mass > 1.0 ? dual_value / mass : dual_value;
  return std::clamp(lower, 0.0, fit.r);
}

double ChebyshevUpperBound(const Matrix& k) {
  return ChebyshevTrivialFit(k).r;
}

}  // namespace

DominationReport CheckDomination(const Matrix& k, const Matrix& l) {
  if (k.rows() != l.rows() || k.cols() != l.cols()) {
    throw InvalidArgument("domination: matrices must have the same shape");
  }
  DominationReport report;
  report.dominates = true;
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  Quadruple best_q = {0, 0, 0, 0};
  Quadruple worst_q = {0, 0, 0, 0};
  const int n = static_cast<int>(k.rows());
  const int m = static_cast<int>(k.cols());
  // |dK| is invariant under swapping j <-> j2 or k <-> k2, so ordered pairs
  // with j < j2 and k < k2 cover every quadruple.
  for (int j = 0; j < n; ++j) {
    for (int j2 = j + 1; j2 < n; ++j2) {
      for (int c = 0; c < m; ++c) {
        for (int c2 = c + 1; c2 < m; ++c2) {
          const double gap = std::abs(QuadrupleCombination(k, j, j2, c, c2)) -
                             std::abs(QuadrupleCombination(l, j, j2, c, c2));
          if (gap > best) {
            best = gap;
            best_q = {j, j2, c, c2};
          }
          if (gap < worst) {
            worst = gap;
            worst_q = {j, j2, c, c2};
          }
        }
      }
    }
  }
  if (best == -std::numeric_limits<double>::infinity()) {
    return report;  // fewer than two rows or columns: nothing to compare
  }
  report.dominates = worst >= 0.0;
  report.theta_margin = best;
  report.witness = report.dominates ? best_q : worst_q;
  return report;
}

const char* CertificateKindName(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kDomination:
      return "domination";
    case CertificateKind::kLp:
      return "lp";
    case CertificateKind::kGraphicalFamily:
      return "graphical_family";
    case CertificateKind::kPotentialNegativity:
      return "potential_negativity";
  }
  return "?";
}

std::optional<ChaosCertificate> CertifyDomination(const BimatrixGame& game,
                                                  const RegionSpec& region,
                                                  double epsilon,
                                                  Algorithm algorithm) {
  CheckEpsilon(epsilon);
  CheckCertAlgorithm(algorithm);
  const int counts[2] = {game.rows(), game.cols()};
  region.Validate(counts);
  const Decomposition dec = Decompose(game);
  const bool mwu = algorithm == Algorithm::kMwu;
  const DominationReport report =
      mwu ? CheckDomination(dec.zero_sum, dec.coordination)
          : CheckDomination(dec.coordination, dec.zero_sum);
  if (!report.dominates || !(report.theta_margin > 0.0)) return std::nullopt;
  const double theta = report.theta_margin;
  const double delta = region.delta;
  const int n_sum = game.rows() + game.cols();
  ChaosCertificate cert =
      MakeCertificate(CertificateKind::kDomination, algorithm, region,
                      epsilon, n_sum, theta, theta * theta * std::pow(delta, 4));
  cert.route = mwu ? "Z dominates C" : "C dominates Z";
  cert.theorem_exponent =
      theta * theta * delta * delta * epsilon * epsilon / (2.0 * n_sum);
  return cert;
}

std::optional<ChaosCertificate> CertifyLp(const BimatrixGame& game,
                                          const RegionSpec& region,
                                          double epsilon,
                                          Algorithm algorithm) {
  CheckEpsilon(epsilon);
  CheckCertAlgorithm(algorithm);
  const int counts[2] = {game.rows(), game.cols()};
  region.Validate(counts);
  const Decomposition dec = Decompose(game);
  const bool mwu = algorithm == Algorithm::kMwu;
  const Matrix& expanding = mwu ? dec.zero_sum : dec.coordination;
  const Matrix& opposing = mwu ? dec.coordination : dec.zero_sum;
  const double delta = region.delta;
  const double r_main = ChebyshevLowerBound(expanding);
  const double r_other = ChebyshevUpperBound(opposing);
  const double cbar = (r_main * delta) * (r_main * delta) - r_other * r_other;
  if (!(cbar > 0.0)) return std::nullopt;
  const double theta = std::sqrt(cbar) / delta;
  const int n_sum = game.rows() + game.cols();
  ChaosCertificate cert = MakeCertificate(CertificateKind::kLp, algorithm,
                                          region, epsilon, n_sum, theta, cbar);
  cert.route = mwu ? "r(Z) delta > r(C)" : "r(C) delta > r(Z)";
  cert.theorem_exponent = theta * theta * epsilon * epsilon / (2.0 * n_sum);
  return cert;
}

std::optional<ChaosCertificate> CertifyGraphicalFamily(
    const GraphicalGame& game, const RegionSpec& region, double epsilon,
    Algorithm algorithm) {
  CheckEpsilon(epsilon);
  CheckCertAlgorithm(algorithm);
  const auto& counts = game.strategy_counts();
  region.Validate(counts);
  const int n = game.num_players();
  double cbar = 0.0;
  double theta_min = std::numeric_limits<double>::infinity();
  std::string route;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const Matrix& h_ik = game.Edge(i, k);
      const Matrix& h_ki = game.Edge(k, i);
      if (h_ik.isZero(0.0) && h_ki.isZero(0.0)) continue;
      const BimatrixGame edge(h_ik, h_ki.transpose());
      std::optional<ChaosCertificate> c =
          CertifyDomination(edge, region, epsilon, algorithm);
      if (!c) c = CertifyLp(edge, region, epsilon, algorithm);
      if (!c) return std::nullopt;
      cbar += c->cbar_lower;
      theta_min = std::min(theta_min, c->theta);
      if (!route.empty()) route += "; ";
      route += "(" + std::to_string(i) + "," + std::to_string(k) + "): " +
               CertificateKindName(c->kind);
    }
  }
  if (route.empty()) return std::nullopt;  // no nonzero edge
  const int d = SumCounts(counts);
  ChaosCertificate cert =
      MakeCertificate(CertificateKind::kGraphicalFamily, algorithm, region,
                      epsilon, d, theta_min, cbar);
  cert.route = route;
  const double delta = region.delta;
  cert.theorem_exponent = n * (n - 1) * theta_min * theta_min * delta * delta *
                          epsilon * epsilon / (4.0 * d);
  return cert;
}

std::optional<ChaosCertificate> CertifyPotentialNegativity(
    const NormalFormGame& game, const Tensor& potential,
    const RegionSpec& region, double epsilon, double tol,
    std::int64_t budget) {
  CheckEpsilon(epsilon);
  const auto& counts = game.strategy_counts();
  region.Validate(counts);
  const std::int64_t profiles = ProfileCount(counts);
  if (profiles > budget) {
    throw BudgetExceeded("potential: profile space of " +
                         std::to_string(profiles) + " exceeds budget");
  }
  if (!IsPotentialGame(game, potential, tol)) {
    throw InvalidArgument("potential: the game is not a potential game for "
                          "this potential");
  }
  const int n = game.num_players();
  const int d = SumCounts(counts);
  const double delta = region.delta;
  const double scale = std::max(1.0, potential.MaxAbs());
  const double tiny = 1e-12 * scale;

  if (n == 2) {
    const Matrix p = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                    Eigen::Dynamic,
                                                    Eigen::RowMajor>>(
        potential.values().data(), counts[0], counts[1]);
    const double dist = L2TrivialProjection(p).distance;
    if (!(dist > tiny)) return std::nullopt;
    ChaosCertificate cert =
        MakeCertificate(CertificateKind::kPotentialNegativity,
                        Algorithm::kOmwu, region, epsilon, d, dist,
                        delta * delta * dist * dist);
    cert.route = "two-player potential: dist(P, trivial)";
    return cert;
  }

  // Projected matrices: for each pair, slices of P with the others fixed.
  double best_cbar = 0.0;
  double best_theta = 0.0;
  std::string best_route;
  const double weight_floor = std::pow(delta, n - 2);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int na = counts[a];
      const int nb = counts[b];
      std::vector<int> other_counts;
      for (int r = 0; r < n; ++r) {
        if (r != a && r != b) other_counts.push_back(counts[r]);
      }
      std::vector<Matrix> slices;
      std::vector<int> others(other_counts.size(), 0);
      std::vector<int> profile(n, 0);
      do {
        for (int r = 0, o = 0; r < n; ++r) {
          if (r != a && r != b) profile[r] = others[o++];
        }
        Matrix slice(na, nb);
        for (int j = 0; j < na; ++j) {
          for (int l = 0; l < nb; ++l) {
            profile[a] = j;
            profile[b] = l;
            slice(j, l) = potential.at(profile);
          }
        }
        slices.push_back(std::move(slice));
      } while (NextProfile(other_counts, others));

      // Unit directions orthogonal to the trivial space: each normalized
      // residual, the residual of the mean, and products of Helmert
      // contrasts.
      std::vector<Matrix> directions;
      Matrix mean = Matrix::Zero(na, nb);
      for (const Matrix& s : slices) {
        mean += s;
        const L2Projection proj = L2TrivialProjection(s);
        if (proj.distance > tiny) {
          directions.push_back(proj.residual / proj.distance);
        }
      }
      const L2Projection mean_proj =
          L2TrivialProjection(mean / static_cast<double>(slices.size()));
      if (mean_proj.distance > tiny) {
        directions.push_back(mean_proj.residual / mean_proj.distance);
      }
      auto helmert = [](int size, int idx) {
        Vector h = Vector::Zero(size);
        h.head(idx).setOnes();
        h[idx] = -idx;
        return Vector(h / std::sqrt(static_cast<double>(idx) * (idx + 1)));
      };
      for (int u = 1; u < na; ++u) {
        for (int v = 1; v < nb; ++v) {
          directions.push_back(helmert(na, u) * helmert(nb, v).transpose());
        }
      }

      for (const Matrix& dir : directions) {
        std::vector<double> coef;
        for (const Matrix& s : slices) {
          coef.push_back((s.array() * dir.array()).sum());
        }
        for (double sign : {1.0, -1.0}) {
          double theta = 0.0;
          double slack = 0.0;
          bool one_signed = true;
          for (double c0 : coef) {
            const double c = sign * c0;
            if (c < -tiny) {
              one_signed = false;
              break;
            }
            if (c < 0.0) slack += c;
            theta = std::max(theta, c);
          }
          if (!one_signed) continue;
          // <H, dir> >= theta delta^(N-2) minus tiny negative parts, and dir
          // is a unit vector orthogonal to the trivial space.
          const double distance = theta * weight_floor + slack;
          if (!(distance > 0.0)) continue;
          const double cbar = delta * delta * distance * distance;
          if (cbar > best_cbar) {
            best_cbar = cbar;
            best_theta = theta;
            best_route = "projected matrices of pair (" + std::to_string(a) +
                         "," + std::to_string(b) + ")";
          }
        }
      }
    }
  }
  if (!(best_cbar > 0.0)) return std::nullopt;
  ChaosCertificate cert =
      MakeCertificate(CertificateKind::kPotentialNegativity, Algorithm::kOmwu,
                      region, epsilon, d, best_theta, best_cbar);
  cert.route = best_route;
  return cert;
}

std::optional<ChaosCertificate> CertifyGraphicalPotentialNegativity(
    const GraphicalGame& game, const RegionSpec& region, double epsilon,
    double tol) {
  CheckEpsilon(epsilon);
  const auto& counts = game.strategy_counts();
  region.Validate(counts);
  const int n = game.num_players();
  double total = 0.0;
  double theta = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const BimatrixGame edge(game.Edge(i, k), game.Edge(k, i).transpose());
      const std::optional<Matrix> p = ExtractBimatrixPotential(edge, tol);
      if (!p) {
        throw InvalidArgument("edges: game (" + std::to_string(i) + "," +
                              std::to_string(k) + ") is not a potential game");
      }
      const double dist = L2TrivialProjection(*p).distance;
      total += dist * dist;
      theta = std::max(theta, dist);
    }
  }
  const double delta = region.delta;
  const double cbar = delta * delta * total;
  const double tiny = 1e-12 * std::max(1.0, game.MaxAbsPayoff());
  if (!(std::sqrt(total) > tiny)) return std::nullopt;
  ChaosCertificate cert =
      MakeCertificate(CertificateKind::kPotentialNegativity, Algorithm::kOmwu,
                      region, epsilon, SumCounts(counts), theta, cbar);
  cert.route = "graphical potential: nontrivial edge";
  return cert;
}

std::vector<DualPoint> RegionSamplePoints(std::span<const int> counts,
                                          const RegionSpec& region,
                                          std::int64_t num_samples,
                                          std::uint64_t seed) {
  if (num_samples < 1) throw InvalidArgument("samples: must be >= 1");
  region.Validate(counts);
  const double delta = region.delta;
  std::vector<DualPoint> points;

  // Vertices of the product polytope: each player puts 1 - (n-1) delta on
  // one strategy.
  const std::int64_t vertices = ProfileCount(counts);
  if (vertices <= num_samples) {
    std::vector<int> s(counts.size(), 0);
    do {
      DualPoint p;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        Vector x = Vector::Constant(counts[i], delta);
        x[s[i]] = 1.0 - (counts[i] - 1) * delta;
        p.blocks.push_back(x.array().log().matrix());
      }
      points.push_back(std::move(p));
    } while (NextProfile(counts, s));
  }

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  while (static_cast<std::int64_t>(points.size()) < num_samples) {
    DualPoint p;
    for (int n : counts) {
      Vector e(n);
      for (int j = 0; j < n; ++j) e[j] = expo(rng);
      const Vector x =
          (delta + (1.0 - n * delta) * (e / e.sum()).array()).matrix();
      p.blocks.push_back(x.array().log().matrix());
    }
    points.push_back(std::move(p));
  }
  return points;
}

CbarSampleResult CbarSample(const Game& game, const RegionSpec& region,
                            Algorithm algorithm, std::int64_t num_samples,
                            std::uint64_t seed) {
  CheckCertAlgorithm(algorithm);
  const std::vector<int> counts = StrategyCounts(game);
  const std::vector<DualPoint> points =
      RegionSamplePoints(counts, region, num_samples, seed);
  const double sign = algorithm == Algorithm::kMwu ? 1.0 : -1.0;
  const std::int64_t total = static_cast<std::int64_t>(points.size());

  const int workers = WorkerCount();
  std::vector<double> best(workers, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> best_index(workers, -1);
  ParallelFor(total, [&](int w, std::int64_t begin, std::int64_t end) {
    for (std::int64_t r = begin; r < end; ++r) {
      const double value = sign * CValue(game, points[r]);
      if (value < best[w]) {
        best[w] = value;
        best_index[w] = r;
      }
    }
  });
  CbarSampleResult result;
  result.num_points = total;
  result.min_value = std::numeric_limits<double>::infinity();
  std::int64_t arg = -1;
  for (int w = 0; w < workers; ++w) {
    if (best_index[w] < 0) continue;
    if (best[w] < result.min_value ||
        (best[w] == result.min_value && best_index[w] < arg)) {
      result.min_value = best[w];
      arg = best_index[w];
    }
  }
  result.argmin = points[arg];
  return result;
}

std::optional<DualPoint> FindNegativeCPoint(const BimatrixGame& game,
                                            const Quadruple& witness) {
  const int n = game.rows();
  const int m = game.cols();
  const auto [j, j2, k, k2] = witness;
  if (j < 0 || j2 < 0 || j >= n || j2 >= n || j == j2 || k < 0 || k2 < 0 ||
      k >= m || k2 >= m || k == k2) {
    throw InvalidArgument("witness: needs two distinct rows and columns");
  }
  auto mixture = [](int size, int a, int b, double eta) {
    Vector x = Vector::Zero(size);
    if (size == 2) {
      x.setConstant(0.5);
      return x;
    }
    x.setConstant(eta / (size - 2));
    x[a] = x[b] = (1.0 - eta) / 2.0;
    return x;
  };
  for (double eta = 0.1; eta >= 1e-6; eta /= 2.0) {
    DualPoint p;
    p.blocks.push_back(mixture(n, j, j2, eta).array().log().matrix());
    p.blocks.push_back(mixture(m, k, k2, eta).array().log().matrix());
    if (CBimatrix(game, p) < 0.0) return p;
  }
  return std::nullopt;
}

}  // namespace chaoscope
