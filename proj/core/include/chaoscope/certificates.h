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

#ifndef CHAOSCOPE_CERTIFICATES_H_
#define CHAOSCOPE_CERTIFICATES_H_

// Chaos certificates: proven lower bounds cbar on C (MWU) or -C (OMWU) over
// the region S^delta, and the Lyapunov exponent cbar eps^2 / (2d) they imply.
// Every certificate is a proof from finitely many inequalities; sampled
// estimates live in CbarSample and are never reported as certificates.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaoscope/dynamics.h"
#include "chaoscope/game.h"

namespace chaoscope {

// Row indices j, j2 and column indices k, k2 of a 2x2 minor.
using Quadruple = std::array<int, 4>;

struct DominationReport {
  bool dominates = false;
  // max over quadruples of |dK| - |dL|; a positive value is the largest
  // theta for which K theta-dominates L.
  double theta_margin = 0.0;
  // Attains theta_margin when dominates; otherwise the quadruple with the
  // largest violation |dL| - |dK|.
  Quadruple witness = {0, 0, 0, 0};
};

// Exhaustive check that |dK| >= |dL| on every quadruple.
DominationReport CheckDomination(const Matrix& k, const Matrix& l);

enum class CertificateKind {
  kDomination,
  kLp,
  kGraphicalFamily,
  kPotentialNegativity,
};

const char* CertificateKindName(CertificateKind kind);

struct ChaosCertificate {
  CertificateKind kind = CertificateKind::kDomination;
  Algorithm algorithm = Algorithm::kMwu;  // kMwu or kOmwu
  std::string route;                      // which sub-criterion fired
  double region_delta = 0.0;
  double epsilon = 0.0;
  int dual_dimension = 0;
  double theta = 0.0;
  // Proven: C >= cbar_lower on S^delta for MWU, -C >= cbar_lower for OMWU.
  double cbar_lower = 0.0;
  double lyapunov_exponent = 0.0;  // cbar_lower eps^2 / (2d)
  // The closed-form exponent of the matching chaos result, kept alongside.
  // Absent where no closed form is stated.
  std::optional<double> theorem_exponent;
};

// theta-domination of C by Z (MWU) or of Z by C (OMWU); cbar = theta^2
// delta^4.
std::optional<ChaosCertificate> CertifyDomination(const BimatrixGame& game,
                                                  const RegionSpec& region,
                                                  double epsilon,
                                                  Algorithm algorithm);

// Chebyshev radii: cbar = (r(Z) delta)^2 - r(C)^2 for MWU, with Z and C
// swapped for OMWU.
std::optional<ChaosCertificate> CertifyLp(const BimatrixGame& game,
                                          const RegionSpec& region,
                                          double epsilon, Algorithm algorithm);

// Every nonzero edge game must certify (domination first, then LP); cbar is
// the sum of the per-edge bounds.
std::optional<ChaosCertificate> CertifyGraphicalFamily(
    const GraphicalGame& game, const RegionSpec& region, double epsilon,
    Algorithm algorithm);

// OMWU certificate for an exact potential game with potential P. Throws
// InvalidArgument if (game, P) is not a potential game within tol. Two
// players: cbar = delta^2 dist(P, trivial)^2. More players: projected
// matrices of each pair are tested along unit directions orthogonal to the
// trivial space, cbar = theta^2 delta^(2N-2).
std::optional<ChaosCertificate> CertifyPotentialNegativity(
    const NormalFormGame& game, const Tensor& potential,
    const RegionSpec& region, double epsilon, double tol = 1e-9,
    std::int64_t budget = kDefaultProfileBudget);

// Graphical route: every edge must be a bimatrix potential game; cbar is
// delta^2 times the summed squared distances of the edge potentials from the
// trivial space.
std::optional<ChaosCertificate> CertifyGraphicalPotentialNegativity(
    const GraphicalGame& game, const RegionSpec& region, double epsilon,
    double tol = 1e-9);

struct CbarSampleResult {
  double min_value = 0.0;
  DualPoint argmin;
  std::int64_t num_points = 0;
};

// Empirical min of C (MWU) or -C (OMWU) over S^delta. Points are the product
// of per-player polytope vertices (when it fits in the budget) followed by
// uniform samples from {x : x_ij >= delta}, mapped to the dual by log.
CbarSampleResult CbarSample(const Game& game, const RegionSpec& region,
                            Algorithm algorithm, std::int64_t num_samples,
                            std::uint64_t seed);

// The sample points CbarSample evaluates, in order.
std::vector<DualPoint> RegionSamplePoints(std::span<const int> strategy_counts,
                                          const RegionSpec& region,
                                          std::int64_t num_samples,
                                          std::uint64_t seed);

// Constructive converse of the domination theorem: puts mass (1 - eta)/2 on
// the witness rows and columns, spreads eta over the rest and halves eta from
// 0.1 down to 1e-6 until C < 0. Returns the point found, if any.
std::optional<DualPoint> FindNegativeCPoint(const BimatrixGame& game,
                                            const Quadruple& witness);

}  // namespace chaoscope

#endif  // CHAOSCOPE_CERTIFICATES_H_
