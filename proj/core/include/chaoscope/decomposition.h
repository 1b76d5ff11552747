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

#ifndef CHAOSCOPE_DECOMPOSITION_H_
#define CHAOSCOPE_DECOMPOSITION_H_

// Zero-sum plus coordination split of a bimatrix game, trivial matrices
// (T_jk = u_j + v_k), their L-infinity and L2 projections, and potential
// extraction.

#include <optional>

#include "chaoscope/game.h"

namespace chaoscope {

// A = Z + C, B = -Z + C.
struct Decomposition {
  Matrix zero_sum;      // Z = (A - B) / 2
  Matrix coordination;  // C = (A + B) / 2
};

Decomposition Decompose(const BimatrixGame& game);

// K_jk + K_j'k' - K_jk' - K_j'k.
double QuadrupleCombination(const Matrix& k, int j, int j2, int c, int c2);

// True iff every quadruple combination is within tol of zero. Uses the
// anchored O(nm) form |K_jk - K_j0 - K_0k + K_00| <= tol.
bool IsTrivial(const Matrix& k, double tol);

struct TrivialMatrix {
  Vector u;
  Vector v;

  Matrix Materialize() const;
};

// Optimum of  min r  s.t.  -r <= K_jk - g_j - h_k <= r,  with g_0 = 0.
struct ChebyshevFit {
  double r = 0.0;
  Vector g;
  Vector h;
  // Optimal dual: zero row and column sums, sum |W| <= 1 and
  // sum_jk K_jk W_jk = r, which certifies optimality by weak duality.
  Matrix dual_weights;
};

ChebyshevFit ChebyshevTrivialFit(const Matrix& k);

// Least-squares projection onto trivial matrices under the plain Frobenius
// inner product: T = rowmean + colmean - grandmean.
struct L2Projection {
  TrivialMatrix trivial;
  Matrix residual;
  double distance = 0.0;
};

L2Projection L2TrivialProjection(const Matrix& k);

// Returns P with A - P constant along rows (depends on k only) and B - P
// constant along columns, or nullopt when A - B is not trivial within tol.
std::optional<Matrix> ExtractBimatrixPotential(const BimatrixGame& game,
                                               double tol);

// Every player's payoff tensor replaced by `potential`.
NormalFormGame PotentialCoordinationLift(const NormalFormGame& game,
                                         const Tensor& potential);

// u_i(s) - P(s) does not depend on s_i, for every player i, within tol.
bool IsPotentialGame(const NormalFormGame& game, const Tensor& potential,
                     double tol);

// Builds a potential by walking each profile from the all-zero profile one
// coordinate at a time; returns nullopt if the result fails IsPotentialGame.
std::optional<Tensor> ExtractPotential(const NormalFormGame& game, double tol);

}  // namespace chaoscope

#endif  // CHAOSCOPE_DECOMPOSITION_H_
