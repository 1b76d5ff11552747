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

#ifndef CHAOSCOPE_C_FUNCTION_H_
#define CHAOSCOPE_C_FUNCTION_H_

// The volume-change function C: the coefficient of eps^2 in det(I + eps J)
// for one MWU step. Positive C means the dual volume locally expands.

#include <cstdint>

#include "chaoscope/game.h"

namespace chaoscope {

// -sum_{j,k} x_j y_k (A_jk - [Ay]_j)(B_jk - [B'x]_k).
double CBimatrix(const BimatrixGame& game, const DualPoint& p);

// -E[(A_jk - A_j - A_k)(B_jk - B_j - B_k)] + E[A_jk] E[B_jk] over the product
// distribution, with A_j = [Ay]_j, A_k = [A'x]_k and likewise for B.
double CBimatrixExpectationForm(const BimatrixGame& game, const DualPoint& p);

// (1/4) sum over ordered quadruples of x_j y_k x_j' y_k' (dZ)^2, computed by
// a direct O(n^2 m^2) sum. Equals CBimatrix on (Z, -Z).
double CZeroSumQuadruple(const Matrix& z, const DualPoint& p);

// Pairwise sum over i < k with U terms from exact expected payoffs.
double CMulti(const NormalFormGame& game, const DualPoint& p,
              std::int64_t budget = kDefaultProfileBudget);

// H^{ik} = U^{ik}(x(p)) for every ordered pair. The result has the same C
// value as `game` at p, but not elsewhere.
GraphicalGame InducedGraphicalGame(
    const NormalFormGame& game, const DualPoint& p,
    std::int64_t budget = kDefaultProfileBudget);

// sum_{i<k} CBimatrix((H^{ik}, (H^{ki})'), (p_i, p_k)); never expands the
// profile space.
double CGraphical(const GraphicalGame& game, const DualPoint& p);

// Dispatches on the representation.
double CValue(const Game& game, const DualPoint& p,
              std::int64_t budget = kDefaultProfileBudget);

}  // namespace chaoscope

#endif  // CHAOSCOPE_C_FUNCTION_H_
