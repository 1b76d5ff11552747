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

#ifndef CHAOSCOPE_LINEAR_PROGRAM_H_
#define CHAOSCOPE_LINEAR_PROGRAM_H_

// Dense two-phase tableau simplex with Bland's pivoting rule. Meant for the
// small LPs in this library (a few hundred rows at most).

#include "chaoscope/game.h"

namespace chaoscope {

// minimize c'x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
// Either constraint block may be empty (zero rows), but its column count must
// match c.
struct LinearProgram {
  Vector c;
  Matrix a_ub;
  Vector b_ub;
  Matrix a_eq;
  Vector b_eq;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  double objective = 0.0;
  // Lagrange multipliers; dual_ub <= 0 for a minimization. Valid only when
  // status == kOptimal.
  Vector dual_ub;
  Vector dual_eq;
  int pivots = 0;
};

LpSolution SolveLinearProgram(const LinearProgram& lp, double tol = 1e-10);

}  // namespace chaoscope

#endif  // CHAOSCOPE_LINEAR_PROGRAM_H_
