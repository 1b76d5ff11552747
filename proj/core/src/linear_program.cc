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

#include "chaoscope/linear_program.h"

#include <cmath>
#include <limits>
#include <vector>

#include "chaoscope/errors.h"

namespace chaoscope {
namespace {

constexpr int kMaxPivots = 100000;

// Tableau layout: rows 0..m-1 are constraints, row m holds reduced costs with
// the negated objective value in the last column.
class Tableau {
 public:
  Tableau(Matrix t, std::vector<int> basis, int num_real_columns, double tol)
      : t_(std::move(t)),
        basis_(std::move(basis)),
        num_real_(num_real_columns),
        tol_(tol) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs() const { return static_cast<int>(t_.cols()) - 1; }
  Matrix& data() { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  int pivots() const { return pivots_; }

  void Pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int r = 0; r <= rows(); ++r) {
      if (r != row && t_(r, col) != 0.0) {
        t_.row(r) -= t_(r, col) * t_.row(row);
      }
    }
    basis_[row] = col;
    ++pivots_;
  }

  // Runs Bland's rule over columns [0, allowed_columns). Returns false when
  // the objective is unbounded below.
  bool Optimize(int allowed_columns) {
    const int m = rows();
    while (true) {
      if (pivots_ > kMaxPivots) {
        throw Error("simplex: pivot limit exceeded");
      }
      int entering = -1;
      for (int j = 0; j < allowed_columns; ++j) {
        if (t_(m, j) < -tol_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = t_(r, entering);
        if (a <= tol_) continue;
        const double ratio = t_(r, rhs()) / a;
        if (ratio < best_ratio - tol_ ||
            (std::abs(ratio - best_ratio) <= tol_ && leaving >= 0 &&
             basis_[r] < basis_[leaving])) {
          best_ratio = ratio;
          leaving = r;
        }
      }
      if (leaving < 0) return false;
      Pivot(leaving, entering);
    }
  }

  // Pivots any artificial variable still in the basis onto a real column.
  // Rows where that is impossible are linearly dependent; returns their mask.
  std::vector<bool> EvictArtificials() {
    std::vector<bool> redundant(rows(), false);
    for (int r = 0; r < rows(); ++r) {
      if (basis_[r] < num_real_) continue;
      int col = -1;
      double best = tol_;
      for (int j = 0; j < num_real_; ++j) {
        if (std::abs(t_(r, j)) > best) {
          best = std::abs(t_(r, j));
          col = j;
        }
      }
      if (col >= 0) {
        Pivot(r, col);
      } else {
        redundant[r] = true;
      }
    }
    return redundant;
  }

  void SetObjective(const Vector& costs) {
    const int m = rows();
    t_.row(m).setZero();
    t_.row(m).head(costs.size()) = costs.transpose();
    for (int r = 0; r < m; ++r) {
      const int b = basis_[r];
      const double cb = b < costs.size() ? costs[b] : 0.0;
      if (cb != 0.0) t_.row(m) -= cb * t_.row(r);
    }
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  int num_real_;
  double tol_;
  int pivots_ = 0;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp, double tol) {
  const int n = static_cast<int>(lp.c.size());
  const int m_ub = static_cast<int>(lp.a_ub.rows());
  const int m_eq = static_cast<int>(lp.a_eq.rows());
  const int m = m_ub + m_eq;
  if ((m_ub > 0 && lp.a_ub.cols() != n) || lp.b_ub.size() != m_ub ||
      (m_eq > 0 && lp.a_eq.cols() != n) || lp.b_eq.size() != m_eq) {
    throw InvalidArgument("linear program: inconsistent dimensions");
  }

  // Standard form [x | slack] with one artificial column per row.
  const int num_real = n + m_ub;
  Matrix standard = Matrix::Zero(m, num_real);
  Vector rhs(m);
  if (m_ub > 0) {
    standard.topLeftCorner(m_ub, n) = lp.a_ub;
    standard.block(0, n, m_ub, m_ub).setIdentity();
    rhs.head(m_ub) = lp.b_ub;
  }
  if (m_eq > 0) {
    standard.bottomLeftCorner(m_eq, n) = lp.a_eq;
    rhs.tail(m_eq) = lp.b_eq;
  }
  std::vector<double> row_sign(m, 1.0);
  for (int r = 0; r < m; ++r) {
    if (rhs[r] < 0.0) {
      row_sign[r] = -1.0;
      standard.row(r) *= -1.0;
      rhs[r] = -rhs[r];
    }
  }

  Matrix t = Matrix::Zero(m + 1, num_real + m + 1);
  t.topLeftCorner(m, num_real) = standard;
  t.block(0, num_real, m, m).setIdentity();
  t.col(num_real + m).head(m) = rhs;
  std::vector<int> basis(m);
  Vector phase1_costs = Vector::Zero(num_real + m);
  for (int r = 0; r < m; ++r) {
    if (r < m_ub && row_sign[r] > 0.0) {
      basis[r] = n + r;  // slack starts basic
    } else {
      basis[r] = num_real + r;
      phase1_costs[num_real + r] = 1.0;
    }
  }

  Tableau tableau(std::move(t), std::move(basis), num_real, tol);
  LpSolution solution;

  tableau.SetObjective(phase1_costs);
  tableau.Optimize(num_real);
  const double infeasibility = -tableau.data()(m, tableau.rhs());
  const double rhs_scale = 1.0 + (m > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0);
  if (infeasibility > 1e3 * tol * rhs_scale) {
    solution.status = LpStatus::kInfeasible;
    solution.pivots = tableau.pivots();
    return solution;
  }
  const std::vector<bool> redundant = tableau.EvictArtificials();

  Vector phase2_costs = Vector::Zero(num_real + m);
  phase2_costs.head(n) = lp.c;
  tableau.SetObjective(phase2_costs);
  if (!tableau.Optimize(num_real)) {
    solution.status = LpStatus::kUnbounded;
    solution.pivots = tableau.pivots();
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.pivots = tableau.pivots();
  solution.x = Vector::Zero(n);
  const auto& final_basis = tableau.basis();
  for (int r = 0; r < m; ++r) {
    if (final_basis[r] < n) {
      solution.x[final_basis[r]] = tableau.data()(r, tableau.rhs());
    }
  }
  solution.objective = lp.c.dot(solution.x);

  // Duals from y' B = c_B over the non-redundant rows.
  std::vector<int> kept;
  for (int r = 0; r < m; ++r) {
    if (!redundant[r]) kept.push_back(r);
  }
  Vector y_std = Vector::Zero(m);
  if (!kept.empty()) {
    const int q = static_cast<int>(kept.size());
    Matrix basis_matrix(q, q);
    Vector basis_costs(q);
    for (int c = 0; c < q; ++c) {
      const int col = final_basis[kept[c]];
      for (int r = 0; r < q; ++r) {
        basis_matrix(r, c) =
            col < num_real ? standard(kept[r], col)
                           : (col - num_real == kept[r] ? 1.0 : 0.0);
      }
      basis_costs[c] = phase2_costs[col];
    }
    const Vector y_kept =
        basis_matrix.transpose().fullPivLu().solve(basis_costs);
    for (int r = 0; r < q; ++r) y_std[kept[r]] = y_kept[r];
  }
  solution.dual_ub = Vector::Zero(m_ub);
  solution.dual_eq = Vector::Zero(m_eq);
  for (int r = 0; r < m; ++r) {
    const double y = row_sign[r] * y_std[r];
    if (r < m_ub) {
      solution.dual_ub[r] = y;
    } else {
      solution.dual_eq[r - m_ub] = y;
    }
  }
  return solution;
}

}  // namespace chaoscope
