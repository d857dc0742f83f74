// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small linear-programming toolkit: a bounded primal simplex over an explicit
// dense basis inverse, with row duals, warm starts and a lexicographic
// second stage for picking among optimal dual solutions.
//
// All programs maximize. Rows are stored sparsely; the basis inverse is dense,
// so the cost per pivot is quadratic in the number of rows.

#ifndef QPRICE_LP_H_
#define QPRICE_LP_H_

#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qprice {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Primal feasibility tolerance (absolute).
inline constexpr double kFeasibilityTolerance = 1e-7;
// Reduced-cost tolerance for optimality.
inline constexpr double kOptimalityTolerance = 1e-9;

// Numerical breakdown or pivot budget exhausted. Never reported as Optimal.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpRow {
  std::vector<LpTerm> terms;  // sorted by var, no zeros, no repeats
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// maximize c.x  subject to  rows,  lower <= x <= upper.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void SetObjective(int var, double coef);
  void SetObjective(std::span<const double> coefs);
  const std::vector<double>& objective() const { return objective_; }

  // Lower may be -inf, upper may be +inf; lower <= upper.
  void SetBounds(int var, double lower, double upper);
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }

  // Dense row; `coefs` must have num_vars() entries.
  int AddRow(std::span<const double> coefs, Relation relation, double rhs);
  // Sparse row; terms on the same variable are summed.
  int AddSparseRow(std::vector<LpTerm> terms, Relation relation, double rhs);
  void SetRhs(int row, double rhs);

  const LpRow& row(int i) const { return rows_[i]; }
  const std::vector<LpRow>& rows() const { return rows_; }

  // Activity a_i . x of row i.
  double RowActivity(int i, std::span<const double> x) const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* StatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;         // one per variable
  std::vector<double> duals;          // one per row: d objective / d rhs
  std::vector<double> reduced_costs;  // c_j - duals . A_j
  double objective = 0.0;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

// Stateful solver. Keeps its basis between calls to Solve(), so a sequence of
// related programs (rows appended, right-hand sides or objective changed) is
// re-solved from the previous optimal basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram program);
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  const LinearProgram& program() const { return program_; }

  int AddRow(std::vector<LpTerm> terms, Relation relation, double rhs);
  void SetRhs(int row, double rhs);
  void SetObjective(std::span<const double> coefs);

  // Throws SolverError on numerical failure; the basis is then reset.
  LpSolution Solve();

  // Forget the basis; the next Solve() starts from the slack basis.
  void ResetBasis();

 private:
  class Engine;
  LinearProgram program_;
  std::unique_ptr<Engine> engine_;
};

// One-shot solve from the slack basis.
LpSolution Solve(const LinearProgram& program);

// The dual program, written as a maximization. Variables are the row duals
// (in row order) followed by one multiplier per finite upper bound; its rows
// correspond one-to-one to the primal variables. Finite lower bounds are
// shifted out. A variable with an infinite lower bound must also have an
// infinite upper bound.
struct DualProgram {
  LinearProgram program;
  std::vector<int> upper_bound_vars;  // primal var of each bound multiplier
  double objective_offset = 0.0;      // primal objective = offset - dual obj
};
DualProgram Dualize(const LinearProgram& program);

// Solves `program` and, among its optimal dual solutions, returns the one
// maximizing tiebreak . duals (tiebreak has one entry per row). The second
// stage pins the optimal value as a constraint on the dual objective.
LpSolution SolveWithDualTiebreak(const LinearProgram& program,
                                 std::span<const double> tiebreak);

}  // namespace qprice

#endif  // QPRICE_LP_H_
