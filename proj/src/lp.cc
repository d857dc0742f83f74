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

#include "qprice/lp.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "qprice/instance.h"

namespace qprice {
namespace {

// |alpha| below this is never pivoted on.
constexpr double kPivotTolerance = 1e-9;
// Steps shorter than this count as degenerate.
constexpr double kDegenerateStep = 1e-12;
// Consecutive degenerate pivots before switching to Bland's rule.
constexpr int kDegeneratePivotsBeforeBland = 40;

void NormalizeTerms(std::vector<LpTerm>& terms, int num_vars) {
  for (const LpTerm& t : terms) {
    if (t.var < 0 || t.var >= num_vars) {
      throw InvalidInputError("row term references variable " +
                              std::to_string(t.var) + " outside [0, " +
                              std::to_string(num_vars) + ")");
    }
    if (!std::isfinite(t.coef)) {
      throw InvalidInputError("row coefficients must be finite");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
  std::vector<LpTerm> merged;
  merged.reserve(terms.size());
  for (const LpTerm& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const LpTerm& t) { return t.coef == 0.0; });
  terms = std::move(merged);
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearProgram

LinearProgram::LinearProgram(int num_vars)
    : objective_(num_vars, 0.0),
      lower_(num_vars, 0.0),
      upper_(num_vars, kInfinity) {
  if (num_vars < 0) throw InvalidInputError("negative variable count");
}

void LinearProgram::SetObjective(int var, double coef) {
  if (var < 0 || var >= num_vars()) {
    throw InvalidInputError("objective variable out of range");
  }
  if (!std::isfinite(coef)) throw InvalidInputError("objective must be finite");
  objective_[var] = coef;
}

void LinearProgram::SetObjective(std::span<const double> coefs) {
  if (static_cast<int>(coefs.size()) != num_vars()) {
    throw InvalidInputError("objective length mismatch");
  }
  for (int j = 0; j < num_vars(); ++j) SetObjective(j, coefs[j]);
}

void LinearProgram::SetBounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_vars()) {
    throw InvalidInputError("bound variable out of range");
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    throw InvalidInputError("invalid bounds for variable " +
                            std::to_string(var));
  }
  lower_[var] = lower;
  upper_[var] = upper;
}

int LinearProgram::AddRow(std::span<const double> coefs, Relation relation,
                          double rhs) {
  if (static_cast<int>(coefs.size()) != num_vars()) {
    throw InvalidInputError("row has " + std::to_string(coefs.size()) +
                            " coefficients, expected " +
                            std::to_string(num_vars()));
  }
  std::vector<LpTerm> terms;
  for (int j = 0; j < num_vars(); ++j) {
    if (coefs[j] != 0.0) terms.push_back({j, coefs[j]});
  }
  return AddSparseRow(std::move(terms), relation, rhs);
}

int LinearProgram::AddSparseRow(std::vector<LpTerm> terms, Relation relation,
                                double rhs) {
  if (!std::isfinite(rhs)) throw InvalidInputError("rhs must be finite");
  NormalizeTerms(terms, num_vars());
  rows_.push_back(LpRow{std::move(terms), relation, rhs});
  return num_rows() - 1;
}

void LinearProgram::SetRhs(int row, double rhs) {
  if (row < 0 || row >= num_rows()) throw InvalidInputError("row out of range");
  if (!std::isfinite(rhs)) throw InvalidInputError("rhs must be finite");
  rows_[row].rhs = rhs;
}

double LinearProgram::RowActivity(int i, std::span<const double> x) const {
  double sum = 0.0;
  for (const LpTerm& t : rows_[i].terms) sum += t.coef * x[t.var];
  return sum;
}

const char* StatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Engine: bounded primal simplex on  A x + s = b.
//
// Variables 0..nv-1 are structural, nv+i is the slack of row i with bounds
// [0,inf) for <=, (-inf,0] for >=, [0,0] for =. Phase 1 minimizes the sum of
// bound violations of the basic variables starting from whatever basis is
// current, so warm starts with an infeasible basis need no artificials.

class SimplexSolver::Engine {
 public:
  Engine(const LinearProgram& program) { Reset(program); }

  void Reset(const LinearProgram& program) {
    nv_ = program.num_vars();
    nr_ = program.num_rows();
    basis_.resize(nr_);
    status_.assign(nv_ + nr_, kAtLower);
    pos_of_.assign(nv_ + nr_, -1);
    for (int i = 0; i < nr_; ++i) {
      basis_[i] = nv_ + i;
      status_[nv_ + i] = kBasic;
      pos_of_[nv_ + i] = i;
    }
    binv_ = Eigen::MatrixXd::Identity(nr_, nr_);
    pivots_since_refactor_ = 0;
  }

  void OnRowAdded(const LinearProgram& program) {
    const int i = nr_;
    const LpRow& row = program.row(i);
    // New inverse row: -a_B^T Binv, then 1 on the new column.
    Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(nr_);
    for (const LpTerm& t : row.terms) {
      if (status_[t.var] == kBasic) u += t.coef * binv_.row(pos_of_[t.var]);
    }
    binv_.conservativeResize(nr_ + 1, nr_ + 1);
    binv_.col(nr_).setZero();
    binv_.row(nr_).head(nr_) = -u;
    binv_(nr_, nr_) = 1.0;
    ++nr_;
    basis_.push_back(nv_ + i);
    status_.push_back(kBasic);
    pos_of_.push_back(i);
  }

  LpSolution Run(const LinearProgram& program);

 private:
  enum Status : unsigned char { kBasic, kAtLower, kAtUpper, kAtZero };

  void Load(const LinearProgram& program);
  void PlaceNonbasic(int var);
  void Refactor();
  void ComputeBasicValues();
  double PrimalResidual() const;
  void ColumnTimesBinv(int var, Eigen::VectorXd& alpha) const;
  double Reduced(int var, const Eigen::VectorXd& y, double cost) const;
  bool BasicsFeasible() const;
  LpSolution Extract(LpStatus status, int iterations) const;

  int nv_ = 0;
  int nr_ = 0;
  std::vector<int> basis_;
  std::vector<int> pos_of_;
  std::vector<Status> status_;
  std::vector<double> x_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<double> rhs_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  Eigen::MatrixXd binv_;
  int pivots_since_refactor_ = 0;
};

void SimplexSolver::Engine::Load(const LinearProgram& program) {
  const int n = nv_ + nr_;
  lo_.resize(n);
  hi_.resize(n);
  cost_.assign(n, 0.0);
  rhs_.resize(nr_);
  for (int j = 0; j < nv_; ++j) {
    lo_[j] = program.lower(j);
    hi_[j] = program.upper(j);
    cost_[j] = program.objective()[j];
  }
  std::vector<int> count(nv_ + 1, 0);
  for (int i = 0; i < nr_; ++i) {
    const LpRow& row = program.row(i);
    rhs_[i] = row.rhs;
    switch (row.relation) {
      case Relation::kLessEqual:
        lo_[nv_ + i] = 0.0;
        hi_[nv_ + i] = kInfinity;
        break;
      case Relation::kGreaterEqual:
        lo_[nv_ + i] = -kInfinity;
        hi_[nv_ + i] = 0.0;
        break;
      case Relation::kEqual:
        lo_[nv_ + i] = 0.0;
        hi_[nv_ + i] = 0.0;
        break;
    }
    for (const LpTerm& t : row.terms) ++count[t.var + 1];
  }
  for (int j = 0; j < nv_; ++j) count[j + 1] += count[j];
  col_start_ = count;
  col_row_.resize(col_start_[nv_]);
  col_val_.resize(col_start_[nv_]);
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < nr_; ++i) {
    for (const LpTerm& t : program.row(i).terms) {
      col_row_[fill[t.var]] = i;
      col_val_[fill[t.var]] = t.coef;
      ++fill[t.var];
    }
  }
  pos_of_.assign(n, -1);
  for (int p = 0; p < nr_; ++p) pos_of_[basis_[p]] = p;
  x_.resize(n);
  for (int v = 0; v < n; ++v) {
    if (status_[v] != kBasic) PlaceNonbasic(v);
  }
}

void SimplexSolver::Engine::PlaceNonbasic(int v) {
  Status s = status_[v];
  if (s == kAtLower && !std::isfinite(lo_[v])) s = kAtUpper;
  if (s == kAtUpper && !std::isfinite(hi_[v])) s = kAtLower;
  if (s == kAtLower && !std::isfinite(lo_[v])) s = kAtZero;
  if (s == kAtZero && std::isfinite(lo_[v])) s = kAtLower;
  if (s == kAtZero && std::isfinite(hi_[v])) s = kAtUpper;
  status_[v] = s;
  x_[v] = s == kAtLower ? lo_[v] : s == kAtUpper ? hi_[v] : 0.0;
}

void SimplexSolver::Engine::Refactor() {
  if (nr_ > 0) {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(nr_, nr_);
    for (int p = 0; p < nr_; ++p) {
      const int v = basis_[p];
      if (v >= nv_) {
        basis_matrix(v - nv_, p) = 1.0;
      } else {
        for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) {
          basis_matrix(col_row_[k], p) = col_val_[k];
        }
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) throw SolverError("singular basis");
  }
  pivots_since_refactor_ = 0;
}

void SimplexSolver::Engine::ComputeBasicValues() {
  Eigen::VectorXd r(nr_);
  for (int i = 0; i < nr_; ++i) r[i] = rhs_[i];
  for (int v = 0; v < nv_ + nr_; ++v) {
    if (status_[v] == kBasic || x_[v] == 0.0) continue;
    if (v >= nv_) {
      r[v - nv_] -= x_[v];
    } else {
      for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) {
        r[col_row_[k]] -= col_val_[k] * x_[v];
      }
    }
  }
  const Eigen::VectorXd xb = binv_ * r;
  for (int p = 0; p < nr_; ++p) x_[basis_[p]] = xb[p];
}

double SimplexSolver::Engine::PrimalResidual() const {
  std::vector<double> r(rhs_);
  for (int v = 0; v < nv_ + nr_; ++v) {
    if (x_[v] == 0.0) continue;
    if (v >= nv_) {
      r[v - nv_] -= x_[v];
    } else {
      for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) {
        r[col_row_[k]] -= col_val_[k] * x_[v];
      }
    }
  }
  double worst = 0.0;
  for (int i = 0; i < nr_; ++i) {
    worst = std::max(worst, std::abs(r[i]) / (1.0 + std::abs(rhs_[i])));
  }
  return worst;
}

void SimplexSolver::Engine::ColumnTimesBinv(int v,
                                            Eigen::VectorXd& alpha) const {
  if (v >= nv_) {
    alpha = binv_.col(v - nv_);
    return;
  }
  alpha.setZero(nr_);
  for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) {
    alpha.noalias() += col_val_[k] * binv_.col(col_row_[k]);
  }
}

double SimplexSolver::Engine::Reduced(int v, const Eigen::VectorXd& y,
                                      double cost) const {
  if (v >= nv_) return cost - y[v - nv_];
  double d = cost;
  for (int k = col_start_[v]; k < col_start_[v + 1]; ++k) {
    d -= col_val_[k] * y[col_row_[k]];
  }
  return d;
}

bool SimplexSolver::Engine::BasicsFeasible() const {
  for (int p = 0; p < nr_; ++p) {
    const int v = basis_[p];
    if (x_[v] < lo_[v] - kFeasibilityTolerance ||
        x_[v] > hi_[v] + kFeasibilityTolerance) {
      return false;
    }
  }
  return true;
}

LpSolution SimplexSolver::Engine::Extract(LpStatus status,
                                          int iterations) const {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations;
  sol.primal.assign(x_.begin(), x_.begin() + nv_);
  Eigen::VectorXd cb(nr_);
  for (int p = 0; p < nr_; ++p) cb[p] = cost_[basis_[p]];
  const Eigen::VectorXd y = binv_.transpose() * cb;
  sol.duals.assign(y.data(), y.data() + nr_);
  sol.reduced_costs.resize(nv_);
  for (int j = 0; j < nv_; ++j) sol.reduced_costs[j] = Reduced(j, y, cost_[j]);
  double obj = 0.0;
  for (int j = 0; j < nv_; ++j) obj += cost_[j] * x_[j];
  sol.objective = status == LpStatus::kUnbounded ? kInfinity : obj;
  return sol;
}

LpSolution SimplexSolver::Engine::Run(const LinearProgram& program) {
  Load(program);
  const int n = nv_ + nr_;
  const int refactor_period = 100 + nr_ / 4;
  if (pivots_since_refactor_ >= refactor_period) Refactor();
  ComputeBasicValues();

  const long max_iterations = 50L * (n + 10) + 5000;
  int degenerate_run = 0;
  bool bland = false;
  bool verified_fresh = false;
  Eigen::VectorXd y(nr_);
  Eigen::VectorXd cb(nr_);
  Eigen::VectorXd alpha(nr_);

  for (long iter = 0;; ++iter) {
    if (iter > max_iterations) {
      Reset(program);
      throw SolverError("simplex pivot budget exhausted");
    }
    // Phase-1 costs on infeasible basics, otherwise the true objective.
    bool phase1 = false;
    for (int p = 0; p < nr_; ++p) {
      const int v = basis_[p];
      if (x_[v] < lo_[v] - kFeasibilityTolerance) {
        cb[p] = 1.0;
        phase1 = true;
      } else if (x_[v] > hi_[v] + kFeasibilityTolerance) {
        cb[p] = -1.0;
        phase1 = true;
      } else {
        cb[p] = 0.0;
      }
    }
    if (!phase1) {
      for (int p = 0; p < nr_; ++p) cb[p] = cost_[basis_[p]];
    }
    y.noalias() = binv_.transpose() * cb;

    // Pricing: Dantzig, or Bland's smallest index while stalling.
    int entering = -1;
    int direction = 0;
    double best = 0.0;
    for (int v = 0; v < n; ++v) {
      const Status s = status_[v];
      if (s == kBasic || lo_[v] == hi_[v]) continue;
      if (v < nv_ && col_start_[v] == col_start_[v + 1] &&
          (phase1 || cost_[v] == 0.0)) {
        continue;
      }
      const double d = Reduced(v, y, phase1 ? 0.0 : cost_[v]);
      int dir = 0;
      if (d > kOptimalityTolerance && (s == kAtLower || s == kAtZero)) {
        dir = 1;
      } else if (d < -kOptimalityTolerance && (s == kAtUpper || s == kAtZero)) {
        dir = -1;
      }
      if (dir == 0) continue;
      if (bland) {
        entering = v;
        direction = dir;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = v;
        direction = dir;
      }
    }

    if (entering < 0) {
      // Re-derive the basic values from scratch before declaring success.
      if (!verified_fresh) {
        verified_fresh = true;
        if (pivots_since_refactor_ > 0 &&
            PrimalResidual() > kFeasibilityTolerance * 1e-2) {
          Refactor();
        }
        ComputeBasicValues();
        continue;
      }
      if (phase1) return Extract(LpStatus::kInfeasible, static_cast<int>(iter));
      if (PrimalResidual() > kFeasibilityTolerance || !BasicsFeasible()) {
        throw SolverError("primal residual exceeds tolerance at optimum");
      }
      return Extract(LpStatus::kOptimal, static_cast<int>(iter));
    }
    verified_fresh = false;

    ColumnTimesBinv(entering, alpha);

    // Harris two-pass ratio test.
    double relaxed_limit = kInfinity;
    for (int p = 0; p < nr_; ++p) {
      const double rate = -direction * alpha[p];
      if (std::abs(alpha[p]) <= kPivotTolerance) continue;
      const int v = basis_[p];
      const double xv = x_[v];
      double limit = kInfinity;
      if (rate < 0.0) {
        if (xv > hi_[v] + kFeasibilityTolerance) {
          limit = (xv - hi_[v] + kFeasibilityTolerance) / -rate;
        } else if (xv >= lo_[v] - kFeasibilityTolerance &&
                   std::isfinite(lo_[v])) {
          limit = (xv - lo_[v] + kFeasibilityTolerance) / -rate;
        }
      } else {
        if (xv < lo_[v] - kFeasibilityTolerance) {
          limit = (lo_[v] - xv + kFeasibilityTolerance) / rate;
        } else if (xv <= hi_[v] + kFeasibilityTolerance &&
                   std::isfinite(hi_[v])) {
          limit = (hi_[v] - xv + kFeasibilityTolerance) / rate;
        }
      }
      relaxed_limit = std::min(relaxed_limit, limit);
    }
    int leave_pos = -1;
    bool leave_at_upper = false;
    double step = kInfinity;
    double best_pivot = 0.0;
    for (int p = 0; p < nr_; ++p) {
      const double rate = -direction * alpha[p];
      if (std::abs(alpha[p]) <= kPivotTolerance) continue;
      const int v = basis_[p];
      const double xv = x_[v];
      double limit = kInfinity;
      bool at_upper = false;
      if (rate < 0.0) {
        if (xv > hi_[v] + kFeasibilityTolerance) {
          limit = (xv - hi_[v]) / -rate;
          at_upper = true;
        } else if (xv >= lo_[v] - kFeasibilityTolerance &&
                   std::isfinite(lo_[v])) {
          limit = std::max(0.0, xv - lo_[v]) / -rate;
        }
      } else {
        if (xv < lo_[v] - kFeasibilityTolerance) {
          limit = (lo_[v] - xv) / rate;
        } else if (xv <= hi_[v] + kFeasibilityTolerance &&
                   std::isfinite(hi_[v])) {
          limit = std::max(0.0, hi_[v] - xv) / rate;
          at_upper = true;
        }
      }
      if (limit == kInfinity || limit > relaxed_limit) continue;
      bool take = false;
      if (leave_pos < 0) {
        take = true;
      } else if (bland) {
        take = limit < step - kDegenerateStep ||
               (limit <= step + kDegenerateStep && v < basis_[leave_pos]);
      } else {
        take = std::abs(alpha[p]) > best_pivot;
      }
      if (take) {
        leave_pos = p;
        leave_at_upper = at_upper;
        step = limit;
        best_pivot = std::abs(alpha[p]);
      }
    }

    const double range = hi_[entering] - lo_[entering];
    const bool flip = std::isfinite(range) && (leave_pos < 0 || range <= step);
    if (leave_pos < 0 && !flip) {
      if (phase1) {
        Reset(program);
        throw SolverError("unbounded phase-1 direction");
      }
      return Extract(LpStatus::kUnbounded, static_cast<int>(iter));
    }
    if (flip) step = range;

    // Move along the edge.
    x_[entering] += direction * step;
    for (int p = 0; p < nr_; ++p) {
      x_[basis_[p]] -= direction * step * alpha[p];
    }
    if (step <= kDegenerateStep) {
      if (++degenerate_run > kDegeneratePivotsBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    if (flip) {
      status_[entering] = direction > 0 ? kAtUpper : kAtLower;
      x_[entering] = direction > 0 ? hi_[entering] : lo_[entering];
      continue;
    }

    const int leaving = basis_[leave_pos];
    status_[leaving] = leave_at_upper ? kAtUpper : kAtLower;
    if (lo_[leaving] == hi_[leaving]) status_[leaving] = kAtLower;
    x_[leaving] = status_[leaving] == kAtUpper ? hi_[leaving] : lo_[leaving];
    pos_of_[leaving] = -1;
    basis_[leave_pos] = entering;
    status_[entering] = kBasic;
    pos_of_[entering] = leave_pos;

    const double pivot = alpha[leave_pos];
    const Eigen::RowVectorXd pivot_row = binv_.row(leave_pos) / pivot;
    binv_.noalias() -= alpha * pivot_row;
    binv_.row(leave_pos) = pivot_row;

    if (++pivots_since_refactor_ >= refactor_period) {
      Refactor();
      ComputeBasicValues();
    }
  }
}

// ---------------------------------------------------------------------------
// SimplexSolver

SimplexSolver::SimplexSolver(LinearProgram program)
    : program_(std::move(program)),
      engine_(std::make_unique<Engine>(program_)) {}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

int SimplexSolver::AddRow(std::vector<LpTerm> terms, Relation relation,
                          double rhs) {
  const int i = program_.AddSparseRow(std::move(terms), relation, rhs);
  engine_->OnRowAdded(program_);
  return i;
}

void SimplexSolver::SetRhs(int row, double rhs) { program_.SetRhs(row, rhs); }

void SimplexSolver::SetObjective(std::span<const double> coefs) {
  program_.SetObjective(coefs);
}

void SimplexSolver::ResetBasis() { engine_->Reset(program_); }

LpSolution SimplexSolver::Solve() {
  try {
    return engine_->Run(program_);
  } catch (const SolverError&) {
    engine_->Reset(program_);
    throw;
  }
}

LpSolution Solve(const LinearProgram& program) {
  SimplexSolver solver(program);
  return solver.Solve();
}

// ---------------------------------------------------------------------------
// Duality

DualProgram Dualize(const LinearProgram& program) {
  const int nv = program.num_vars();
  const int nr = program.num_rows();
  std::vector<double> shifted_rhs(nr);
  double offset = 0.0;
  std::vector<double> shift(nv, 0.0);
  std::vector<int> upper_vars;
  for (int j = 0; j < nv; ++j) {
    const double lo = program.lower(j);
    const double hi = program.upper(j);
    if (std::isfinite(lo)) {
      shift[j] = lo;
      offset += program.objective()[j] * lo;
      if (std::isfinite(hi)) upper_vars.push_back(j);
    } else if (std::isfinite(hi)) {
      throw InvalidInputError(
          "cannot dualize a variable bounded only from above");
    }
  }
  for (int i = 0; i < nr; ++i) {
    shifted_rhs[i] = program.row(i).rhs - program.RowActivity(i, shift);
  }

  DualProgram dual{LinearProgram(nr + static_cast<int>(upper_vars.size())),
                   upper_vars, offset};
  LinearProgram& d = dual.program;
  for (int i = 0; i < nr; ++i) {
    switch (program.row(i).relation) {
      case Relation::kLessEqual:
        d.SetBounds(i, 0.0, kInfinity);
        break;
      case Relation::kGreaterEqual:
        d.SetBounds(i, -kInfinity, 0.0);
        break;
      case Relation::kEqual:
        d.SetBounds(i, -kInfinity, kInfinity);
        break;
    }
    d.SetObjective(i, -shifted_rhs[i]);
  }
  std::vector<int> bound_var_of(nv, -1);
  for (size_t k = 0; k < upper_vars.size(); ++k) {
    const int j = upper_vars[k];
    bound_var_of[j] = nr + static_cast<int>(k);
    d.SetObjective(nr + static_cast<int>(k),
                   -(program.upper(j) - program.lower(j)));
  }
  std::vector<std::vector<LpTerm>> columns(nv);
  for (int i = 0; i < nr; ++i) {
    for (const LpTerm& t : program.row(i).terms) {
      columns[t.var].push_back({i, t.coef});
    }
  }
  for (int j = 0; j < nv; ++j) {
    if (bound_var_of[j] >= 0) columns[j].push_back({bound_var_of[j], 1.0});
    const Relation rel = std::isfinite(program.lower(j))
                             ? Relation::kGreaterEqual
                             : Relation::kEqual;
    d.AddSparseRow(std::move(columns[j]), rel, program.objective()[j]);
  }
  return dual;
}

LpSolution SolveWithDualTiebreak(const LinearProgram& program,
                                 std::span<const double> tiebreak) {
  if (static_cast<int>(tiebreak.size()) != program.num_rows()) {
    throw InvalidInputError("tiebreak needs one coefficient per row");
  }
  DualProgram dual = Dualize(program);
  const int nv = program.num_vars();
  const int nr = program.num_rows();
  const int nd = dual.program.num_vars();
  SimplexSolver solver(dual.program);
  const LpSolution first = solver.Solve();

  LpSolution out;
  if (first.status == LpStatus::kUnbounded) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  if (first.status == LpStatus::kInfeasible) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  // Pin the dual objective at its optimum, then push along the tiebreak.
  std::vector<LpTerm> pin;
  for (int v = 0; v < nd; ++v) {
    const double c = dual.program.objective()[v];
    if (c != 0.0) pin.push_back({v, c});
  }
  const double slack = 1e-9 * (1.0 + std::abs(first.objective));
  solver.AddRow(std::move(pin), Relation::kGreaterEqual,
                first.objective - slack);
  std::vector<double> second_objective(nd, 0.0);
  for (int i = 0; i < nr; ++i) second_objective[i] = tiebreak[i];
  solver.SetObjective(second_objective);
  const LpSolution second = solver.Solve();
  if (second.status == LpStatus::kUnbounded) {
    throw InvalidInputError("tiebreak objective is unbounded on the optimal "
                            "dual face");
  }
  if (second.status != LpStatus::kOptimal) {
    throw SolverError("second-stage tiebreak program lost feasibility");
  }

  out.status = LpStatus::kOptimal;
  out.iterations = first.iterations + second.iterations;
  out.objective = dual.objective_offset - first.objective;
  out.primal.resize(nv);
  for (int j = 0; j < nv; ++j) {
    const double lo = program.lower(j);
    out.primal[j] = (std::isfinite(lo) ? lo : 0.0) - first.duals[j];
  }
  out.duals.assign(second.primal.begin(), second.primal.begin() + nr);
  out.reduced_costs.assign(program.objective().begin(),
                           program.objective().end());
  for (int i = 0; i < nr; ++i) {
    for (const LpTerm& t : program.row(i).terms) {
      out.reduced_costs[t.var] -= out.duals[i] * t.coef;
    }
  }
  return out;
}

}  // namespace qprice
