#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

#include "aro/errors.hpp"

namespace aro::lp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// min <cost, x>  s.t.  ineq_lhs x <= ineq_rhs, eq_lhs x = eq_rhs,
// lower <= x <= upper (+-inf marks a free side). Empty lower/upper mean
// fully free variables.
struct LinearProgram {
  VectorXd cost;
  MatrixXd ineq_lhs;
  VectorXd ineq_rhs;
  MatrixXd eq_lhs;
  VectorXd eq_rhs;
  VectorXd lower;
  VectorXd upper;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_ineq() const { return static_cast<int>(ineq_rhs.size()); }
  int num_eq() const { return static_cast<int>(eq_rhs.size()); }

  static LinearProgram make(int n);
  void add_ineq(const VectorXd& row, double rhs);
  void add_eq(const VectorXd& row, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  VectorXd x;
  double objective = 0.0;
  // Duals for the original rows: stationarity
  //   c + ineq_lhs^T y_ineq + eq_lhs^T y_eq - mu_lower + mu_upper = 0
  // with y_ineq >= 0, mu_* >= 0, and strong duality against dual_objective.
  VectorXd dual_ineq;
  VectorXd dual_eq;
  double dual_objective = 0.0;
};

// Dense two-phase simplex, Dantzig pricing with a Bland fallback for
// degeneracy. Deterministic for identical input.
LpSolution solve_lp(const LinearProgram& lp);

// Largest t in [lo, hi] with predicate(t) true, assuming the predicate is
// monotone nonincreasing. Returns hi exactly when predicate(hi) holds.
// Throws NotEvenLo when predicate(lo) fails.
double bisect_max(const std::function<bool(double)>& predicate, double lo, double hi,
                  double tol);

// Second-order-cone row ||M x + m0||_2 <= <q, x> + q0 attached to an LP.
struct SocRow {
  MatrixXd M;
  VectorXd m0;
  VectorXd q;
  double q0 = 0.0;

  double violation(const VectorXd& x) const {
    return (M * x + m0).norm() - (q.dot(x) + q0);
  }
};

struct ConicProgram {
  LinearProgram lp;
  std::vector<SocRow> soc;
};

struct CutTrace {
  std::vector<double> objectives;  // relaxation objective per iteration
  int cuts = 0;
};

// Kelley cutting planes over the SOC rows: linearize each violated row at the
// relaxation optimum until the worst violation is <= tol (default 1e-6).
// Throws IterationLimit after max_cuts cuts.
LpSolution cutting_plane_norm2(const ConicProgram& cp, CutTrace* trace = nullptr,
                               double tolerance = 1e-6, int max_cuts = 500);

}  // namespace aro::lp
