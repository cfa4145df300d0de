#include "aro/robust_solve.hpp"

#include <cmath>
#include <sstream>

#include "aro/lp.hpp"
#include "aro/tolerances.hpp"
#include "counterpart.hpp"

namespace aro {
namespace {

// Least-violation diagnosis for the error path: min tau with every robust
// row relaxed by tau, reporting the constraint that stays violated.
std::string diagnose_infeasible(const RobustProgram& p, const detail::CounterpartLp& cp) {
  lp::LinearProgram relaxed = cp.lp;
  const int n = relaxed.num_vars();
  relaxed.cost = VectorXd::Zero(n + 1);
  relaxed.cost(n) = 1.0;
  MatrixXd lhs(relaxed.ineq_lhs.rows(), n + 1);
  lhs.block(0, 0, relaxed.ineq_lhs.rows(), n) = relaxed.ineq_lhs;
  lhs.col(n) = VectorXd::Constant(relaxed.ineq_lhs.rows(), -1.0);
  relaxed.ineq_lhs = lhs;
  if (relaxed.lower.size() > 0) {
    relaxed.lower.conservativeResize(n + 1);
    relaxed.upper.conservativeResize(n + 1);
    relaxed.lower(n) = 0.0;
    relaxed.upper(n) = lp::kInf;
  }
  lp::LpSolution sol = lp::solve_lp(relaxed);
  std::ostringstream msg;
  msg << "robust counterpart infeasible";
  if (sol.status == lp::LpStatus::Optimal) {
    int worst_row = -1;
    double worst = -lp::kInf;
    for (int r = 0; r < cp.lp.num_ineq(); ++r) {
      double resid = cp.lp.ineq_lhs.row(r).dot(sol.x.head(n)) - cp.lp.ineq_rhs(r);
      if (resid > worst) {
        worst = resid;
        worst_row = r;
      }
    }
    const int decision_rows = static_cast<int>(p.decision_set.G.rows());
    msg << "; minimum relaxation " << sol.objective;
    if (worst_row >= decision_rows && !p.constraints.empty()) {
      msg << ", worst row maps to constraint "
          << (worst_row - decision_rows) % static_cast<int>(p.constraints.size());
    } else if (worst_row >= 0) {
      msg << ", worst row is decision-set row " << worst_row;
    }
  }
  return msg.str();
}

}  // namespace

SolveReport solve_robust(const RobustProgram& p, const ScaledSet& s) {
  std::vector<VectorXd> base_vertices;
  std::vector<VectorXd> vertices;
  if (s.base.is_polytope()) {
    base_vertices = enumerate_vertices(s.base.polytope());
    vertices = detail::scaled_vertices(s, base_vertices);
    if (vertices.empty()) fail(ErrorCode::EmptySet, "scaled set has no vertices");
  }

  detail::CounterpartLp cp = detail::build_counterpart(p, s, base_vertices, true);
  lp::LpSolution sol = detail::solve_counterpart(cp);
  if (sol.status == lp::LpStatus::Infeasible)
    fail(ErrorCode::Infeasible, diagnose_infeasible(p, cp));
  if (sol.status == lp::LpStatus::Unbounded)
    fail(ErrorCode::Infeasible, "robust counterpart unbounded below");

  SolveReport report;
  report.x_opt = sol.x.head(p.decision_dim());
  report.objective = p.objective.dot(report.x_opt);

  const bool is_poly = s.base.is_polytope();
  const double rho = is_poly ? 0.0 : s.alpha * s.base.norm_ball().radius;
  for (size_t j = 0; j < p.constraints.size(); ++j) {
    const BiAffineConstraint& c = p.constraints[j];
    VectorXd z = c.e;
    if (c.Q.size() > 0) z += c.Q.transpose() * report.x_opt;

    VectorXd worst_xi;
    int support = -1;
    if (is_poly) {
      double best = -lp::kInf;
      for (size_t k = 0; k < vertices.size(); ++k) {
        double val = z.dot(vertices[k]);
        if (val > best) {
          best = val;
          support = static_cast<int>(k);
        }
      }
      worst_xi = vertices[static_cast<size_t>(support)];
    } else {
      const Norm pn = s.base.norm_ball().p;
      worst_xi = VectorXd::Zero(z.size());
      double zn = norm_value(pn == Norm::L2 ? Norm::L2 : (pn == Norm::L1 ? Norm::Linf : Norm::L1), z);
      if (zn > 1e-14) {
        switch (pn) {
          case Norm::L2:
            worst_xi = rho * z / z.norm();
            break;
          case Norm::Linf:
            for (int k = 0; k < z.size(); ++k) worst_xi(k) = rho * (z(k) >= 0 ? 1.0 : -1.0);
            break;
          case Norm::L1: {
            int kmax = 0;
            z.cwiseAbs().maxCoeff(&kmax);
            worst_xi(kmax) = rho * (z(kmax) >= 0 ? 1.0 : -1.0);
            break;
          }
        }
      }
    }
    report.worst_case_xi.push_back(worst_xi);
    if (eval_constraint(c, report.x_opt, worst_xi) >= -tol::kLpFeasibility)
      report.binding.push_back({static_cast<int>(j), support});
  }
  return report;
}

}  // namespace aro
