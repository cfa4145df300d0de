#include "counterpart.hpp"

#include "aro/tolerances.hpp"

namespace aro::detail {
namespace {

void add_decision_rows(lp::LinearProgram& lp, const RobustProgram& p, int total_vars) {
  for (int r = 0; r < p.decision_set.G.rows(); ++r) {
    VectorXd row = VectorXd::Zero(total_vars);
    row.head(p.decision_dim()) = p.decision_set.G.row(r).transpose();
    lp.add_ineq(row, p.decision_set.h(r));
  }
}

}  // namespace

std::vector<VectorXd> scaled_vertices(const ScaledSet& s,
                                      const std::vector<VectorXd>& base_vertices) {
  std::vector<VectorXd> out;
  out.reserve(base_vertices.size());
  for (const VectorXd& w : base_vertices)
    out.push_back(s.alpha * w + (1.0 - s.alpha) * s.anchor);
  return out;
}

CounterpartLp counterpart_polytope(const RobustProgram& p,
                                   const std::vector<VectorXd>& vertices,
                                   bool with_objective) {
  const int n = p.decision_dim();
  CounterpartLp cp;
  cp.num_decision = n;
  cp.lp = lp::LinearProgram::make(n);
  if (with_objective) cp.lp.cost = p.objective;
  add_decision_rows(cp.lp, p, n);
  // One row per (constraint, vertex): f bi-affine in xi makes this exact.
  for (const BiAffineConstraint& c : p.constraints) {
    for (const VectorXd& w : vertices) {
      VectorXd row = c.a;
      if (c.Q.size() > 0) row += c.Q * w;
      cp.lp.add_ineq(row, -c.constant - c.e.dot(w));
    }
  }
  return cp;
}

CounterpartLp counterpart_ball(const RobustProgram& p, double radius, Norm ball_norm,
                               bool with_objective) {
  const int n = p.decision_dim();
  const int m = p.uncertainty_dim;
  const Norm q = dual_norm(ball_norm);

  // Count epigraph variables: none for constant coefficient vectors, one per
  // constraint for sup-norm/2-norm duals, m per constraint for the 1-norm dual.
  int extra = 0;
  std::vector<int> t_offset(p.constraints.size(), -1);
  for (size_t j = 0; j < p.constraints.size(); ++j) {
    if (!p.constraints[j].has_cross_term()) continue;
    t_offset[j] = extra;
    extra += (q == Norm::L1) ? m : 1;
  }
  const int total = n + extra;

  CounterpartLp cp;
  cp.num_decision = n;
  cp.lp = lp::LinearProgram::make(total);
  if (with_objective) cp.lp.cost.head(n) = p.objective;
  cp.lp.lower = VectorXd::Constant(total, -lp::kInf);
  cp.lp.upper = VectorXd::Constant(total, lp::kInf);
  for (int k = n; k < total; ++k) cp.lp.lower(k) = 0.0;
  add_decision_rows(cp.lp, p, total);

  for (size_t j = 0; j < p.constraints.size(); ++j) {
    const BiAffineConstraint& c = p.constraints[j];
    VectorXd base = VectorXd::Zero(total);
    base.head(n) = c.a;
    if (!c.has_cross_term()) {
      // sup over the ball is a constant: base(x) + radius ||e||_q <= 0.
      cp.lp.add_ineq(base, -c.constant - radius * norm_value(q, c.e));
      continue;
    }
    const int t0 = n + t_offset[j];
    if (q == Norm::L1) {
      for (int k = 0; k < m; ++k) {
        // +-(e_k + Q_k . x) <= t_k
        VectorXd pos = VectorXd::Zero(total);
        pos.head(n) = c.Q.col(k);
        pos(t0 + k) = -1.0;
        cp.lp.add_ineq(pos, -c.e(k));
        VectorXd neg = VectorXd::Zero(total);
        neg.head(n) = -c.Q.col(k);
        neg(t0 + k) = -1.0;
        cp.lp.add_ineq(neg, c.e(k));
      }
      VectorXd main = base;
      for (int k = 0; k < m; ++k) main(t0 + k) = radius;
      cp.lp.add_ineq(main, -c.constant);
    } else if (q == Norm::Linf) {
      for (int k = 0; k < m; ++k) {
        VectorXd pos = VectorXd::Zero(total);
        pos.head(n) = c.Q.col(k);
        pos(t0) = -1.0;
        cp.lp.add_ineq(pos, -c.e(k));
        VectorXd neg = VectorXd::Zero(total);
        neg.head(n) = -c.Q.col(k);
        neg(t0) = -1.0;
        cp.lp.add_ineq(neg, c.e(k));
      }
      VectorXd main = base;
      main(t0) = radius;
      cp.lp.add_ineq(main, -c.constant);
    } else {
      lp::SocRow soc;
      soc.M = MatrixXd::Zero(m, total);
      soc.M.block(0, 0, m, n) = c.Q.transpose();
      soc.m0 = c.e;
      soc.q = VectorXd::Zero(total);
      soc.q(t0) = 1.0;
      cp.soc.push_back(std::move(soc));
      VectorXd main = base;
      main(t0) = radius;
      cp.lp.add_ineq(main, -c.constant);
    }
  }
  return cp;
}

CounterpartLp build_counterpart(const RobustProgram& p, const ScaledSet& s,
                                const std::vector<VectorXd>& base_vertices,
                                bool with_objective) {
  if (s.base.is_polytope())
    return counterpart_polytope(p, scaled_vertices(s, base_vertices), with_objective);
  const NormBall& ball = s.base.norm_ball();
  return counterpart_ball(p, s.alpha * ball.radius, ball.p, with_objective);
}

lp::LpSolution solve_counterpart(const CounterpartLp& cp) {
  if (cp.soc.empty()) return lp::solve_lp(cp.lp);
  lp::ConicProgram conic{cp.lp, cp.soc};
  return lp::cutting_plane_norm2(conic);
}

}  // namespace aro::detail
