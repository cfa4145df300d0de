#include "aro/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aro/lp.hpp"
#include "aro/tolerances.hpp"

namespace aro {
namespace {

// Support LP  max <dir, xi>  over  V xi <= d.
lp::LpSolution support_lp(const Polytope& poly, const VectorXd& dir) {
  lp::LinearProgram lp = lp::LinearProgram::make(poly.dim());
  lp.cost = -dir;
  for (int r = 0; r < poly.rows(); ++r) lp.add_ineq(poly.V.row(r).transpose(), poly.d(r));
  return lp::solve_lp(lp);
}

bool polytope_contains(const MatrixXd& V, const VectorXd& rhs, const VectorXd& xi) {
  if (V.cols() != xi.size()) fail(ErrorCode::DimensionMismatch, "membership query dimension");
  return ((V * xi - rhs).array() <= tol::kMembership).all();
}

void next_combination(std::vector<int>& idx, int limit, bool& done) {
  int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == limit - k + i) --i;
  if (i < 0) {
    done = true;
    return;
  }
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
}

std::vector<VectorXd> enumerate_vertices_impl(const MatrixXd& V, const VectorXd& rhs) {
  const int m = static_cast<int>(V.cols());
  const int L = static_cast<int>(V.rows());
  if (m > 4) fail(ErrorCode::DimensionTooLarge, "vertex enumeration limited to dim <= 4");
  if (L < m) fail(ErrorCode::UnboundedSet, "fewer facets than dimensions");

  Polytope poly{V, rhs};
  bounding_box(poly);  // throws UnboundedSet for unbounded sets

  std::vector<VectorXd> vertices;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    MatrixXd A(m, m);
    VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      A.row(i) = V.row(idx[i]);
      b(i) = rhs(idx[i]);
    }
    Eigen::FullPivLU<MatrixXd> lu(A);
    if (lu.rank() == m) {
      VectorXd xi = lu.solve(b);
      if (((V * xi - rhs).array() <= tol::kLpFeasibility).all()) {
        bool duplicate = false;
        for (const VectorXd& w : vertices) {
          if ((w - xi).norm() <= tol::kVertexDedup) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) vertices.push_back(xi);
        if (static_cast<int>(vertices.size()) > 4096)
          fail(ErrorCode::DimensionTooLarge, "vertex cap 4096 exceeded");
      }
    }
    next_combination(idx, L, done);
  }
  return vertices;
}

}  // namespace

ScaledSet make_scaled(const UncertaintySet& base, double alpha, const VectorXd& anchor) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorCode::InvalidInput, "alpha must lie in [0, 1]");
  if (base.is_polytope()) {
    const Polytope& poly = base.polytope();
    if (anchor.size() != poly.dim()) fail(ErrorCode::DimensionMismatch, "anchor dimension");
    if (!((poly.V * anchor - poly.d).array() <= tol::kGeneral).all())
      fail(ErrorCode::AnchorOutsideBase, "anchor violates V v <= d");
  }
  ScaledSet s;
  s.base = base;
  s.alpha = alpha;
  s.anchor = base.is_polytope() ? anchor : VectorXd::Zero(base.dim());
  return s;
}

ScaledSet make_scaled(const UncertaintySet& base, double alpha) {
  VectorXd anchor = base.is_polytope() ? chebyshev_center(base.polytope())
                                       : VectorXd::Zero(base.dim());
  return make_scaled(base, alpha, anchor);
}

VectorXd homothety_rhs(const ScaledSet& s) {
  const Polytope& poly = s.base.polytope();
  if (s.anchor.size() != poly.dim()) fail(ErrorCode::DimensionMismatch, "anchor dimension");
  VectorXd vv = poly.V * s.anchor;
  if (!((vv - poly.d).array() <= tol::kGeneral).all())
    fail(ErrorCode::AnchorOutsideBase, "anchor violates V v <= d");
  return s.alpha * poly.d + (1.0 - s.alpha) * vv;
}

bool contains(const UncertaintySet& s, const VectorXd& xi) {
  if (s.is_polytope()) return polytope_contains(s.polytope().V, s.polytope().d, xi);
  const NormBall& ball = s.norm_ball();
  if (xi.size() != ball.dim) fail(ErrorCode::DimensionMismatch, "membership query dimension");
  return norm_value(ball.p, xi) <= ball.radius + tol::kMembership;
}

bool contains(const ScaledSet& s, const VectorXd& xi) {
  if (s.base.is_polytope())
    return polytope_contains(s.base.polytope().V, homothety_rhs(s), xi);
  const NormBall& ball = s.base.norm_ball();
  if (xi.size() != ball.dim) fail(ErrorCode::DimensionMismatch, "membership query dimension");
  return norm_value(ball.p, xi) <= s.alpha * ball.radius + tol::kMembership;
}

int coverage_count(const ScaledSet& s, const SampleSet& data) {
  int covered = 0;
  for (const VectorXd& xi : data.samples) {
    if (contains(s, xi)) ++covered;
  }
  return covered;
}

std::vector<VectorXd> enumerate_vertices(const Polytope& poly) {
  return enumerate_vertices_impl(poly.V, poly.d);
}

std::vector<VectorXd> enumerate_vertices(const UncertaintySet& s) {
  return enumerate_vertices(s.polytope());
}

std::vector<VectorXd> enumerate_vertices(const ScaledSet& s) {
  const Polytope& poly = s.base.polytope();
  return enumerate_vertices_impl(poly.V, homothety_rhs(s));
}

VectorXd chebyshev_center(const Polytope& poly) {
  const int m = poly.dim();
  const int L = poly.rows();
  // Variables (xi, r): max r subject to V_l xi + ||V_l|| r <= d_l.
  lp::LinearProgram lp = lp::LinearProgram::make(m + 1);
  lp.cost(m) = -1.0;
  lp.lower = VectorXd::Constant(m + 1, -lp::kInf);
  lp.upper = VectorXd::Constant(m + 1, lp::kInf);
  lp.lower(m) = 0.0;
  for (int l = 0; l < L; ++l) {
    VectorXd row(m + 1);
    row.head(m) = poly.V.row(l).transpose();
    row(m) = poly.V.row(l).norm();
    lp.add_ineq(row, poly.d(l));
  }
  lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status == lp::LpStatus::Infeasible) fail(ErrorCode::EmptySet, "polytope is empty");
  if (sol.status == lp::LpStatus::Unbounded)
    fail(ErrorCode::UnboundedSet, "inscribed radius is unbounded");
  const double r_star = sol.x(m);

  // Lexicographic tie-break: pin r, then minimize coordinates in order.
  lp.ineq_lhs.conservativeResize(lp.ineq_lhs.rows() + 1, m + 1);
  lp.ineq_lhs.row(lp.ineq_lhs.rows() - 1).setZero();
  lp.ineq_lhs(lp.ineq_lhs.rows() - 1, m) = -1.0;
  lp.ineq_rhs.conservativeResize(lp.ineq_rhs.size() + 1);
  lp.ineq_rhs(lp.ineq_rhs.size() - 1) = -(r_star - tol::kMembership);
  VectorXd center(m);
  for (int k = 0; k < m; ++k) {
    lp.cost.setZero();
    lp.cost(k) = 1.0;
    lp::LpSolution step = lp::solve_lp(lp);
    if (step.status != lp::LpStatus::Optimal)
      fail(ErrorCode::NumericalFailure, "chebyshev tie-break LP failed");
    center(k) = step.x(k);
    VectorXd row = VectorXd::Zero(m + 1);
    row(k) = 1.0;
    lp.add_ineq(row, center(k) + tol::kMembership);
  }
  return center;
}

VectorXd chebyshev_center(const UncertaintySet& s) {
  if (s.is_norm_ball()) return VectorXd::Zero(s.dim());
  return chebyshev_center(s.polytope());
}

Box bounding_box(const Polytope& poly) {
  const int m = poly.dim();
  Box box{VectorXd::Zero(m), VectorXd::Zero(m)};
  for (int k = 0; k < m; ++k) {
    VectorXd dir = VectorXd::Zero(m);
    dir(k) = 1.0;
    lp::LpSolution hi = support_lp(poly, dir);
    if (hi.status == lp::LpStatus::Unbounded)
      fail(ErrorCode::UnboundedSet, "polytope unbounded above in a coordinate");
    if (hi.status == lp::LpStatus::Infeasible) fail(ErrorCode::EmptySet, "polytope is empty");
    lp::LpSolution lo = support_lp(poly, -dir);
    if (lo.status == lp::LpStatus::Unbounded)
      fail(ErrorCode::UnboundedSet, "polytope unbounded below in a coordinate");
    if (lo.status == lp::LpStatus::Infeasible) fail(ErrorCode::EmptySet, "polytope is empty");
    box.hi(k) = hi.x(k);
    box.lo(k) = lo.x(k);
  }
  return box;
}

Box bounding_box(const UncertaintySet& s) {
  if (s.is_polytope()) return bounding_box(s.polytope());
  const NormBall& ball = s.norm_ball();
  return Box{VectorXd::Constant(ball.dim, -ball.radius),
             VectorXd::Constant(ball.dim, ball.radius)};
}

}  // namespace aro
