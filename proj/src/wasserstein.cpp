#include "aro/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aro/lp.hpp"
#include "aro/tolerances.hpp"

namespace aro {
namespace {

// Monolithic programs stay comfortable up to this many per-sample blocks.
constexpr int kMonolithicBlockCap = 64;
constexpr double kInnerFloor = -1.5;  // values below -1 are all equivalent

struct ProblemData {
  MatrixXd A;
  VectorXd b;
  MatrixXd C;
  VectorXd d;
  int m = 0;
  int L = 0;
  int LS = 0;
  int N = 0;
};

ProblemData prepare(const AmbiguitySpec& amb, const Polytope& support, const Polytope& safe) {
  if (amb.data.size() < 1) fail(ErrorCode::EmptySamples, "quantification needs samples");
  if (!(amb.epsilon >= 0)) fail(ErrorCode::InvalidInput, "epsilon must be nonnegative");
  ProblemData pd;
  pd.A = safe.V;
  pd.b = safe.d;
  pd.C = support.V;
  pd.d = support.d;
  pd.m = support.dim();
  pd.L = safe.rows();
  pd.LS = support.rows();
  pd.N = amb.data.size();
  if (safe.dim() != pd.m) fail(ErrorCode::DimensionMismatch, "safe vs support dimension");
  if (amb.data.dim() != pd.m) fail(ErrorCode::DimensionMismatch, "sample dimension");
  return pd;
}

// sup <dir, xi> over a polytope; status passed through.
lp::LpSolution support_function(const MatrixXd& V, const VectorXd& d, const VectorXd& dir) {
  lp::LinearProgram lp = lp::LinearProgram::make(static_cast<int>(V.cols()));
  lp.cost = -dir;
  for (int r = 0; r < V.rows(); ++r) lp.add_ineq(V.row(r).transpose(), d(r));
  return lp::solve_lp(lp);
}

void check_worst_hypothesis(const ProblemData& pd) {
  for (int l = 0; l < pd.L; ++l) {
    lp::LpSolution sol = support_function(pd.C, pd.d, pd.A.row(l).transpose());
    if (sol.status == lp::LpStatus::Infeasible)
      fail(ErrorCode::HypothesisViolated, "support polytope is empty");
    if (sol.status == lp::LpStatus::Optimal && -sol.objective < pd.b(l) - tol::kLpFeasibility) {
      std::ostringstream msg;
      msg << "half-space " << l << " misses the support (max " << -sol.objective
          << " < bound " << pd.b(l) << ")";
      fail(ErrorCode::HypothesisViolated, msg.str());
    }
  }
}

void check_best_hypothesis(const ProblemData& pd) {
  lp::LinearProgram lp = lp::LinearProgram::make(pd.m);
  for (int r = 0; r < pd.L; ++r) lp.add_ineq(pd.A.row(r).transpose(), pd.b(r));
  for (int r = 0; r < pd.LS; ++r) lp.add_ineq(pd.C.row(r).transpose(), pd.d(r));
  if (lp::solve_lp(lp).status != lp::LpStatus::Optimal)
    fail(ErrorCode::HypothesisViolated, "safe set does not intersect the support");
}

// Rows enforcing ||Z vars||_* <= lambda for the dual of the ground norm.
// Monolithic callers pass lam_col >= 0; per-sample callers pass lam_col = -1
// and collect the rows whose rhs carries lambda. One-dimensional z needs only
// the two signed rows whatever the norm.
void emit_dual_norm_rows(lp::LinearProgram& lp, std::vector<lp::SocRow>* soc,
                         const MatrixXd& Z, Norm ground, int lam_col, int aux_start,
                         std::vector<int>* lambda_rows) {
  const int m = static_cast<int>(Z.rows());
  const int total = lp.num_vars();
  auto lam_rhs = [&](VectorXd& row) {
    if (lam_col >= 0) {
      row(lam_col) -= 1.0;
      return 0.0;
    }
    if (lambda_rows) lambda_rows->push_back(lp.num_ineq());
    return 0.0;  // rhs gets overwritten with lambda before each solve
  };

  const bool linear_box = (m == 1) || ground == Norm::L1;
  if (linear_box) {
    for (int k = 0; k < m; ++k) {
      for (double sign : {1.0, -1.0}) {
        VectorXd row = sign * Z.row(k).transpose();
        double rhs = lam_rhs(row);
        lp.add_ineq(row, rhs);
      }
    }
    return;
  }
  if (ground == Norm::Linf) {
    // dual 1-norm via epigraph: u_k >= |z_k|, sum u <= lambda.
    for (int k = 0; k < m; ++k) {
      for (double sign : {1.0, -1.0}) {
        VectorXd row = sign * Z.row(k).transpose();
        row(aux_start + k) -= 1.0;
        lp.add_ineq(row, 0.0);
      }
    }
    VectorXd sum_row = VectorXd::Zero(total);
    for (int k = 0; k < m; ++k) sum_row(aux_start + k) = 1.0;
    double rhs = lam_rhs(sum_row);
    lp.add_ineq(sum_row, rhs);
    return;
  }
  // ground 2-norm: second-order row, tightened by cutting planes.
  lp::SocRow row;
  row.M = Z;
  row.m0 = VectorXd::Zero(m);
  row.q = VectorXd::Zero(total);
  if (lam_col >= 0) row.q(lam_col) = 1.0;
  soc->push_back(std::move(row));
}

int dual_aux_count(Norm ground, int m) {
  return (m > 1 && ground == Norm::Linf) ? m : 0;
}

DualCertificate make_certificate(const ProblemData& pd, bool worst, double lambda,
                                 const VectorXd& s, const MatrixXd& theta,
                                 std::vector<MatrixXd> gamma, double epsilon) {
  DualCertificate cert;
  cert.lambda = lambda;
  cert.s = s;
  cert.theta = theta;
  cert.gamma = std::move(gamma);
  cert.objective = lambda * epsilon + s.sum() / pd.N;
  (void)worst;
  return cert;
}

// ---------------------------------------------------------------------------
// Monolithic assembly.

struct MonolithicResult {
  double value = 0.0;
  DualCertificate cert;
};

MonolithicResult solve_monolithic(const ProblemData& pd, const AmbiguitySpec& amb, bool worst) {
  const int m = pd.m;
  const int aux = dual_aux_count(amb.ground_norm, m);
  const int block = worst ? (1 + pd.LS + aux) : (pd.L + pd.LS + aux);
  const int blocks = worst ? pd.N * pd.L : pd.N;
  const int total = 1 + pd.N + blocks * block;

  lp::LinearProgram lp = lp::LinearProgram::make(total);
  std::vector<lp::SocRow> soc;
  lp.lower = VectorXd::Zero(total);
  lp.upper = VectorXd::Constant(total, lp::kInf);
  lp.cost(0) = amb.epsilon;
  for (int i = 0; i < pd.N; ++i) lp.cost(1 + i) = 1.0 / pd.N;

  for (int i = 0; i < pd.N; ++i) {
    const VectorXd& xi = amb.data.samples[i];
    VectorXd delta = pd.d - pd.C * xi;
    if (worst) {
      for (int l = 0; l < pd.L; ++l) {
        const int base = 1 + pd.N + (i * pd.L + l) * block;
        const double beta = pd.b(l) - pd.A.row(l).dot(xi);
        VectorXd srow = VectorXd::Zero(total);
        srow(base) = -beta;
        for (int r = 0; r < pd.LS; ++r) srow(base + 1 + r) = delta(r);
        srow(1 + i) = -1.0;
        lp.add_ineq(srow, -1.0);

        MatrixXd Z = MatrixXd::Zero(m, total);
        Z.col(base) = pd.A.row(l).transpose();
        Z.block(0, base + 1, m, pd.LS) = -pd.C.transpose();
        emit_dual_norm_rows(lp, &soc, Z, amb.ground_norm, 0, base + 1 + pd.LS, nullptr);
      }
    } else {
      const int base = 1 + pd.N + i * block;
      VectorXd beta = pd.b - pd.A * xi;
      VectorXd srow = VectorXd::Zero(total);
      for (int l = 0; l < pd.L; ++l) srow(base + l) = beta(l);
      for (int r = 0; r < pd.LS; ++r) srow(base + pd.L + r) = delta(r);
      srow(1 + i) = -1.0;
      lp.add_ineq(srow, -1.0);

      MatrixXd Z = MatrixXd::Zero(m, total);
      Z.block(0, base, m, pd.L) = pd.A.transpose();
      Z.block(0, base + pd.L, m, pd.LS) = pd.C.transpose();
      emit_dual_norm_rows(lp, &soc, Z, amb.ground_norm, 0, base + pd.L + pd.LS, nullptr);
    }
  }

  lp::LpSolution sol;
  if (soc.empty()) {
    sol = lp::solve_lp(lp);
  } else {
    lp::ConicProgram conic{lp, soc};
    sol = lp::cutting_plane_norm2(conic, nullptr, 1e-8, 2000);
  }
  if (sol.status != lp::LpStatus::Optimal)
    fail(ErrorCode::NumericalFailure, "quantification program did not solve");

  MonolithicResult out;
  out.value = sol.objective;
  VectorXd s = sol.x.segment(1, pd.N);
  MatrixXd theta(pd.N, pd.L);
  std::vector<MatrixXd> gamma;
  gamma.reserve(pd.N);
  for (int i = 0; i < pd.N; ++i) {
    if (worst) {
      MatrixXd g(pd.L, pd.LS);
      for (int l = 0; l < pd.L; ++l) {
        const int base = 1 + pd.N + (i * pd.L + l) * block;
        theta(i, l) = sol.x(base);
        g.row(l) = sol.x.segment(base + 1, pd.LS).transpose();
      }
      gamma.push_back(g);
    } else {
      const int base = 1 + pd.N + i * block;
      theta.row(i) = sol.x.segment(base, pd.L).transpose();
      gamma.push_back(sol.x.segment(base + pd.L, pd.LS).transpose());
    }
  }
  out.cert = make_certificate(pd, worst, sol.x(0), s, theta, std::move(gamma), amb.epsilon);
  return out;
}

// ---------------------------------------------------------------------------
// Scalar decomposition: h(lambda) = eps*lambda + mean_i s_i(lambda) with each
// s_i from a tiny LP; h is convex piecewise-linear, minimized by bracketing
// plus golden-section.

struct InnerBlock {
  lp::LinearProgram lp;
  std::vector<int> lambda_rows;
  std::vector<lp::SocRow> soc;  // q0 carries lambda when nonempty
};

// min <cost, w> s.t. ||Z w||_* <= lambda, w >= 0, cost.w >= kInnerFloor.
InnerBlock build_inner(const VectorXd& cost, const MatrixXd& Z, Norm ground) {
  const int vars = static_cast<int>(cost.size());
  const int aux = dual_aux_count(ground, static_cast<int>(Z.rows()));
  InnerBlock blk;
  blk.lp = lp::LinearProgram::make(vars + aux);
  blk.lp.lower = VectorXd::Zero(vars + aux);
  blk.lp.upper = VectorXd::Constant(vars + aux, lp::kInf);
  blk.lp.cost.head(vars) = cost;
  MatrixXd Zfull = MatrixXd::Zero(Z.rows(), vars + aux);
  Zfull.block(0, 0, Z.rows(), vars) = Z;
  emit_dual_norm_rows(blk.lp, &blk.soc, Zfull, ground, -1, vars, &blk.lambda_rows);
  VectorXd floor_row = VectorXd::Zero(vars + aux);
  floor_row.head(vars) = -cost;
  blk.lp.add_ineq(floor_row, -kInnerFloor);
  return blk;
}

double solve_inner(InnerBlock& blk, double lambda, VectorXd* w_out) {
  for (int r : blk.lambda_rows) blk.lp.ineq_rhs(r) = lambda;
  lp::LpSolution sol;
  if (blk.soc.empty()) {
    sol = lp::solve_lp(blk.lp);
  } else {
    for (lp::SocRow& row : blk.soc) row.q0 = lambda;
    lp::ConicProgram conic{blk.lp, blk.soc};
    sol = lp::cutting_plane_norm2(conic, nullptr, 1e-9, 500);
  }
  if (sol.status != lp::LpStatus::Optimal)
    fail(ErrorCode::NumericalFailure, "inner quantification block did not solve");
  if (w_out) *w_out = sol.x;
  return sol.objective;
}

struct DecomposedEvaluator {
  const ProblemData& pd;
  const AmbiguitySpec& amb;
  bool worst;
  std::vector<InnerBlock> blocks;  // per (i,l) when worst, per i otherwise

  DecomposedEvaluator(const ProblemData& pdata, const AmbiguitySpec& a, bool w)
      : pd(pdata), amb(a), worst(w) {
    for (int i = 0; i < pd.N; ++i) {
      const VectorXd& xi = amb.data.samples[i];
      VectorXd delta = pd.d - pd.C * xi;
      if (worst) {
        for (int l = 0; l < pd.L; ++l) {
          const double beta = pd.b(l) - pd.A.row(l).dot(xi);
          VectorXd cost(1 + pd.LS);
          cost(0) = -beta;
          cost.tail(pd.LS) = delta;
          MatrixXd Z(pd.m, 1 + pd.LS);
          Z.col(0) = pd.A.row(l).transpose();
          Z.block(0, 1, pd.m, pd.LS) = -pd.C.transpose();
          blocks.push_back(build_inner(cost, Z, amb.ground_norm));
        }
      } else {
        VectorXd beta = pd.b - pd.A * xi;
        VectorXd cost(pd.L + pd.LS);
        cost.head(pd.L) = beta;
        cost.tail(pd.LS) = delta;
        MatrixXd Z(pd.m, pd.L + pd.LS);
        Z.block(0, 0, pd.m, pd.L) = pd.A.transpose();
        Z.block(0, pd.L, pd.m, pd.LS) = pd.C.transpose();
        blocks.push_back(build_inner(cost, Z, amb.ground_norm));
      }
    }
  }

  double sample_value(int i, double lambda, MatrixXd* theta_row, MatrixXd* gamma_out) {
    if (worst) {
      double best = -lp::kInf;
      for (int l = 0; l < pd.L; ++l) {
        VectorXd w;
        double v = solve_inner(blocks[i * pd.L + l], lambda, (theta_row || gamma_out) ? &w : nullptr);
        if (theta_row) (*theta_row)(0, l) = w(0);
        if (gamma_out) gamma_out->row(l) = w.segment(1, pd.LS).transpose();
        best = std::max(best, 1.0 + v);
      }
      return std::max(0.0, best);
    }
    VectorXd w;
    double v = solve_inner(blocks[i], lambda, (theta_row || gamma_out) ? &w : nullptr);
    if (theta_row) *theta_row = w.head(pd.L).transpose();
    if (gamma_out) *gamma_out = w.segment(pd.L, pd.LS).transpose();
    return std::max(0.0, 1.0 + v);
  }

  double h(double lambda) {
    double total = 0.0;
    for (int i = 0; i < pd.N; ++i) total += sample_value(i, lambda, nullptr, nullptr);
    return amb.epsilon * lambda + total / pd.N;
  }
};

MonolithicResult solve_decomposed(const ProblemData& pd, const AmbiguitySpec& amb, bool worst) {
  DecomposedEvaluator eval(pd, amb, worst);

  // Bracket the convex h by doubling, then golden-section.
  double lo = 0.0;
  double hi = 1.0;
  double h_lo = eval.h(lo);
  double h_hi = eval.h(hi);
  double prev = lo;
  double h_prev = h_lo;
  int guard = 0;
  while (h_hi < h_prev - 1e-14 * (1.0 + std::abs(h_prev)) && guard < 48) {
    prev = hi;
    h_prev = h_hi;
    hi *= 2.0;
    h_hi = eval.h(hi);
    ++guard;
  }

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double bb = hi;
  double c1 = bb - phi * (bb - a);
  double c2 = a + phi * (bb - a);
  double f1 = eval.h(c1);
  double f2 = eval.h(c2);
  const double target = std::max(1e-10, 1e-12 * hi);
  while (bb - a > target) {
    if (f1 <= f2) {
      bb = c2;
      c2 = c1;
      f2 = f1;
      c1 = bb - phi * (bb - a);
      f1 = eval.h(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (bb - a);
      f2 = eval.h(c2);
    }
  }
  double lambda = 0.5 * (a + bb);
  double h_best = eval.h(lambda);
  // Endpoint guard: flat-bottomed h around zero keeps the true optimum there.
  if (h_lo <= h_best) {
    lambda = lo;
    h_best = h_lo;
  }

  MonolithicResult out;
  VectorXd s(pd.N);
  MatrixXd theta(pd.N, pd.L);
  std::vector<MatrixXd> gamma;
  gamma.reserve(pd.N);
  for (int i = 0; i < pd.N; ++i) {
    MatrixXd theta_row(1, pd.L);
    MatrixXd g = worst ? MatrixXd(pd.L, pd.LS) : MatrixXd(1, pd.LS);
    s(i) = eval.sample_value(i, lambda, &theta_row, &g);
    theta.row(i) = theta_row.row(0);
    gamma.push_back(g);
  }
  out.value = amb.epsilon * lambda + s.sum() / pd.N;
  out.cert = make_certificate(pd, worst, lambda, s, theta, std::move(gamma), amb.epsilon);
  return out;
}

QuantifyResult run_quantification(const AmbiguitySpec& amb, const Polytope& support,
                                  const Polytope& safe, bool worst, QuantifyMethod method) {
  ProblemData pd = prepare(amb, support, safe);
  if (worst) {
    check_worst_hypothesis(pd);
  } else {
    check_best_hypothesis(pd);
  }

  bool monolithic;
  switch (method) {
    case QuantifyMethod::Monolithic: monolithic = true; break;
    case QuantifyMethod::Decomposed: monolithic = false; break;
    default:
      monolithic = (worst ? pd.N * pd.L : pd.N) <= kMonolithicBlockCap;
  }
  MonolithicResult res =
      monolithic ? solve_monolithic(pd, amb, worst) : solve_decomposed(pd, amb, worst);

  QuantifyResult out;
  out.raw_value = res.value;
  out.prob = std::clamp(res.value, 0.0, 1.0);
  out.cert = std::move(res.cert);
  return out;
}

// ---------------------------------------------------------------------------
// Transport oracle.

// Ground-norm distance from a point to {V y <= d}; infinity when empty.
double point_to_polytope_distance(const VectorXd& point, const MatrixXd& V, const VectorXd& d,
                                  Norm ground) {
  const int m = static_cast<int>(point.size());
  if (((V * point - d).array() <= tol::kMembership).all()) return 0.0;

  if (ground == Norm::L2) {
    // min t s.t. ||y - point||_2 <= t over the polytope, via cutting planes.
    lp::LinearProgram lp = lp::LinearProgram::make(m + 1);
    lp.lower = VectorXd::Constant(m + 1, -lp::kInf);
    lp.upper = VectorXd::Constant(m + 1, lp::kInf);
    lp.lower(m) = 0.0;
    lp.cost(m) = 1.0;
    for (int r = 0; r < V.rows(); ++r) {
      VectorXd row = VectorXd::Zero(m + 1);
      row.head(m) = V.row(r).transpose();
      lp.add_ineq(row, d(r));
    }
    lp::SocRow soc;
    soc.M = MatrixXd::Zero(m, m + 1);
    soc.M.block(0, 0, m, m) = MatrixXd::Identity(m, m);
    soc.m0 = -point;
    soc.q = VectorXd::Zero(m + 1);
    soc.q(m) = 1.0;
    lp::ConicProgram conic{lp, {soc}};
    lp::LpSolution sol = lp::cutting_plane_norm2(conic, nullptr, 1e-9, 500);
    if (sol.status == lp::LpStatus::Infeasible) return lp::kInf;
    return std::max(0.0, sol.objective);
  }

  // 1- and sup-norm distances as pure LPs over (y, t).
  const bool sum_norm = ground == Norm::L1;
  const int taux = sum_norm ? m : 1;
  lp::LinearProgram lp = lp::LinearProgram::make(m + taux);
  lp.lower = VectorXd::Constant(m + taux, -lp::kInf);
  lp.upper = VectorXd::Constant(m + taux, lp::kInf);
  for (int k = 0; k < taux; ++k) {
    lp.lower(m + k) = 0.0;
    lp.cost(m + k) = 1.0;
  }
  for (int r = 0; r < V.rows(); ++r) {
    VectorXd row = VectorXd::Zero(m + taux);
    row.head(m) = V.row(r).transpose();
    lp.add_ineq(row, d(r));
  }
  for (int k = 0; k < m; ++k) {
    const int tcol = m + (sum_norm ? k : 0);
    VectorXd pos = VectorXd::Zero(m + taux);
    pos(k) = 1.0;
    pos(tcol) = -1.0;
    lp.add_ineq(pos, point(k));
    VectorXd neg = VectorXd::Zero(m + taux);
    neg(k) = -1.0;
    neg(tcol) = -1.0;
    lp.add_ineq(neg, -point(k));
  }
  lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status == lp::LpStatus::Infeasible) return lp::kInf;
  if (sol.status != lp::LpStatus::Optimal)
    fail(ErrorCode::NumericalFailure, "distance LP did not solve");
  return std::max(0.0, sol.objective);
}

MatrixXd stack_rows(const MatrixXd& top, const MatrixXd& bottom) {
  MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

VectorXd stack_vec(const VectorXd& top, const VectorXd& bottom) {
  VectorXd out(top.size() + bottom.size());
  out << top, bottom;
  return out;
}

}  // namespace

QuantifyResult worst_case_unsafe(const AmbiguitySpec& amb, const Polytope& support,
                                 const Polytope& safe, QuantifyMethod method) {
  return run_quantification(amb, support, safe, /*worst=*/true, method);
}

QuantifyResult best_case_safe(const AmbiguitySpec& amb, const Polytope& support,
                              const Polytope& safe, QuantifyMethod method) {
  return run_quantification(amb, support, safe, /*worst=*/false, method);
}

double transport_oracle(const AmbiguitySpec& amb, const Polytope& support, const Polytope& safe,
                        TransportDirection direction) {
  ProblemData pd = prepare(amb, support, safe);
  if (pd.m > 2) fail(ErrorCode::DimensionTooLarge, "oracle limited to dim <= 2");
  if (pd.N > 50) fail(ErrorCode::DimensionTooLarge, "oracle limited to 50 samples");

  std::vector<double> dist(pd.N, 0.0);
  if (direction == TransportDirection::IntoSafe) {
    MatrixXd V = stack_rows(pd.A, pd.C);
    VectorXd d = stack_vec(pd.b, pd.d);
    for (int i = 0; i < pd.N; ++i)
      dist[i] = point_to_polytope_distance(amb.data.samples[i], V, d, amb.ground_norm);
  } else {
    for (int i = 0; i < pd.N; ++i) {
      const VectorXd& xi = amb.data.samples[i];
      // Already outside the open safe set when some face bound is reached.
      if (((pd.A * xi - pd.b).array() >= -tol::kMembership).any()) continue;
      double best = lp::kInf;
      for (int l = 0; l < pd.L; ++l) {
        MatrixXd V = stack_rows((-pd.A.row(l)).eval(), pd.C);
        VectorXd d = stack_vec(VectorXd::Constant(1, -pd.b(l)), pd.d);
        best = std::min(best, point_to_polytope_distance(xi, V, d, amb.ground_norm));
      }
      dist[i] = best;
    }
  }

  // Fractional knapsack: cheapest moves first under mean-cost budget epsilon.
  double already = 0.0;
  std::vector<std::pair<double, int>> movable;
  for (int i = 0; i < pd.N; ++i) {
    if (dist[i] <= tol::kMembership) {
      already += 1.0;
    } else if (std::isfinite(dist[i])) {
      movable.push_back({dist[i], i});
    }
  }
  std::sort(movable.begin(), movable.end());
  double budget = amb.epsilon * pd.N;
  double moved = 0.0;
  for (const auto& [cost, idx] : movable) {
    if (budget <= 0) break;
    double fraction = std::min(1.0, budget / cost);
    moved += fraction;
    budget -= fraction * cost;
  }
  return (already + moved) / pd.N;
}

double certificate_residual(const AmbiguitySpec& amb, const Polytope& support,
                            const Polytope& safe, bool worst, const DualCertificate& cert) {
  ProblemData pd = prepare(amb, support, safe);
  const Norm dual = dual_norm(amb.ground_norm);
  double residual = 0.0;
  auto track = [&](double v) { residual = std::max(residual, v); };

  track(-cert.lambda);
  for (int i = 0; i < pd.N; ++i) {
    const VectorXd& xi = amb.data.samples[i];
    VectorXd delta = pd.d - pd.C * xi;
    track(-cert.s(i));
    const MatrixXd& g = cert.gamma[i];
    if (worst) {
      for (int l = 0; l < pd.L; ++l) {
        double theta = cert.theta(i, l);
        track(-theta);
        for (int r = 0; r < pd.LS; ++r) track(-g(l, r));
        double beta = pd.b(l) - pd.A.row(l).dot(xi);
        track(1.0 - theta * beta + g.row(l).dot(delta) - cert.s(i));
        VectorXd z = pd.A.row(l).transpose() * theta - pd.C.transpose() * g.row(l).transpose();
        track(norm_value(dual, z) - cert.lambda);
      }
    } else {
      VectorXd theta = cert.theta.row(i).transpose();
      VectorXd gv = g.row(0).transpose();
      for (int l = 0; l < pd.L; ++l) track(-theta(l));
      for (int r = 0; r < pd.LS; ++r) track(-gv(r));
      VectorXd beta = pd.b - pd.A * xi;
      track(1.0 + theta.dot(beta) + gv.dot(delta) - cert.s(i));
      VectorXd z = pd.A.transpose() * theta + pd.C.transpose() * gv;
      track(norm_value(dual, z) - cert.lambda);
    }
  }
  return residual;
}

}  // namespace aro
