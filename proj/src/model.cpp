#include "aro/model.hpp"

#include <cmath>
#include <sstream>

#include "aro/geometry.hpp"
#include "aro/lp.hpp"
#include "aro/tolerances.hpp"

namespace aro {

const char* norm_name(Norm p) {
  switch (p) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::Linf: return "inf";
  }
  return "?";
}

Norm dual_norm(Norm p) {
  switch (p) {
    case Norm::L1: return Norm::Linf;
    case Norm::L2: return Norm::L2;
    case Norm::Linf: return Norm::L1;
  }
  return Norm::L2;
}

double norm_value(Norm p, const VectorXd& z) {
  switch (p) {
    case Norm::L1: return z.lpNorm<1>();
    case Norm::L2: return z.norm();
    case Norm::Linf: return z.size() == 0 ? 0.0 : z.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

UncertaintySet::UncertaintySet(NormBall ball) : data_(std::move(ball)) {
  const NormBall& b = std::get<NormBall>(data_);
  if (!(b.radius > 0)) fail(ErrorCode::InvalidInput, "norm-ball radius must be positive");
  if (b.dim <= 0) fail(ErrorCode::InvalidInput, "norm-ball dimension must be positive");
}

UncertaintySet::UncertaintySet(Polytope poly) : data_(std::move(poly)) {
  const Polytope& p = std::get<Polytope>(data_);
  if (p.V.rows() != p.d.size()) fail(ErrorCode::DimensionMismatch, "polytope V and d disagree");
  if (p.V.rows() == 0 || p.V.cols() == 0)
    fail(ErrorCode::InvalidInput, "polytope needs at least one row and one column");
}

const Polytope& UncertaintySet::polytope() const {
  if (!is_polytope()) fail(ErrorCode::InvalidInput, "set is not a polytope");
  return std::get<Polytope>(data_);
}

const NormBall& UncertaintySet::norm_ball() const {
  if (!is_norm_ball()) fail(ErrorCode::InvalidInput, "set is not a norm ball");
  return std::get<NormBall>(data_);
}

int UncertaintySet::dim() const {
  return is_polytope() ? polytope().dim() : norm_ball().dim;
}

double eval_constraint(const BiAffineConstraint& c, const VectorXd& x, const VectorXd& xi) {
  if (c.a.size() != x.size()) fail(ErrorCode::DimensionMismatch, "constraint a vs x");
  if (c.e.size() != xi.size()) fail(ErrorCode::DimensionMismatch, "constraint e vs xi");
  double value = c.a.dot(x) + c.e.dot(xi) + c.constant;
  if (c.Q.size() > 0) {
    if (c.Q.rows() != x.size() || c.Q.cols() != xi.size())
      fail(ErrorCode::DimensionMismatch, "constraint Q shape");
    value += x.dot(c.Q * xi);
  }
  return value;
}

namespace {

// Feasibility of {x : G x <= h, f_j(x, xi0) <= 0 for all j} at a fixed xi0.
bool feasible_at_point(const RobustProgram& p, const VectorXd& xi0) {
  const int n = p.decision_dim();
  lp::LinearProgram lp = lp::LinearProgram::make(n);
  for (int r = 0; r < p.decision_set.G.rows(); ++r)
    lp.add_ineq(p.decision_set.G.row(r).transpose(), p.decision_set.h(r));
  for (const BiAffineConstraint& c : p.constraints) {
    VectorXd row = c.a;
    if (c.Q.size() > 0) row += c.Q * xi0;
    lp.add_ineq(row, -c.constant - c.e.dot(xi0));
  }
  return lp::solve_lp(lp).status == lp::LpStatus::Optimal;
}

}  // namespace

ValidationReport validate_program(const RobustProgram& p, const UncertaintySet& s) {
  ValidationReport report;
  const int n = p.decision_dim();
  const int m = p.uncertainty_dim;

  report.dimensions_ok = true;
  auto flag = [&](const std::string& msg) {
    report.dimensions_ok = false;
    report.findings.push_back("DimensionMismatch: " + msg);
  };
  if (m <= 0) flag("uncertainty_dim must be positive");
  if (s.dim() != m) flag("uncertainty set dimension differs from uncertainty_dim");
  if (p.decision_set.G.cols() != n) flag("decision set width differs from objective length");
  if (p.decision_set.G.rows() != p.decision_set.h.size()) flag("decision set G vs h rows");
  for (size_t j = 0; j < p.constraints.size(); ++j) {
    const BiAffineConstraint& c = p.constraints[j];
    std::ostringstream where;
    where << "constraint " << j;
    if (c.a.size() != n) flag(where.str() + ": a length");
    if (c.e.size() != m) flag(where.str() + ": e length");
    if (c.Q.size() > 0 && (c.Q.rows() != n || c.Q.cols() != m)) flag(where.str() + ": Q shape");
  }
  if (!report.dimensions_ok) return report;

  // Decision-set feasibility LP.
  lp::LinearProgram xlp = lp::LinearProgram::make(n);
  for (int r = 0; r < p.decision_set.G.rows(); ++r)
    xlp.add_ineq(p.decision_set.G.row(r).transpose(), p.decision_set.h(r));
  report.decision_set_nonempty = lp::solve_lp(xlp).status == lp::LpStatus::Optimal;
  if (!report.decision_set_nonempty) {
    report.findings.push_back("EmptyDecisionSet: no x satisfies G x <= h");
    return report;
  }

  VectorXd center = s.is_polytope() ? chebyshev_center(s.polytope())
                                    : VectorXd::Zero(s.dim());
  report.nominally_feasible = feasible_at_point(p, center);
  if (!report.nominally_feasible)
    report.findings.push_back("program infeasible at the uncertainty-set center");
  return report;
}

void require_valid(const RobustProgram& p, const UncertaintySet& s) {
  ValidationReport report = validate_program(p, s);
  if (!report.dimensions_ok)
    fail(ErrorCode::DimensionMismatch,
         report.findings.empty() ? "invalid dimensions" : report.findings.front());
  if (!report.decision_set_nonempty)
    fail(ErrorCode::EmptyDecisionSet, "decision polytope is empty");
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyDecisionSet: return "EmptyDecisionSet";
    case ErrorCode::AnchorOutsideBase: return "AnchorOutsideBase";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnboundedSet: return "UnboundedSet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::NotEvenLo: return "NotEvenLo";
    case ErrorCode::NominallyInfeasible: return "NominallyInfeasible";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::UnknownBenchmark: return "UnknownBenchmark";
    case ErrorCode::MissingCaseFile: return "MissingCaseFile";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

}  // namespace aro
