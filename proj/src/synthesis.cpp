#include "aro/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "aro/lp.hpp"
#include "aro/tolerances.hpp"
#include "counterpart.hpp"

namespace aro {
namespace {

struct Candidate {
  VectorXd anchor;
  double alpha = 0.0;
  VectorXd witness;
  int covered = 0;
};

// Lexicographic preference: larger alpha first (beyond tol), then coverage.
// Any positive penalty weight induces the same order, so gamma never needs a
// numeric value here.
bool improves(const std::optional<Candidate>& best, const Candidate& cand, double alpha_tol) {
  if (!best) return true;
  if (cand.alpha > best->alpha + alpha_tol) return true;
  if (cand.alpha >= best->alpha - alpha_tol && cand.covered > best->covered) return true;
  return false;
}

class PolytopeSearch {
 public:
  PolytopeSearch(const RobustProgram& p, const UncertaintySet& s, const SampleSet& data,
                 const SynthesisConfig& cfg)
      : p_(p), s_(s), data_(data), cfg_(cfg) {
    base_vertices_ = enumerate_vertices(s.polytope());
    box_ = bounding_box(s.polytope());
  }

  std::optional<Candidate> evaluate(const VectorXd& v) {
    const Polytope& poly = s_.polytope();
    if (!((poly.V * v - poly.d).array() <= tol::kGeneral).all()) return std::nullopt;

    VectorXd witness;
    auto feasible = [&](double alpha) {
      ScaledSet scaled{s_, alpha, v};
      detail::CounterpartLp cp = detail::build_counterpart(p_, scaled, base_vertices_, false);
      lp::LpSolution sol = detail::solve_counterpart(cp);
      if (sol.status == lp::LpStatus::Optimal) {
        witness = sol.x.head(p_.decision_dim());
        return true;
      }
      return false;
    };

    if (!feasible(0.0)) return std::nullopt;
    double alpha = lp::bisect_max(feasible, 0.0, 1.0, cfg_.alpha_tol);
    feasible(alpha);  // refresh the witness at the returned alpha

    Candidate cand;
    cand.anchor = v;
    cand.alpha = alpha;
    cand.witness = witness;
    cand.covered = coverage_count(make_scaled(s_, alpha, v), data_);
    return cand;
  }

  // Chebyshev center, one coordinate-grid sweep over the bounding box, and
  // one refined sweep around the incumbent.
  Candidate run() {
    const int m = s_.dim();
    VectorXd center = chebyshev_center(s_.polytope());
    std::optional<Candidate> best;

    auto consider = [&](const VectorXd& v) {
      auto cand = evaluate(v);
      if (cand && improves(best, *cand, cfg_.alpha_tol)) best = *cand;
    };

    consider(center);
    if (cfg_.anchor_search == AnchorSearch::CoordinateSearch) {
      for (double span : {1.0, 0.0}) {  // full sweep, then refined sweep
        for (int axis = 0; axis < m; ++axis) {
          VectorXd pivot = best ? best->anchor : center;
          for (const VectorXd& v : anchor_grid_axis(box_, pivot, axis, cfg_.anchor_grid_steps, span))
            consider(v);
        }
      }
    }

    if (!best) fail(ErrorCode::NominallyInfeasible, "no anchor admits a feasible singleton set");
    return *best;
  }

 private:
  const RobustProgram& p_;
  const UncertaintySet& s_;
  const SampleSet& data_;
  const SynthesisConfig& cfg_;
  std::vector<VectorXd> base_vertices_;
  Box box_;
};

}  // namespace

std::vector<VectorXd> anchor_grid_axis(const Box& box, const VectorXd& center, int axis,
                                       int steps, double span_scale) {
  std::vector<VectorXd> out;
  const double lo = box.lo(axis);
  const double hi = box.hi(axis);
  if (steps < 2 || hi - lo <= 0) {
    out.push_back(center);
    return out;
  }
  double from = lo;
  double to = hi;
  if (span_scale <= 0.0) {
    // Refined sweep: one coarse cell on either side of the incumbent.
    const double cell = (hi - lo) / (steps - 1);
    from = std::max(lo, center(axis) - cell);
    to = std::min(hi, center(axis) + cell);
  }
  for (int i = 0; i < steps; ++i) {
    VectorXd v = center;
    v(axis) = from + (to - from) * i / (steps - 1);
    out.push_back(v);
  }
  return out;
}

FeasibilityCheck robust_feasible_at(const RobustProgram& p, const ScaledSet& s) {
  std::vector<VectorXd> base_vertices;
  if (s.base.is_polytope()) base_vertices = enumerate_vertices(s.base.polytope());
  detail::CounterpartLp cp = detail::build_counterpart(p, s, base_vertices, false);
  lp::LpSolution sol = detail::solve_counterpart(cp);
  FeasibilityCheck out;
  out.feasible = sol.status == lp::LpStatus::Optimal;
  if (out.feasible) out.witness_x = sol.x.head(p.decision_dim());
  return out;
}

SynthesisResult synthesize(const RobustProgram& p, const UncertaintySet& s,
                           const SampleSet& data, const SynthesisConfig& cfg) {
  if (!(cfg.gamma >= 0)) fail(ErrorCode::InvalidInput, "gamma must be nonnegative");
  if (!(cfg.alpha_tol > 0)) fail(ErrorCode::InvalidInput, "alpha_tol must be positive");
  require_valid(p, s);
  if (data.size() > 0 && data.dim() != s.dim())
    fail(ErrorCode::DimensionMismatch, "sample dimension differs from the uncertainty set");

  SynthesisResult result;
  if (s.is_norm_ball()) {
    // Scaling is anchored at the center, so the penalty is monotone in alpha
    // and bisection alone is exact.
    VectorXd witness;
    auto feasible = [&](double alpha) {
      FeasibilityCheck check = robust_feasible_at(p, ScaledSet{s, alpha, VectorXd::Zero(s.dim())});
      if (check.feasible) witness = *check.witness_x;
      return check.feasible;
    };
    if (!feasible(0.0))
      fail(ErrorCode::NominallyInfeasible, "infeasible even at the ball center");
    double alpha = lp::bisect_max(feasible, 0.0, 1.0, cfg.alpha_tol);
    feasible(alpha);
    result.scaled = make_scaled(s, alpha);
    result.witness_x = witness;
    result.alpha_star = alpha;
    result.covered = coverage_count(result.scaled, data);
    return result;
  }

  PolytopeSearch search(p, s, data, cfg);
  Candidate best = search.run();
  result.scaled = make_scaled(s, best.alpha, best.anchor);
  result.witness_x = best.witness;
  result.alpha_star = best.alpha;
  result.covered = best.covered;
  return result;
}

}  // namespace aro
