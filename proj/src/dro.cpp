#include "aro/dro.hpp"

#include <cmath>
#include <optional>

#include "aro/lp.hpp"
#include "aro/tolerances.hpp"
#include "counterpart.hpp"

namespace aro {
namespace {

constexpr double kProbTieTol = 1e-9;

struct DroCandidate {
  VectorXd anchor;
  double alpha = 0.0;
  VectorXd witness;
  double score = 0.0;  // higher is better for either objective
  QuantifyResult quant;
};

}  // namespace

DroResult dro_synthesize(const RobustProgram& p, const UncertaintySet& s, const DroConfig& cfg) {
  if (!s.is_polytope())
    fail(ErrorCode::InvalidInput, "distributionally robust synthesis needs a polytope set");
  if (cfg.amb.data.size() < 1) fail(ErrorCode::EmptySamples, "ambiguity set needs samples");
  if (cfg.alpha_grid < 2) fail(ErrorCode::InvalidInput, "alpha_grid must be at least 2");
  require_valid(p, s);
  if (cfg.amb.data.dim() != s.dim())
    fail(ErrorCode::DimensionMismatch, "sample dimension differs from the uncertainty set");

  const Polytope& poly = s.polytope();
  const std::vector<VectorXd> base_vertices = enumerate_vertices(poly);
  const Box box = bounding_box(poly);
  const VectorXd center = chebyshev_center(poly);
  const bool maximize_safe = cfg.objective == DroObjective::MaxBestSafe;

  std::optional<DroCandidate> best;
  std::optional<AroError> last_hypothesis_failure;
  bool any_feasible_anchor = false;

  auto evaluate = [&](const VectorXd& v) -> std::optional<DroCandidate> {
    if (!((poly.V * v - poly.d).array() <= tol::kGeneral).all()) return std::nullopt;
    VectorXd witness;
    auto feasible = [&](double alpha) {
      ScaledSet scaled{s, alpha, v};
      detail::CounterpartLp cp = detail::build_counterpart(p, scaled, base_vertices, false);
      lp::LpSolution sol = detail::solve_counterpart(cp);
      if (sol.status == lp::LpStatus::Optimal) {
        witness = sol.x.head(p.decision_dim());
        return true;
      }
      return false;
    };
    if (!feasible(0.0)) return std::nullopt;
    any_feasible_anchor = true;

    // Set monotonicity of both objectives makes the largest feasible alpha
    // optimal for this anchor.
    double alpha = lp::bisect_max(feasible, 0.0, 1.0, cfg.alpha_tol);
    feasible(alpha);

    ScaledSet scaled = make_scaled(s, alpha, v);
    Polytope safe{poly.V, homothety_rhs(scaled)};
    DroCandidate cand;
    cand.anchor = v;
    cand.alpha = alpha;
    cand.witness = witness;
    try {
      if (maximize_safe) {
        cand.quant = best_case_safe(cfg.amb, poly, safe);
        cand.score = cand.quant.prob;
      } else {
        cand.quant = worst_case_unsafe(cfg.amb, poly, safe);
        cand.score = -cand.quant.prob;
      }
    } catch (const AroError& err) {
      if (err.code() == ErrorCode::HypothesisViolated) {
        last_hypothesis_failure = err;
        return std::nullopt;
      }
      throw;
    }
    return cand;
  };

  auto consider = [&](const VectorXd& v) {
    auto cand = evaluate(v);
    if (!cand) return;
    if (!best || cand->score > best->score + kProbTieTol ||
        (cand->score >= best->score - kProbTieTol && cand->alpha > best->alpha + cfg.alpha_tol)) {
      best = *cand;
    }
  };

  consider(center);
  if (cfg.anchor_search == AnchorSearch::CoordinateSearch) {
    for (double span : {1.0, 0.0}) {
      for (int axis = 0; axis < s.dim(); ++axis) {
        VectorXd pivot = best ? best->anchor : center;
        for (const VectorXd& v : anchor_grid_axis(box, pivot, axis, cfg.anchor_grid_steps, span))
          consider(v);
      }
    }
  }

  if (!best) {
    if (!any_feasible_anchor)
      fail(ErrorCode::NominallyInfeasible, "no anchor admits a feasible singleton set");
    if (last_hypothesis_failure) throw *last_hypothesis_failure;
    fail(ErrorCode::NumericalFailure, "no anchor candidate could be scored");
  }

  DroResult out;
  out.scaled = make_scaled(s, best->alpha, best->anchor);
  out.witness_x = best->witness;
  out.prob = best->quant.prob;
  out.cert = best->quant.cert;
  return out;
}

}  // namespace aro
