#pragma once

#include <optional>

#include "aro/geometry.hpp"
#include "aro/model.hpp"

namespace aro {

enum class AnchorSearch { FixedCenter, CoordinateSearch };

struct SynthesisConfig {
  double gamma = 1.0;              // sample-coverage penalty weight, >= 0
  double alpha_tol = 1e-6;
  AnchorSearch anchor_search = AnchorSearch::CoordinateSearch;
  int anchor_grid_steps = 9;       // grid points per axis
};

struct SynthesisResult {
  ScaledSet scaled;
  VectorXd witness_x;
  int covered = 0;
  double alpha_star = 0.0;
};

struct FeasibilityCheck {
  bool feasible = false;
  std::optional<VectorXd> witness_x;
};

// Exact robust feasibility of p over the scaled set: vertex-expanded LP for
// polytopes, dual-norm counterpart rows for norm balls (2-norm via cutting
// planes).
FeasibilityCheck robust_feasible_at(const RobustProgram& p, const ScaledSet& s);

// Stage 1: largest scaled subset of s keeping p robustly feasible.
// Norm balls bisect alpha directly; polytopes search anchors (Chebyshev
// center plus coordinate search), maximizing alpha first and breaking ties
// within alpha_tol by sample coverage.
SynthesisResult synthesize(const RobustProgram& p, const UncertaintySet& s,
                           const SampleSet& data, const SynthesisConfig& cfg);

// Candidate anchors used by the polytope search, in evaluation order.
// Shared with the DRO front end so both stages rank the same candidates.
std::vector<VectorXd> anchor_grid_axis(const Box& box, const VectorXd& center, int axis,
                                       int steps, double span_scale);

}  // namespace aro
