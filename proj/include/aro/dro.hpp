#pragma once

#include "aro/synthesis.hpp"
#include "aro/wasserstein.hpp"

namespace aro {

enum class DroObjective { MinWorstUnsafe, MaxBestSafe };

struct DroConfig {
  DroObjective objective = DroObjective::MaxBestSafe;
  AmbiguitySpec amb;
  int alpha_grid = 101;  // grid used by diagnostic alpha spot-checks
  AnchorSearch anchor_search = AnchorSearch::CoordinateSearch;
  int anchor_grid_steps = 9;
  double alpha_tol = 1e-6;
};

struct DroResult {
  ScaledSet scaled;
  VectorXd witness_x;
  double prob = 0.0;
  DualCertificate cert;
};

// Distributionally robust stage 1 over a polytope base set: per anchor
// candidate, take the largest robust-feasible alpha (set monotonicity makes
// that optimal for either objective) and score the scaled set with the
// Wasserstein quantification; return the best-scoring candidate.
DroResult dro_synthesize(const RobustProgram& p, const UncertaintySet& s,
                         const DroConfig& cfg);

}  // namespace aro
