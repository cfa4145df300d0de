#pragma once

#include "aro/geometry.hpp"
#include "aro/model.hpp"

namespace aro {

struct BindingRecord {
  int constraint = 0;
  int support_point = 0;  // vertex index for polytopes, -1 for norm balls
};

struct SolveReport {
  VectorXd x_opt;
  double objective = 0.0;
  std::vector<BindingRecord> binding;
  std::vector<VectorXd> worst_case_xi;  // per-constraint maximizer over the set
};

// Stage 2: robust counterpart of p over the fixed scaled set. Polytopes get
// one row per (constraint, vertex); norm balls get dual-norm rows. Throws
// Infeasible (with the failing constraint) when the precondition was skipped.
SolveReport solve_robust(const RobustProgram& p, const ScaledSet& s);

}  // namespace aro
