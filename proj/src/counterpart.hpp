#pragma once

#include <vector>

#include "aro/geometry.hpp"
#include "aro/lp.hpp"
#include "aro/model.hpp"

namespace aro::detail {

// Robust counterpart of a program over a fixed scaled set, as an LP (plus
// second-order rows when a 2-norm ball makes them necessary). The first
// num_decision variables are x; the rest are epigraph helpers.
struct CounterpartLp {
  lp::LinearProgram lp;
  std::vector<lp::SocRow> soc;
  int num_decision = 0;
};

// Vertices of the scaled polytope via the homothety alpha W + (1 - alpha) v
// of the base vertices.
std::vector<VectorXd> scaled_vertices(const ScaledSet& s,
                                      const std::vector<VectorXd>& base_vertices);

CounterpartLp counterpart_polytope(const RobustProgram& p,
                                   const std::vector<VectorXd>& vertices, bool with_objective);

CounterpartLp counterpart_ball(const RobustProgram& p, double radius, Norm ball_norm,
                               bool with_objective);

CounterpartLp build_counterpart(const RobustProgram& p, const ScaledSet& s,
                                const std::vector<VectorXd>& base_vertices,
                                bool with_objective);

lp::LpSolution solve_counterpart(const CounterpartLp& cp);

}  // namespace aro::detail
