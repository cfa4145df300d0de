#pragma once

#include <optional>
#include <vector>

#include "aro/model.hpp"

namespace aro {

// Homothety of the base set with ratio alpha about anchor v:
//   polytope:  {xi : V xi <= alpha d + (1 - alpha) V v}  ==  alpha S + (1-alpha) v
//   norm ball: {xi : ||xi||_p <= alpha r}
// The anchor is ignored for norm balls.
struct ScaledSet {
  UncertaintySet base;
  double alpha = 1.0;
  VectorXd anchor;
};

ScaledSet make_scaled(const UncertaintySet& base, double alpha, const VectorXd& anchor);
ScaledSet make_scaled(const UncertaintySet& base, double alpha);

// Right-hand side alpha d + (1 - alpha) V v of the scaled polytope.
// Throws AnchorOutsideBase when V v > d beyond tolerance.
VectorXd homothety_rhs(const ScaledSet& s);

bool contains(const UncertaintySet& s, const VectorXd& xi);
bool contains(const ScaledSet& s, const VectorXd& xi);

int coverage_count(const ScaledSet& s, const SampleSet& data);

// All vertices of a bounded polytope via active-row intersection; requires
// dim <= 4 and at most 4096 vertices. Deduplicated within 1e-8.
std::vector<VectorXd> enumerate_vertices(const Polytope& poly);
std::vector<VectorXd> enumerate_vertices(const UncertaintySet& s);
std::vector<VectorXd> enumerate_vertices(const ScaledSet& s);

// Center of the largest inscribed ball; lexicographically smallest maximizer.
VectorXd chebyshev_center(const Polytope& poly);
VectorXd chebyshev_center(const UncertaintySet& s);

// Componentwise [min, max] extent, via 2*dim support LPs. Throws UnboundedSet.
struct Box {
  VectorXd lo;
  VectorXd hi;
};
Box bounding_box(const Polytope& poly);
Box bounding_box(const UncertaintySet& s);

}  // namespace aro
