#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "aro/errors.hpp"

namespace aro {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Norm { L1, L2, Linf };

const char* norm_name(Norm p);
Norm dual_norm(Norm p);
double norm_value(Norm p, const VectorXd& z);

// One robust constraint  <a, x> + <e + Q^T x, xi> + c <= 0,
// affine in x for fixed xi and affine in xi for fixed x.
struct BiAffineConstraint {
  VectorXd a;       // length n
  VectorXd e;       // length m
  MatrixXd Q;       // n x m cross term; empty means zero
  double constant = 0.0;

  bool has_cross_term() const { return Q.size() > 0 && !Q.isZero(0.0); }
};

// Decision polytope {x : G x <= h}; bounds are encoded as rows.
struct DecisionSet {
  MatrixXd G;
  VectorXd h;

  int dim() const { return static_cast<int>(G.cols()); }
};

struct RobustProgram {
  VectorXd objective;                        // cost c, minimized as <c, x>
  std::vector<BiAffineConstraint> constraints;
  DecisionSet decision_set;
  int uncertainty_dim = 0;

  int decision_dim() const { return static_cast<int>(objective.size()); }
};

struct NormBall {
  Norm p = Norm::Linf;
  double radius = 1.0;
  int dim = 1;
};

struct Polytope {
  MatrixXd V;  // L x m
  VectorXd d;  // length L

  int dim() const { return static_cast<int>(V.cols()); }
  int rows() const { return static_cast<int>(V.rows()); }
};

class UncertaintySet {
 public:
  UncertaintySet() : data_(NormBall{}) {}
  explicit UncertaintySet(NormBall ball);
  explicit UncertaintySet(Polytope poly);

  bool is_polytope() const { return std::holds_alternative<Polytope>(data_); }
  bool is_norm_ball() const { return std::holds_alternative<NormBall>(data_); }
  const Polytope& polytope() const;
  const NormBall& norm_ball() const;
  int dim() const;

 private:
  std::variant<NormBall, Polytope> data_;
};

// N i.i.d. uncertainty samples plus provenance.
struct SampleSet {
  std::vector<VectorXd> samples;
  unsigned long long seed = 0;
  std::string source;

  int size() const { return static_cast<int>(samples.size()); }
  int dim() const { return samples.empty() ? 0 : static_cast<int>(samples.front().size()); }
};

struct ValidationReport {
  bool dimensions_ok = false;
  bool decision_set_nonempty = false;
  bool nominally_feasible = false;
  std::vector<std::string> findings;

  bool ok() const { return dimensions_ok && decision_set_nonempty; }
};

// Evaluates <a, x> + <e + Q^T x, xi> + c.
double eval_constraint(const BiAffineConstraint& c, const VectorXd& x, const VectorXd& xi);

// Dimension checks plus one feasibility LP for X and one nominal-feasibility
// LP at the set's center. Returns a report; throws nothing on bad programs.
ValidationReport validate_program(const RobustProgram& p, const UncertaintySet& s);

// Throws DimensionMismatch / EmptyDecisionSet when the report is not ok.
void require_valid(const RobustProgram& p, const UncertaintySet& s);

}  // namespace aro
