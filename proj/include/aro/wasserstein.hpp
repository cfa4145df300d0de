#pragma once

#include "aro/geometry.hpp"
#include "aro/model.hpp"

namespace aro {

// Wasserstein ball of radius epsilon around the empirical distribution of
// data, with transport costs measured in ground_norm.
struct AmbiguitySpec {
  double epsilon = 0.0;
  Norm ground_norm = Norm::Linf;
  SampleSet data;
};

// Feasible point of the finite quantification program. theta holds one row
// per sample; gamma holds one block per sample (L x L_S for the unsafe
// program, 1 x L_S for the safe one).
struct DualCertificate {
  double lambda = 0.0;
  VectorXd s;
  MatrixXd theta;
  std::vector<MatrixXd> gamma;
  double objective = 0.0;
};

struct QuantifyResult {
  double prob = 0.0;       // clipped to [0, 1]
  double raw_value = 0.0;  // LP optimum before clipping
  DualCertificate cert;
};

enum class QuantifyMethod {
  Auto,        // monolithic LP for small N, scalar decomposition otherwise
  Monolithic,
  Decomposed,
};

// Worst-case probability over the ambiguity ball that xi leaves the safe
// polytope {A xi <= b}, supported on {C xi <= d}. Each face's outer
// half-space must intersect the support.
QuantifyResult worst_case_unsafe(const AmbiguitySpec& amb, const Polytope& support,
                                 const Polytope& safe,
                                 QuantifyMethod method = QuantifyMethod::Auto);

// Best-case probability that xi lies in the (closed) safe polytope; requires
// safe and support to intersect.
QuantifyResult best_case_safe(const AmbiguitySpec& amb, const Polytope& support,
                              const Polytope& safe,
                              QuantifyMethod method = QuantifyMethod::Auto);

enum class TransportDirection { IntoSafe, OutOfSafe };

// Independent verification oracle: per-sample ground-norm distances to the
// target region plus a fractional-knapsack transport under budget epsilon.
// Limited to dim <= 2 and N <= 50.
double transport_oracle(const AmbiguitySpec& amb, const Polytope& support,
                        const Polytope& safe, TransportDirection direction);

// Max constraint violation of the certificate inside the stated program;
// used by tests to validate certificates independently of objective values.
double certificate_residual(const AmbiguitySpec& amb, const Polytope& support,
                            const Polytope& safe, bool worst_case,
                            const DualCertificate& cert);

}  // namespace aro
