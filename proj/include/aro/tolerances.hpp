#pragma once

namespace aro::tol {

// Centralized tolerances. All comparisons in the library go through these.
inline constexpr double kLpFeasibility = 1e-7;   // primal residual bound
inline constexpr double kGeneral = 1e-6;         // generic value comparisons
inline constexpr double kMembership = 1e-9;      // closed-set membership slack
inline constexpr double kVertexDedup = 1e-8;     // vertex deduplication radius
inline constexpr double kDualityGapRel = 1e-6;   // relative duality gap bound

}  // namespace aro::tol
