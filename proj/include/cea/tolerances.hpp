#pragma once

namespace cea {

// Default numeric policy. Closed-form double-precision evaluation leaves
// at least six digits of headroom over these thresholds.
inline constexpr double kZeroTolerance   = 1e-9;   // decisive-quantity threshold
inline constexpr double kSolverTolerance = 1e-10;  // max accepted idempotent residual
inline constexpr double kDedupeRadius    = 1e-7;   // min separation of reported points
inline constexpr double kOverflowGuard   = 1e12;   // trajectory divergence guard
inline constexpr double kImagTolerance   = 1e-8;   // |Im| below which a root counts as real

} // namespace cea
