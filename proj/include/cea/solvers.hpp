#pragma once

#include <vector>

#include "cea/algebra.hpp"
#include "cea/tolerances.hpp"

namespace cea {

/// Baric criterion for a 2D evolution algebra: some column i0 has a nonzero
/// diagonal entry and a zero off-diagonal entry; the weight function is then
/// sigma(x) = a_{i0 i0} x_{i0}.
struct BaricStatus {
    int column = 0;      // 0 = not baric, otherwise 1 or 2
    double weight = 0.0; // a_{i0 i0} when baric

    bool baric() const { return column != 0; }
};

bool operator==(const BaricStatus& l, const BaricStatus& r);

/// Column test with tolerance eps; when both columns qualify, column 1 wins.
BaricStatus baric_weight(const StructMatrix2& m, double eps = kZeroTolerance);

/// True when a decisive entry sits in the open band (0, eps]: the
/// classification is within tolerance of flipping. Entries that are exactly
/// zero are structural and do not mark a boundary.
bool baric_boundary(const StructMatrix2& m, double eps = kZeroTolerance);

/// Solutions of x^2 = 0, i.e. the nonnegative solutions (u, v) = (x1^2, x2^2)
/// of the linear system a11 u + a21 v = 0, a12 u + a22 v = 0.
struct NilpotentClass {
    enum class Kind { only_zero, curve, all };
    Kind kind = Kind::only_zero;
    // curve direction, componentwise >= 0, max component scaled to 1
    double u = 0.0;
    double v = 0.0;

    bool unique() const { return kind == Kind::only_zero; }
};

NilpotentClass nilpotent_class(const StructMatrix2& m, double eps = kZeroTolerance);

/// All real solutions of x^2 = x.
struct IdempotentSet {
    std::vector<AlgebraElement> points; // lexicographically sorted, (0,0) always present
    std::vector<double> residuals;      // max-coordinate |x^2 - x| per point
    bool complete = true;               // false when the Newton fallback produced the set
};

/// Exact reduction to a univariate polynomial of degree <= 4 (closed-form
/// roots, Newton polish), with decoupled and fully degenerate sub-cases
/// enumerated directly. A multi-start damped-Newton fallback covers matrices
/// where the closed form fails its residual check; throws SolverInconclusive
/// if even the fallback finds nothing.
IdempotentSet idempotents(const StructMatrix2& m, double eps = kZeroTolerance);

/// The fallback path on its own: damped Newton from a start grid over
/// [-R, R]^2, R = 2 (1 + 1/max|a_ij|). Always reports complete = false.
IdempotentSet idempotents_fallback(const StructMatrix2& m, double eps = kZeroTolerance);

} // namespace cea
