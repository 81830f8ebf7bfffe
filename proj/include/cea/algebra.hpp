#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cea/tolerances.hpp"

namespace cea {

/// 2x2 matrix of structural constants a_ij of a two-dimensional evolution
/// algebra: e_i * e_i = a_i1 e_1 + a_i2 e_2, e_1 * e_2 = 0.
struct StructMatrix2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    static constexpr StructMatrix2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr StructMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr double det() const { return a11 * a22 - a12 * a21; }

    double max_abs() const {
        return std::max(std::max(std::fabs(a11), std::fabs(a12)),
                        std::max(std::fabs(a21), std::fabs(a22)));
    }

    bool finite() const {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) &&
               std::isfinite(a22);
    }
};

inline StructMatrix2 mat_mul(const StructMatrix2& l, const StructMatrix2& r) {
    return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
            l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

/// Max-entry absolute difference.
inline double mat_dist(const StructMatrix2& l, const StructMatrix2& r) {
    return std::max(std::max(std::fabs(l.a11 - r.a11), std::fabs(l.a12 - r.a12)),
                    std::max(std::fabs(l.a21 - r.a21), std::fabs(l.a22 - r.a22)));
}

/// Point of the algebra E = R^2 in the basis e_1, e_2.
struct AlgebraElement {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline double point_dist(const AlgebraElement& a, const AlgebraElement& b) {
    return std::max(std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2));
}

/// Product in the evolution algebra: z_j = a_1j x_1 y_1 + a_2j x_2 y_2.
/// Commutative by construction.
inline AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y,
                               const StructMatrix2& m) {
    const double p1 = x.x1 * y.x1;
    const double p2 = x.x2 * y.x2;
    return {m.a11 * p1 + m.a21 * p2, m.a12 * p1 + m.a22 * p2};
}

/// Evolution operator V(x) = x^2.
inline AlgebraElement square(const AlgebraElement& x, const StructMatrix2& m) {
    return multiply(x, x, m);
}

/// Max-coordinate residual of the fixed-point equation x^2 = x.
inline double idempotent_residual(const AlgebraElement& p, const StructMatrix2& m) {
    const AlgebraElement q = square(p, m);
    return std::max(std::fabs(q.x1 - p.x1), std::fabs(q.x2 - p.x2));
}

struct Trajectory {
    std::vector<AlgebraElement> points;           // x0, V(x0), V^2(x0), ...
    std::optional<std::size_t> diverged_at;       // step at which the guard tripped
};

/// Orbit of the evolution operator. Stops before producing a coordinate whose
/// magnitude exceeds `guard`, so the output never contains NaN/Inf.
inline Trajectory iterate(const AlgebraElement& x0, const StructMatrix2& m,
                          std::size_t n, double guard = kOverflowGuard) {
    Trajectory out;
    out.points.reserve(n + 1);
    out.points.push_back(x0);
    AlgebraElement x = x0;
    for (std::size_t k = 1; k <= n; ++k) {
        x = square(x, m);
        if (!(std::fabs(x.x1) <= guard) || !(std::fabs(x.x2) <= guard)) {
            out.diverged_at = k;
            break;
        }
        out.points.push_back(x);
    }
    return out;
}

} // namespace cea
