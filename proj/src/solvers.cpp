#include "cea/solvers.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cea/errors.hpp"
#include "cea/roots.hpp"

namespace cea {

bool operator==(const BaricStatus& l, const BaricStatus& r) {
    return l.column == r.column && l.weight == r.weight;
}

BaricStatus baric_weight(const StructMatrix2& m, double eps) {
    const bool col1 = std::fabs(m.a11) > eps && std::fabs(m.a21) <= eps;
    const bool col2 = std::fabs(m.a22) > eps && std::fabs(m.a12) <= eps;
    if (col1) return {1, m.a11}; // tie-break: column 1
    if (col2) return {2, m.a22};
    return {};
}

bool baric_boundary(const StructMatrix2& m, double eps) {
    for (double q : {m.a11, m.a12, m.a21, m.a22}) {
        const double a = std::fabs(q);
        if (a > 0.0 && a <= eps) return true;
    }
    return false;
}

NilpotentClass nilpotent_class(const StructMatrix2& m, double eps) {
    if (m.max_abs() <= eps) return {NilpotentClass::Kind::all, 0.0, 0.0};
    if (std::fabs(m.det()) > eps) return {};

    // rank <= 1 within tolerance: kernel direction of the system rows
    // (a11, a21) and (a12, a22)
    const std::array<double, 2> r1{m.a11, m.a21};
    const std::array<double, 2> r2{m.a12, m.a22};
    const double n1 = std::max(std::fabs(r1[0]), std::fabs(r1[1]));
    const double n2 = std::max(std::fabs(r2[0]), std::fabs(r2[1]));
    const auto& dom = (n1 >= n2) ? r1 : r2;
    const auto& oth = (n1 >= n2) ? r2 : r1;

    double du = -dom[1];
    double dv = dom[0];
    const double scale = std::max(std::fabs(du), std::fabs(dv));
    du /= scale;
    dv /= scale;
    if (du + dv < 0.0) { du = -du; dv = -dv; }

    // the other row must annihilate the direction too
    if (std::fabs(oth[0] * du + oth[1] * dv) > eps * std::max(1.0, std::max(n1, n2)))
        return {};

    // a strictly mixed-sign direction admits no nonnegative ray
    const double lo = std::min(du, dv);
    if (lo < -eps) return {};
    du = std::max(du, 0.0);
    dv = std::max(dv, 0.0);
    return {NilpotentClass::Kind::curve, du, dv};
}

namespace {

struct Candidate {
    AlgebraElement p;
    double residual = 0.0;
    bool ok = false;
};

// One damped Newton pass on F(x,y) = (x - a11 x^2 - a21 y^2, y - a12 x^2 - a22 y^2).
bool newton_refine(AlgebraElement& p, const StructMatrix2& m, int max_iter, double tol) {
    for (int it = 0; it < max_iter; ++it) {
        const AlgebraElement sq = square(p, m);
        const double f1 = p.x1 - sq.x1;
        const double f2 = p.x2 - sq.x2;
        const double res = std::max(std::fabs(f1), std::fabs(f2));
        if (res < tol) return true;
        const double j11 = 1.0 - 2.0 * m.a11 * p.x1;
        const double j12 = -2.0 * m.a21 * p.x2;
        const double j21 = -2.0 * m.a12 * p.x1;
        const double j22 = 1.0 - 2.0 * m.a22 * p.x2;
        const double det = j11 * j22 - j12 * j21;
        if (std::fabs(det) < 1e-300) return false;
        double dx = (f1 * j22 - f2 * j12) / det;
        double dy = (f2 * j11 - f1 * j21) / det;
        // backtrack until the residual actually drops
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 24; ++bt) {
            AlgebraElement cand{p.x1 - step * dx, p.x2 - step * dy};
            if (idempotent_residual(cand, m) < res) {
                p = cand;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return idempotent_residual(p, m) < tol;
    }
    return idempotent_residual(p, m) < tol;
}

Candidate finish(AlgebraElement p, const StructMatrix2& m) {
    Candidate c;
    if (idempotent_residual(p, m) > 1e-13) newton_refine(p, m, 2, 1e-14);
    c.p = p;
    c.residual = idempotent_residual(p, m);
    c.ok = std::isfinite(p.x1) && std::isfinite(p.x2) && c.residual < kSolverTolerance;
    return c;
}

// real roots of a w^2 - w + c = 0; a within eps of zero degrades to w = c
void quadratic_in_one(double a, double c, double eps, std::vector<double>& out) {
    if (std::fabs(a) <= eps) {
        out.push_back(c); // w = c
        return;
    }
    const double disc = 1.0 - 4.0 * a * c;
    if (disc < 0.0) return;
    const double q = 0.5 * (1.0 + std::sqrt(disc)); // >= 1/2, no cancellation
    out.push_back(q / a);
    out.push_back(c / q);
}

// elimination through a21: y = (a22 x - det x^2)/a21, quartic in x
void eliminate_via_a21(const StructMatrix2& m, std::vector<Candidate>& cands) {
    const double det = m.det();
    // det^2 x^4 - 2 a22 det x^3 + (a11 a21 + a22^2) x^2 - a21 x = 0; x = 0 factored out
    const std::array<double, 4> cubic{-m.a21, m.a11 * m.a21 + m.a22 * m.a22,
                                      -2.0 * m.a22 * det, det * det};
    for (double x : real_roots(cubic)) {
        const double y = (m.a22 * x - det * x * x) / m.a21;
        cands.push_back(finish({x, y}, m));
    }
}

// symmetric elimination through a12: x = (a11 y - det y^2)/a12, quartic in y
void eliminate_via_a12(const StructMatrix2& m, std::vector<Candidate>& cands) {
    const double det = m.det();
    const std::array<double, 4> cubic{-m.a12, m.a22 * m.a12 + m.a11 * m.a11,
                                      -2.0 * m.a11 * det, det * det};
    for (double y : real_roots(cubic)) {
        const double x = (m.a11 * y - det * y * y) / m.a12;
        cands.push_back(finish({x, y}, m));
    }
}

// a21 negligible: x in {0, 1/a11}, then a22 y^2 - y + a12 x0^2 = 0
void decoupled_in_x(const StructMatrix2& m, double eps, std::vector<Candidate>& cands) {
    std::vector<double> xs{0.0};
    if (std::fabs(m.a11) > eps) xs.push_back(1.0 / m.a11);
    for (double x0 : xs) {
        std::vector<double> ys;
        quadratic_in_one(m.a22, m.a12 * x0 * x0, eps, ys);
        for (double y : ys) cands.push_back(finish({x0, y}, m));
    }
}

// a12 negligible: y in {0, 1/a22}, then a11 x^2 - x + a21 y0^2 = 0
void decoupled_in_y(const StructMatrix2& m, double eps, std::vector<Candidate>& cands) {
    std::vector<double> ys{0.0};
    if (std::fabs(m.a22) > eps) ys.push_back(1.0 / m.a22);
    for (double y0 : ys) {
        std::vector<double> xs;
        quadratic_in_one(m.a11, m.a21 * y0 * y0, eps, xs);
        for (double x : xs) cands.push_back(finish({x, y0}, m));
    }
}

IdempotentSet assemble(std::vector<Candidate> cands, const StructMatrix2& m,
                       bool complete) {
    cands.push_back(finish({0.0, 0.0}, m)); // the origin is always a solution
    std::vector<Candidate> good;
    for (const Candidate& c : cands)
        if (c.ok) good.push_back(c);
    std::sort(good.begin(), good.end(), [](const Candidate& a, const Candidate& b) {
        if (a.p.x1 != b.p.x1) return a.p.x1 < b.p.x1;
        return a.p.x2 < b.p.x2;
    });
    IdempotentSet set;
    set.complete = complete;
    for (const Candidate& c : good) {
        bool dup = false;
        for (const AlgebraElement& kept : set.points)
            if (point_dist(kept, c.p) <= kDedupeRadius) { dup = true; break; }
        if (dup) continue;
        set.points.push_back(c.p);
        set.residuals.push_back(c.residual);
    }
    return set;
}

IdempotentSet fallback_multistart(const StructMatrix2& m, double eps) {
    const double radius = 2.0 * (1.0 + 1.0 / std::max(m.max_abs(), eps));
    std::vector<Candidate> cands;
    constexpr int kGrid = 13;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            AlgebraElement p{-radius + 2.0 * radius * i / (kGrid - 1),
                             -radius + 2.0 * radius * j / (kGrid - 1)};
            if (!newton_refine(p, m, 60, 1e-13)) continue;
            Candidate c;
            c.p = p;
            c.residual = idempotent_residual(p, m);
            c.ok = std::isfinite(p.x1) && std::isfinite(p.x2) &&
                   c.residual < kSolverTolerance;
            cands.push_back(c);
        }
    }
    bool any = false;
    for (const Candidate& c : cands) any = any || c.ok;
    if (!any) throw SolverInconclusive("idempotent fallback: no start converged");
    return assemble(std::move(cands), m, /*complete=*/false);
}

} // namespace

IdempotentSet idempotents_fallback(const StructMatrix2& m, double eps) {
    return fallback_multistart(m, eps);
}

IdempotentSet idempotents(const StructMatrix2& m, double eps) {
    std::vector<Candidate> cands;
    const double p21 = std::fabs(m.a21);
    const double p12 = std::fabs(m.a12);
    if (p21 <= eps) {
        decoupled_in_x(m, eps, cands);
    } else if (p12 <= eps) {
        decoupled_in_y(m, eps, cands);
    } else if (p21 >= p12) {
        eliminate_via_a21(m, cands);
    } else {
        eliminate_via_a12(m, cands);
    }
    for (const Candidate& c : cands) {
        if (!c.ok && (!std::isfinite(c.p.x1) || !std::isfinite(c.p.x2) ||
                      std::isnan(c.residual)))
            return fallback_multistart(m, eps);
    }
    return assemble(std::move(cands), m, /*complete=*/true);
}

} // namespace cea
