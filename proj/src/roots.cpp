#include "cea/roots.hpp"

#include <algorithm>
#include <cmath>

namespace cea {

namespace {

constexpr double kLeadTrim = 1e-14; // relative cutoff for a vanishing leading coefficient

Complex eval_horner(std::span<const double> c, std::size_t deg, Complex x) {
    Complex acc(c[deg], 0.0);
    for (std::size_t i = deg; i-- > 0;) acc = acc * x + Complex(c[i], 0.0);
    return acc;
}

Complex eval_derivative(std::span<const double> c, std::size_t deg, Complex x) {
    Complex acc(static_cast<double>(deg) * c[deg], 0.0);
    for (std::size_t i = deg - 1; i >= 1; --i) {
        acc = acc * x + Complex(static_cast<double>(i) * c[i], 0.0);
        if (i == 1) break;
    }
    return acc;
}

void solve_quadratic(Complex b, Complex c, std::vector<Complex>& out) {
    // x^2 + b x + c = 0, stable splitting of the pair
    const Complex d = std::sqrt(b * b - 4.0 * c);
    const Complex q = (std::real(std::conj(b) * d) >= 0.0) ? -0.5 * (b + d) : -0.5 * (b - d);
    if (std::abs(q) > 0.0) {
        out.push_back(q);
        out.push_back(c / q);
    } else {
        out.push_back(Complex(0.0, 0.0));
        out.push_back(-b);
    }
}

void solve_cubic(Complex b, Complex c, Complex d, std::vector<Complex>& out) {
    // x^3 + b x^2 + c x + d = 0, Cardano on the depressed form t^3 + p t + q
    const Complex shift = b / 3.0;
    const Complex p = c - b * b / 3.0;
    const Complex q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
        for (int k = 0; k < 3; ++k) out.push_back(-shift);
        return;
    }
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
    const Complex omega(-0.5, 0.8660254037844386467637231707529362);
    Complex w(1.0, 0.0);
    for (int k = 0; k < 3; ++k) {
        const Complex uk = u * w;
        out.push_back(uk - p / (3.0 * uk) - shift);
        w *= omega;
    }
}

void solve_quartic(Complex b, Complex c, Complex d, Complex e, std::vector<Complex>& out) {
    // x^4 + b x^3 + c x^2 + d x + e = 0, Ferrari via the resolvent cubic
    const Complex shift = b / 4.0;
    const Complex b2 = b * b;
    const Complex p = c - 3.0 * b2 / 8.0;
    const Complex q = b2 * b / 8.0 - b * c / 2.0 + d;
    const Complex r = -3.0 * b2 * b2 / 256.0 + b2 * c / 16.0 - b * d / 4.0 + e;

    if (std::abs(q) < 1e-14 * (1.0 + std::abs(p) + std::abs(r))) {
        // biquadratic: y^4 + p y^2 + r = 0
        std::vector<Complex> zz;
        solve_quadratic(p, r, zz);
        for (const Complex& z : zz) {
            const Complex s = std::sqrt(z);
            out.push_back(s - shift);
            out.push_back(-s - shift);
        }
        return;
    }

    // 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0; any nonzero root works,
    // the largest keeps sqrt(2m) well scaled.
    std::vector<Complex> ms;
    solve_cubic(p, p * p / 4.0 - r, -q * q / 8.0, ms);
    Complex m = ms[0];
    for (const Complex& cand : ms)
        if (std::abs(cand) > std::abs(m)) m = cand;

    const Complex s2 = std::sqrt(2.0 * m);
    const Complex half = p / 2.0 + m;
    const Complex qq = q / (4.0 * m) * s2;
    solve_quadratic(-s2, half + qq, out);
    solve_quadratic(s2, half - qq, out);
    for (std::size_t i = out.size() - 4; i < out.size(); ++i) out[i] -= shift;
}

} // namespace

Complex poly_eval(std::span<const double> coeffs, Complex x) {
    if (coeffs.empty()) return Complex(0.0, 0.0);
    return eval_horner(coeffs, coeffs.size() - 1, x);
}

std::vector<Complex> poly_roots(std::span<const double> coeffs) {
    double maxc = 0.0;
    for (double c : coeffs) maxc = std::max(maxc, std::fabs(c));
    std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    while (deg > 0 && std::fabs(coeffs[deg]) <= kLeadTrim * maxc) --deg;

    std::vector<Complex> roots;
    if (deg == 0 || maxc == 0.0) return roots;

    const double lead = coeffs[deg];
    const auto n = [&](std::size_t i) { return Complex(coeffs[i] / lead, 0.0); };
    switch (deg) {
        case 1: roots.push_back(-n(0)); break;
        case 2: solve_quadratic(n(1), n(0), roots); break;
        case 3: solve_cubic(n(2), n(1), n(0), roots); break;
        default: solve_quartic(n(3), n(2), n(1), n(0), roots); break;
    }

    // two Newton iterations against the full-degree polynomial
    for (Complex& z : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex f = eval_horner(coeffs, deg, z);
            const Complex df = eval_derivative(coeffs, deg, z);
            if (std::abs(df) < 1e-300) break;
            z -= f / df;
        }
    }
    return roots;
}

std::vector<double> real_roots(std::span<const double> coeffs, double imag_tol) {
    std::vector<double> out;
    for (const Complex& z : poly_roots(coeffs))
        if (std::fabs(z.imag()) < imag_tol) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cea
