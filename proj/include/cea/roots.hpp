#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cea/tolerances.hpp"

namespace cea {

using Complex = std::complex<double>;

/// All complex roots of c[0] + c[1] x + ... + c[n] x^n, degree <= 4.
/// Closed forms (quadratic formula, Cardano, Ferrari with resolvent cubic);
/// a leading coefficient that is negligible against the largest coefficient
/// drops the degree. Each root gets two Newton polish iterations on the
/// original polynomial. Branch choices are deterministic.
std::vector<Complex> poly_roots(std::span<const double> coeffs);

/// Real roots: polished roots with |Im| < imag_tol, sorted ascending.
std::vector<double> real_roots(std::span<const double> coeffs,
                               double imag_tol = kImagTolerance);

/// Horner evaluation of the same ascending-coefficient convention.
Complex poly_eval(std::span<const double> coeffs, Complex x);

} // namespace cea
