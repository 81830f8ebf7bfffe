#pragma once

#include <string>
#include <vector>

namespace cea {

/// Scalar time functions the chain matrices are parameterized by. A small
/// closed grammar rather than arbitrary callables keeps specs serializable
/// and runs reproducible.
struct ControllerFn {
    enum class Kind { exp, affine, poly, cos_plus, constant };

    Kind kind = Kind::constant;
    std::vector<double> params;
    bool reciprocal = false; // evaluate 1/f(t)

    double operator()(double t) const;

    static ControllerFn make_exp(double k) { return {Kind::exp, {k}, false}; }
    static ControllerFn make_affine(double c0, double c1) { return {Kind::affine, {c0, c1}, false}; }
    static ControllerFn make_poly(std::vector<double> coeffs) { return {Kind::poly, std::move(coeffs), false}; }
    static ControllerFn make_cos_plus(double c) { return {Kind::cos_plus, {c}, false}; }
    static ControllerFn make_const(double c) { return {Kind::constant, {c}, false}; }
    static ControllerFn recip(ControllerFn inner) {
        inner.reciprocal = !inner.reciprocal;
        return inner;
    }
};

/// Serialized kind string: "exp", "affine", "poly", "cosPlus", "const",
/// with a "recip:" prefix for the reciprocal wrapper.
std::string kind_string(const ControllerFn& fn);

/// Inverse of kind_string; throws SpecParseError on an unknown kind or a
/// parameter count that does not fit the kind.
ControllerFn make_controller(const std::string& kind, std::vector<double> params);

} // namespace cea
