#include "cea/controllers.hpp"

#include <cmath>

#include "cea/errors.hpp"

namespace cea {

double ControllerFn::operator()(double t) const {
    double v = 0.0;
    switch (kind) {
        case Kind::exp: v = std::exp(params[0] * t); break;
        case Kind::affine: v = params[0] + params[1] * t; break;
        case Kind::poly: {
            for (std::size_t i = params.size(); i-- > 0;) v = v * t + params[i];
            break;
        }
        case Kind::cos_plus: v = std::cos(t) + params[0]; break;
        case Kind::constant: v = params[0]; break;
    }
    return reciprocal ? 1.0 / v : v;
}

std::string kind_string(const ControllerFn& fn) {
    std::string base;
    switch (fn.kind) {
        case ControllerFn::Kind::exp: base = "exp"; break;
        case ControllerFn::Kind::affine: base = "affine"; break;
        case ControllerFn::Kind::poly: base = "poly"; break;
        case ControllerFn::Kind::cos_plus: base = "cosPlus"; break;
        case ControllerFn::Kind::constant: base = "const"; break;
    }
    return fn.reciprocal ? "recip:" + base : base;
}

ControllerFn make_controller(const std::string& kind, std::vector<double> params) {
    ControllerFn fn;
    std::string base = kind;
    if (base.rfind("recip:", 0) == 0) {
        fn.reciprocal = true;
        base = base.substr(6);
    }
    if (base == "exp") fn.kind = ControllerFn::Kind::exp;
    else if (base == "affine") fn.kind = ControllerFn::Kind::affine;
    else if (base == "poly") fn.kind = ControllerFn::Kind::poly;
    else if (base == "cosPlus") fn.kind = ControllerFn::Kind::cos_plus;
    else if (base == "const") fn.kind = ControllerFn::Kind::constant;
    else throw SpecParseError("unknown controller kind '" + kind + "'");

    const std::size_t n = params.size();
    const bool ok = (fn.kind == ControllerFn::Kind::poly) ? n >= 1
                    : (fn.kind == ControllerFn::Kind::affine) ? n == 2
                                                              : n == 1;
    if (!ok) throw SpecParseError("controller kind '" + kind + "' got " +
                                  std::to_string(n) + " params");
    fn.params = std::move(params);
    return fn;
}

} // namespace cea
