#include "isovec/tilde_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace isovec {

Potential::Potential(double C_, double D_, double gamma_) : C(C_), D(D_), gamma(gamma_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("Potential: gamma must be positive");
}

double TildeField::max_abs_coeff() const {
    return std::max({a.max_abs_coeff(), b.max_abs_coeff(), c.max_abs_coeff()});
}

std::string TildeField::str() const {
    std::string s;
    if (!a.is_zero()) s += "(" + a.str() + ") d/dt";
    if (!b.is_zero()) {
        if (!s.empty()) s += " + ";
        s += "(" + b.str() + ") d/dq";
    }
    if (!c.is_zero()) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
    }
    return s.empty() ? "0" : s;
}

nlohmann::json TildeField::to_json() const {
    return nlohmann::json{{"dt", a.to_json()}, {"dq", b.to_json()}, {"mult", c.to_json()}};
}

TildeField bracket(const TildeField& x, const TildeField& y) {
    if (x.a.depends_on_q() || y.a.depends_on_q())
        throw std::invalid_argument("bracket: d/dt coefficient must not depend on q");
    return {x.derive(y.a) - y.derive(x.a),
            x.derive(y.b) - y.derive(x.b),
            x.derive(y.c) - y.derive(x.c)};
}

}  // namespace isovec
