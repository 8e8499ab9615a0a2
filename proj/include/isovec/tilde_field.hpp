#pragma once

#include <string>

#include "isovec/term_algebra.hpp"

namespace isovec {

/// Potential V(t,q) = C/q^2 + D q^2 together with the diffusion constant gamma.
struct Potential {
    double C = 0.0;
    double D = 0.0;
    double gamma = 1.0;

    Potential() = default;
    Potential(double C_, double D_, double gamma_);
    double operator()(double /*t*/, double q) const { return C / (q * q) + D * q * q; }
};

/// First-order operator  a(t) d/dt + b(t,q) d/dq + c(t,q)*  with exact
/// ScalarField coefficients. The d/dt coefficient is required to depend on t
/// only, which is what makes the commutator formula below exact.
struct TildeField {
    ScalarField a;  // coefficient of d/dt
    ScalarField b;  // coefficient of d/dq
    ScalarField c;  // zeroth-order multiplier

    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero(); }
    double max_abs_coeff() const;
    std::string str() const;
    nlohmann::json to_json() const;

    friend TildeField operator+(const TildeField& x, const TildeField& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c};
    }
    friend TildeField operator-(const TildeField& x, const TildeField& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c};
    }
    friend TildeField operator*(double s, const TildeField& x) {
        return {s * x.a, s * x.b, s * x.c};
    }
    friend bool operator==(const TildeField& x, const TildeField& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }

    /// Applies the derivation part a d/dt + b d/dq to a scalar field.
    ScalarField derive(const ScalarField& f) const { return a * f.d_dt() + b * f.d_dq(); }
};

/// Commutator [X, Y] of two such operators. Rejects inputs whose d/dt
/// coefficient depends on q.
TildeField bracket(const TildeField& x, const TildeField& y);

}  // namespace isovec
