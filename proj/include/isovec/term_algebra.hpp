#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace isovec {

/// One summand  coeff * t^tpow * q^qpow * e^{exprate*t} * {1 | cos(omega t) | sin(omega t)}.
/// In normal form coeff != 0 and omega > 0 whenever osc != None (a zero
/// frequency folds into None).
struct Term {
    enum class Osc : std::uint8_t { None = 0, Cos = 1, Sin = 2 };

    double coeff = 0.0;
    int tpow = 0;
    int qpow = 0;
    double exprate = 0.0;
    Osc osc = Osc::None;
    double omega = 0.0;

    /// Canonical key order: (exprate, omega, osc kind, tpow, qpow).
    friend bool key_less(const Term& a, const Term& b) {
        if (a.exprate != b.exprate) return a.exprate < b.exprate;
        if (a.omega != b.omega) return a.omega < b.omega;
        if (a.osc != b.osc) return a.osc < b.osc;
        if (a.tpow != b.tpow) return a.tpow < b.tpow;
        return a.qpow < b.qpow;
    }
    friend bool key_equal(const Term& a, const Term& b) {
        return a.exprate == b.exprate && a.omega == b.omega && a.osc == b.osc &&
               a.tpow == b.tpow && a.qpow == b.qpow;
    }
};

/// Exact finite sum of Terms kept in a unique normal form: terms sorted by
/// canonical key, like terms merged, negligible coefficients dropped at the
/// relative merge tolerance 1e-12. Closed under +, *, d/dt, d/dq, which makes
/// operator identities decidable by comparing normal forms.
class ScalarField {
public:
    static constexpr double kMergeTol = 1e-12;

    ScalarField() = default;
    explicit ScalarField(std::vector<Term> terms) { assign(std::move(terms)); }

    static ScalarField zero() { return ScalarField(); }
    static ScalarField constant(double c);
    /// c * t^tp * q^qp
    static ScalarField monomial(double c, int tp, int qp);
    /// c * t^tp * q^qp * e^{rate t}
    static ScalarField exponential(double c, int tp, int qp, double rate);
    /// c * t^tp * q^qp * e^{rate t} * cos/sin(omega t); omega may be any real.
    static ScalarField oscillating(double c, int tp, int qp, double rate, Term::Osc osc,
                                   double omega);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool depends_on_q() const;
    bool depends_on_t() const;
    double constant_value() const;  // 0 for the empty field; requires is_constant()
    double max_abs_coeff() const;

    ScalarField operator-() const;
    friend ScalarField operator+(const ScalarField& f, const ScalarField& g);
    friend ScalarField operator-(const ScalarField& f, const ScalarField& g);
    friend ScalarField operator*(const ScalarField& f, const ScalarField& g);
    friend ScalarField operator*(double s, const ScalarField& f);
    friend ScalarField operator*(const ScalarField& f, double s) { return s * f; }
    ScalarField& operator+=(const ScalarField& g) { return *this = *this + g; }
    ScalarField& operator-=(const ScalarField& g) { return *this = *this - g; }

    ScalarField d_dt() const;
    ScalarField d_dq() const;

    /// Equality of normal forms under the merge tolerance.
    friend bool operator==(const ScalarField& f, const ScalarField& g) {
        return (f - g).is_zero();
    }

    template <class T>
    T eval(const T& t, const T& q) const {
        T acc(0.0);
        for (const Term& m : terms_) {
            T v(m.coeff);
            for (int k = 0; k < m.tpow; ++k) v = v * t;
            for (int k = 0; k < m.qpow; ++k) v = v * q;
            if (m.exprate != 0.0) v = v * exp(m.exprate * t);
            if (m.osc == Term::Osc::Cos) v = v * cos(m.omega * t);
            else if (m.osc == Term::Osc::Sin) v = v * sin(m.omega * t);
            acc += v;
        }
        return acc;
    }
    double operator()(double t, double q) const { return eval<double>(t, q); }

    std::string str() const;  // human-readable rendering for CLI tables
    nlohmann::json to_json() const;
    static ScalarField from_json(const nlohmann::json& j);

private:
    void assign(std::vector<Term> raw);
    std::vector<Term> terms_;
};

}  // namespace isovec
