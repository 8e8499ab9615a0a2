#include "isovec/term_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isovec {

namespace {

// Folds sign/zero conventions of a trig factor into normal form:
// cos(-w) = cos(w), sin(-w) = -sin(w), cos(0) = 1, sin(0) = 0.
void push_osc(std::vector<Term>& out, double coeff, int tp, int qp, double rate, Term::Osc osc,
              double omega) {
    if (coeff == 0.0) return;
    if (osc == Term::Osc::None || omega == 0.0) {
        if (osc == Term::Osc::Sin && omega == 0.0) return;  // sin(0) == 0
        out.push_back({coeff, tp, qp, rate, Term::Osc::None, 0.0});
        return;
    }
    if (omega < 0.0) {
        omega = -omega;
        if (osc == Term::Osc::Sin) coeff = -coeff;
    }
    out.push_back({coeff, tp, qp, rate, osc, omega});
}

}  // namespace

ScalarField ScalarField::constant(double c) { return monomial(c, 0, 0); }

ScalarField ScalarField::monomial(double c, int tp, int qp) {
    return exponential(c, tp, qp, 0.0);
}

ScalarField ScalarField::exponential(double c, int tp, int qp, double rate) {
    return oscillating(c, tp, qp, rate, Term::Osc::None, 0.0);
}

ScalarField ScalarField::oscillating(double c, int tp, int qp, double rate, Term::Osc osc,
                                     double omega) {
    if (tp < 0 || qp < 0) throw std::invalid_argument("ScalarField: negative power");
    std::vector<Term> v;
    push_osc(v, c, tp, qp, rate, osc, omega);
    return ScalarField(std::move(v));
}

void ScalarField::assign(std::vector<Term> raw) {
    for (const Term& m : raw) {
        if (!std::isfinite(m.coeff) || !std::isfinite(m.exprate) || !std::isfinite(m.omega))
            throw std::invalid_argument("ScalarField: non-finite term data");
        if (m.tpow < 0 || m.qpow < 0)
            throw std::invalid_argument("ScalarField: negative power");
        if (m.osc != Term::Osc::None && m.omega <= 0.0)
            throw std::invalid_argument("ScalarField: oscillating term needs omega > 0");
    }
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return key_less(a, b); });
    terms_.clear();
    std::size_t i = 0;
    while (i < raw.size()) {
        Term acc = raw[i];
        double scale = std::abs(acc.coeff);
        std::size_t j = i + 1;
        while (j < raw.size() && key_equal(raw[j], acc)) {
            acc.coeff += raw[j].coeff;
            scale = std::max(scale, std::abs(raw[j].coeff));
            ++j;
        }
        if (std::abs(acc.coeff) > kMergeTol * scale) terms_.push_back(acc);
        i = j;
    }
}

bool ScalarField::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_[0].tpow == 0 && terms_[0].qpow == 0 &&
           terms_[0].exprate == 0.0 && terms_[0].osc == Term::Osc::None;
}

bool ScalarField::depends_on_q() const {
    for (const Term& m : terms_)
        if (m.qpow > 0) return true;
    return false;
}

bool ScalarField::depends_on_t() const {
    for (const Term& m : terms_)
        if (m.tpow > 0 || m.exprate != 0.0 || m.osc != Term::Osc::None) return true;
    return false;
}

double ScalarField::constant_value() const {
    if (terms_.empty()) return 0.0;
    if (!is_constant()) throw std::logic_error("ScalarField: not a constant");
    return terms_[0].coeff;
}

double ScalarField::max_abs_coeff() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

ScalarField ScalarField::operator-() const {
    ScalarField r = *this;
    for (Term& m : r.terms_) m.coeff = -m.coeff;
    return r;
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    std::vector<Term> v = f.terms_;
    v.insert(v.end(), g.terms_.begin(), g.terms_.end());
    return ScalarField(std::move(v));
}

ScalarField operator-(const ScalarField& f, const ScalarField& g) { return f + (-g); }

ScalarField operator*(double s, const ScalarField& f) {
    std::vector<Term> v = f.terms_;
    for (Term& m : v) m.coeff *= s;
    return ScalarField(std::move(v));
}

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
    std::vector<Term> v;
    v.reserve(f.terms_.size() * g.terms_.size() * 2);
    for (const Term& a : f.terms_)
        for (const Term& b : g.terms_) {
            const double c = a.coeff * b.coeff;
            const int tp = a.tpow + b.tpow;
            const int qp = a.qpow + b.qpow;
            const double rate = a.exprate + b.exprate;
            using O = Term::Osc;
            if (a.osc == O::None && b.osc == O::None) {
                push_osc(v, c, tp, qp, rate, O::None, 0.0);
            } else if (a.osc == O::None || b.osc == O::None) {
                const Term& o = (a.osc == O::None) ? b : a;
                push_osc(v, c, tp, qp, rate, o.osc, o.omega);
            } else {
                // product-to-sum so the algebra stays closed
                const double wp = a.omega + b.omega;
                const double wm = a.omega - b.omega;
                if (a.osc == O::Cos && b.osc == O::Cos) {
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Cos, wm);
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Cos, wp);
                } else if (a.osc == O::Sin && b.osc == O::Sin) {
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Cos, wm);
                    push_osc(v, -0.5 * c, tp, qp, rate, O::Cos, wp);
                } else if (a.osc == O::Sin && b.osc == O::Cos) {
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Sin, wp);
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Sin, wm);
                } else {  // Cos * Sin
                    push_osc(v, 0.5 * c, tp, qp, rate, O::Sin, wp);
                    push_osc(v, -0.5 * c, tp, qp, rate, O::Sin, wm);
                }
            }
        }
    return ScalarField(std::move(v));
}

ScalarField ScalarField::d_dt() const {
    std::vector<Term> v;
    for (const Term& m : terms_) {
        if (m.tpow > 0)
            push_osc(v, m.coeff * m.tpow, m.tpow - 1, m.qpow, m.exprate, m.osc, m.omega);
        if (m.exprate != 0.0)
            push_osc(v, m.coeff * m.exprate, m.tpow, m.qpow, m.exprate, m.osc, m.omega);
        if (m.osc == Term::Osc::Cos)
            push_osc(v, -m.coeff * m.omega, m.tpow, m.qpow, m.exprate, Term::Osc::Sin, m.omega);
        else if (m.osc == Term::Osc::Sin)
            push_osc(v, m.coeff * m.omega, m.tpow, m.qpow, m.exprate, Term::Osc::Cos, m.omega);
    }
    return ScalarField(std::move(v));
}

ScalarField ScalarField::d_dq() const {
    std::vector<Term> v;
    for (const Term& m : terms_)
        if (m.qpow > 0)
            push_osc(v, m.coeff * m.qpow, m.tpow, m.qpow - 1, m.exprate, m.osc, m.omega);
    return ScalarField(std::move(v));
}

std::string ScalarField::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& m : terms_) {
        double c = m.coeff;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            c = std::abs(c);
        }
        first = false;
        std::vector<std::string> factors;
        if (m.tpow == 1) factors.push_back("t");
        else if (m.tpow > 1) factors.push_back("t^" + std::to_string(m.tpow));
        if (m.qpow == 1) factors.push_back("q");
        else if (m.qpow > 1) factors.push_back("q^" + std::to_string(m.qpow));
        auto num = [](double x) {
            std::ostringstream s;
            s << x;
            return s.str();
        };
        if (m.exprate != 0.0) factors.push_back("exp(" + num(m.exprate) + " t)");
        if (m.osc == Term::Osc::Cos) factors.push_back("cos(" + num(m.omega) + " t)");
        else if (m.osc == Term::Osc::Sin) factors.push_back("sin(" + num(m.omega) + " t)");
        if (c != 1.0 || factors.empty()) os << num(c) << (factors.empty() ? "" : " ");
        for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? " " : "") << factors[k];
    }
    return os.str();
}

nlohmann::json ScalarField::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Term& m : terms_) {
        nlohmann::json t{{"coeff", m.coeff}, {"tpow", m.tpow}, {"qpow", m.qpow},
                         {"exprate", m.exprate}};
        t["osc"] = m.osc == Term::Osc::None ? "none" : (m.osc == Term::Osc::Cos ? "cos" : "sin");
        if (m.osc != Term::Osc::None) t["omega"] = m.omega;
        arr.push_back(std::move(t));
    }
    return nlohmann::json{{"terms", std::move(arr)}};
}

ScalarField ScalarField::from_json(const nlohmann::json& j) {
    std::vector<Term> v;
    for (const auto& t : j.at("terms")) {
        Term m;
        m.coeff = t.at("coeff").get<double>();
        m.tpow = t.at("tpow").get<int>();
        m.qpow = t.at("qpow").get<int>();
        m.exprate = t.at("exprate").get<double>();
        const std::string osc = t.value("osc", "none");
        if (osc == "cos") m.osc = Term::Osc::Cos;
        else if (osc == "sin") m.osc = Term::Osc::Sin;
        else m.osc = Term::Osc::None;
        m.omega = m.osc == Term::Osc::None ? 0.0 : t.at("omega").get<double>();
        v.push_back(m);
    }
    return ScalarField(std::move(v));
}

}  // namespace isovec
