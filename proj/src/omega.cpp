#include "isovec/omega_tables.hpp"

#include <cmath>

namespace isovec {

namespace {

int d_sign(CaseLabel label) {
    switch (label) {
        case CaseLabel::CnonzeroDpos:
        case CaseLabel::CzeroDpos: return 1;
        case CaseLabel::CnonzeroDneg:
        case CaseLabel::CzeroDneg: return -1;
        default: return 0;
    }
}

bool c_zero(CaseLabel label) {
    return label == CaseLabel::CzeroDpos || label == CaseLabel::CzeroDzero ||
           label == CaseLabel::CzeroDneg;
}

}  // namespace

std::optional<OmegaClosedForm> omega_closed_form(CaseLabel label, int i, int j, double eps,
                                                 double gamma) {
    const int dim = c_zero(label) ? 6 : 4;
    if (i < 0 || j <= i || j >= dim) throw std::invalid_argument("omega_closed_form: bad pair");
    const int sign = d_sign(label);
    const double g = gamma;

    if (sign == 0) {
        if (i == 0 && j == 1)
            return OmegaClosedForm([g](double t, double q, double B, double E) {
                return t * t * E + t * q * B - (g * t - q * q) / 2.0;
            });
        if (i == 0 && j == 2)
            return OmegaClosedForm([g](double t, double q, double B, double E) {
                return 2.0 * t * E + q * B - g / 2.0;
            });
        if (i == 0 && j == 5)
            return OmegaClosedForm([](double t, double q, double B, double) {
                return t * B + q;
            });
        if (i == 1 && j == 2)
            return OmegaClosedForm([](double, double, double, double E) { return E; });
        if (i == 1 && j == 4)
            return OmegaClosedForm([](double t, double q, double B, double) {
                return -(t * B + q) / 2.0;
            });
        if (i == 1 && j == 5)
            return OmegaClosedForm([](double, double, double B, double) { return B / 2.0; });
        if (i == 2 && j == 4)
            return OmegaClosedForm([](double, double, double B, double) { return -B; });
        if (i == 4 && j == 5)
            return OmegaClosedForm([](double, double, double, double) { return 1.0; });
        return std::nullopt;
    }

    if (sign > 0) {
        const double e = eps;
        auto w1 = [e, g](double t, double q, double B, double E) {
            const double ep = std::exp(e * t), em = std::exp(-e * t);
            return (ep + em - 2.0) / (e * e) * E + q * (ep - em) / (2.0 * e) * B +
                   q * q * (ep + em) / 4.0 - g * (ep - em) / (4.0 * e);
        };
        auto w2 = [e, g](double t, double q, double B, double E) {
            const double ep = std::exp(e * t), em = std::exp(-e * t);
            return (ep - em) / (2.0 * e) * E + q * (ep + em) / 4.0 * B +
                   e * q * q * (ep - em) / 8.0 - g * (ep + em) / 8.0 + g / 4.0;
        };
        auto w5 = [e](double t, double q, double B, double) {
            const double hp = std::exp(e * t / 2), hm = std::exp(-e * t / 2);
            return (hp - hm) / e * B + q * (hp + hm) / 2.0;
        };
        auto w6 = [e](double t, double q, double B, double) {
            const double hm = std::exp(-e * t / 2);
            return hm * B - e * q * hm / 2.0;
        };
        if (i == 0 && j == 1) return OmegaClosedForm(w1);
        if (i == 0 && j == 2)
            return OmegaClosedForm([w2, g](double t, double q, double B, double E) {
                return 2.0 * w2(t, q, B, E) - g / 2.0;
            });
        if (i == 0 && j == 5) return OmegaClosedForm(w5);
        if (i == 1 && j == 2)
            return OmegaClosedForm([w1, e](double t, double q, double B, double E) {
                return (e * e / 2.0) * w1(t, q, B, E) + E;
            });
        if (i == 1 && j == 4)
            return OmegaClosedForm([w5](double t, double q, double B, double E) {
                return -0.5 * w5(t, q, B, E);
            });
        if (i == 1 && j == 5)
            return OmegaClosedForm([w5, w6, e](double t, double q, double B, double E) {
                return (e / 2.0) * w5(t, q, B, E) + 0.5 * w6(t, q, B, E);
            });
        if (i == 2 && j == 4)
            return OmegaClosedForm([w5, w6, e](double t, double q, double B, double E) {
                return -(e / 2.0) * w5(t, q, B, E) - w6(t, q, B, E);
            });
        if (i == 2 && j == 5)
            return OmegaClosedForm([w6, e](double t, double q, double B, double E) {
                return (e / 2.0) * w6(t, q, B, E);
            });
        if (i == 4 && j == 5)
            return OmegaClosedForm([](double, double, double, double) { return 1.0; });
        return std::nullopt;
    }

    const double e = eps;
    auto w1 = [e, g](double t, double q, double B, double E) {
        const double c1 = std::cos(e * t), s1 = std::sin(e * t);
        return 2.0 * (1.0 - c1) / (e * e) * E + q * s1 / e * B + q * q * c1 / 2.0 -
               g * s1 / (2.0 * e);
    };
    auto w2 = [e, g](double t, double q, double B, double E) {
        const double c1 = std::cos(e * t), s1 = std::sin(e * t);
        return s1 / e * E + q * c1 / 2.0 * B - e * q * q * s1 / 4.0 - g * c1 / 4.0 + g / 4.0;
    };
    auto w5 = [e](double t, double q, double B, double) {
        return (2.0 / e) * std::sin(e * t / 2) * B + q * std::cos(e * t / 2);
    };
    auto w6 = [e](double t, double q, double B, double) {
        return std::cos(e * t / 2) * B - (e * q / 2.0) * std::sin(e * t / 2);
    };
    if (i == 0 && j == 1) return OmegaClosedForm(w1);
    if (i == 0 && j == 2)
        return OmegaClosedForm([w2, g](double t, double q, double B, double E) {
            return 2.0 * w2(t, q, B, E) - g / 2.0;
        });
    if (i == 0 && j == 5) return OmegaClosedForm(w5);
    if (i == 1 && j == 2)
        return OmegaClosedForm([w1, e](double t, double q, double B, double E) {
            return -(e * e / 2.0) * w1(t, q, B, E) + E;
        });
    if (i == 1 && j == 4)
        return OmegaClosedForm([w5](double t, double q, double B, double E) {
            return -0.5 * w5(t, q, B, E);
        });
    if (i == 1 && j == 5)
        return OmegaClosedForm([w6](double t, double q, double B, double E) {
            return 0.5 * w6(t, q, B, E);
        });
    if (i == 2 && j == 4)
        return OmegaClosedForm([w6](double t, double q, double B, double E) {
            return -w6(t, q, B, E);
        });
    if (i == 2 && j == 5)
        return OmegaClosedForm([w5, e](double t, double q, double B, double E) {
            return (e * e / 4.0) * w5(t, q, B, E);
        });
    if (i == 4 && j == 5)
        return OmegaClosedForm([](double, double, double, double) { return 1.0; });
    return std::nullopt;
}

std::vector<std::string> omega_table_corrections(CaseLabel label) {
    std::vector<std::string> notes;
    notes.push_back(
        "All Btilde/Etilde coefficients are stated for Btilde = -gamma eta_q/eta and "
        "Etilde = -gamma eta_t/eta; tables typeset with the gamma-free convention carry an "
        "extra factor gamma on those coefficients.");
    switch (d_sign(label)) {
        case 0:
            notes.push_back("pair (1,2): Btilde coefficient is t*q");
            notes.push_back("pair (1,3): Etilde coefficient is 2*t");
            break;
        case 1:
            notes.push_back(
                "pair (1,2): trailing scalar term is -gamma (e^{et}-e^{-et})/(4e)");
            notes.push_back("pair (1,3): Btilde coefficient is q (e^{et}+e^{-et})/2");
            notes.push_back(
                "pair (2,5): scalar term is -(q/4)(e^{et/2}+e^{-et/2}) (factor q)");
            notes.push_back(
                "pair (3,5): Btilde coefficient is -(e^{et/2}+e^{-et/2})/2 (factor 1/2)");
            break;
        default:
            notes.push_back("pair (2,3): trailing scalar term is (gamma e/4) sin(e t)");
            break;
    }
    return notes;
}

std::vector<OmegaEntryCheck> omega_table_check(const AlgebraCase& table_basis,
                                               const Solution& eta,
                                               const EvaluationGrid& grid) {
    if (table_basis.potential.D != 0.0 && table_basis.family != BasisFamily::Transformed)
        throw std::invalid_argument("omega_table_check: D != 0 requires the transformed basis");
    const double g = table_basis.potential.gamma;
    std::vector<OmegaEntryCheck> out;
    for (int i = 0; i < table_basis.dim(); ++i)
        for (int j = i + 1; j < table_basis.dim(); ++j) {
            OmegaEntryCheck chk;
            chk.i = i;
            chk.j = j;
            const OmegaFunctional omega(table_basis.fields[static_cast<std::size_t>(i)],
                                        table_basis.fields[static_cast<std::size_t>(j)], eta, g);
            chk.trivial_zero = omega.is_zero();
            const auto form =
                omega_closed_form(table_basis.label, i, j, table_basis.epsilon, g);
            for (double t : grid.ts)
                for (double q : grid.qs) {
                    const Jet2 jet = eta.jet2(t, q);
                    const double B = -g * jet.deriv(0, 1) / jet.value();
                    const double E = -g * jet.deriv(1, 0) / jet.value();
                    const double want = form ? (*form)(t, q, B, E) : 0.0;
                    const double got = omega.is_zero() ? 0.0 : omega(t, q);
                    chk.max_abs_diff = std::max(chk.max_abs_diff, std::abs(got - want));
                    chk.scale = std::max(chk.scale, std::abs(want));
                }
            out.push_back(chk);
        }
    return out;
}

}  // namespace isovec
