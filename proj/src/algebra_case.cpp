#include "isovec/algebra_case.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace isovec {

namespace {

using SF = ScalarField;
using Osc = Term::Osc;

CaseLabel classify(const Potential& p) {
    if (p.C != 0.0) {
        if (p.D > 0.0) return CaseLabel::CnonzeroDpos;
        if (p.D < 0.0) return CaseLabel::CnonzeroDneg;
        return CaseLabel::CnonzeroDzero;
    }
    if (p.D > 0.0) return CaseLabel::CzeroDpos;
    if (p.D < 0.0) return CaseLabel::CzeroDneg;
    return CaseLabel::CzeroDzero;
}

std::vector<TildeField> primary_fields(const Potential& p, double eps) {
    const double g = p.gamma;
    std::vector<TildeField> f;
    if (p.D > 0.0) {
        f.push_back({SF::exponential(-1.0 / eps, 0, 0, eps), SF::exponential(-0.5, 0, 1, eps),
                     SF::exponential(eps / (4 * g), 0, 2, eps) +
                         SF::exponential(-0.25, 0, 0, eps)});
        f.push_back({SF::exponential(1.0 / eps, 0, 0, -eps), SF::exponential(-0.5, 0, 1, -eps),
                     SF::exponential(-eps / (4 * g), 0, 2, -eps) +
                         SF::exponential(-0.25, 0, 0, -eps)});
    } else if (p.D < 0.0) {
        f.push_back({SF::oscillating(-1.0 / eps, 0, 0, 0, Osc::Sin, eps),
                     SF::oscillating(-0.5, 0, 1, 0, Osc::Cos, eps),
                     SF::oscillating(-eps / (4 * g), 0, 2, 0, Osc::Sin, eps) +
                         SF::oscillating(-0.25, 0, 0, 0, Osc::Cos, eps)});
        f.push_back({SF::oscillating(1.0 / eps, 0, 0, 0, Osc::Cos, eps),
                     SF::oscillating(-0.5, 0, 1, 0, Osc::Sin, eps),
                     SF::oscillating(eps / (4 * g), 0, 2, 0, Osc::Cos, eps) +
                         SF::oscillating(-0.25, 0, 0, 0, Osc::Sin, eps)});
    } else {
        f.push_back({SF::monomial(-1, 2, 0), SF::monomial(-1, 1, 1),
                     SF::monomial(-0.5, 1, 0) + SF::monomial(1.0 / (2 * g), 0, 2)});
        f.push_back({SF::monomial(-1, 1, 0), SF::monomial(-0.5, 0, 1), SF::zero()});
    }
    f.push_back({SF::constant(-1), SF::zero(), SF::zero()});
    f.push_back({SF::zero(), SF::zero(), SF::constant(-1.0 / g)});
    if (p.C == 0.0) {
        if (p.D > 0.0) {
            f.push_back({SF::zero(), SF::exponential(-1, 0, 0, eps / 2),
                         SF::exponential(eps / (2 * g), 0, 1, eps / 2)});
            f.push_back({SF::zero(), SF::exponential(-1, 0, 0, -eps / 2),
                         SF::exponential(-eps / (2 * g), 0, 1, -eps / 2)});
        } else if (p.D < 0.0) {
            f.push_back({SF::zero(), SF::oscillating(-1, 0, 0, 0, Osc::Cos, eps / 2),
                         SF::oscillating(-eps / (2 * g), 0, 1, 0, Osc::Sin, eps / 2)});
            f.push_back({SF::zero(), SF::oscillating(-1, 0, 0, 0, Osc::Sin, eps / 2),
                         SF::oscillating(eps / (2 * g), 0, 1, 0, Osc::Cos, eps / 2)});
        } else {
            f.push_back({SF::zero(), SF::monomial(-1, 1, 0), SF::monomial(1.0 / g, 0, 1)});
            f.push_back({SF::zero(), SF::constant(-1), SF::zero()});
        }
    }
    return f;
}

std::vector<std::string> make_names(const std::string& stem, int dim) {
    std::vector<std::string> n;
    for (int i = 1; i <= dim; ++i) n.push_back(stem + std::to_string(i));
    return n;
}

TildeField combine(const std::vector<TildeField>& basis, const Eigen::VectorXd& x) {
    TildeField r;
    for (int k = 0; k < x.size(); ++k)
        if (x[k] != 0.0) r = r + x[k] * basis[static_cast<std::size_t>(k)];
    return r;
}

}  // namespace

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::CnonzeroDpos: return "C!=0, D>0";
        case CaseLabel::CnonzeroDzero: return "C!=0, D=0";
        case CaseLabel::CnonzeroDneg: return "C!=0, D<0";
        case CaseLabel::CzeroDpos: return "C=0, D>0";
        case CaseLabel::CzeroDzero: return "C=0, D=0";
        case CaseLabel::CzeroDneg: return "C=0, D<0";
    }
    return "?";
}

nlohmann::json AlgebraCase::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t i = 0; i < fields.size(); ++i)
        gens.push_back({{"name", names[i]},
                        {"operator", fields[i].str()},
                        {"components", fields[i].to_json()}});
    return nlohmann::json{{"case", isovec::to_string(label)},
                          {"C", potential.C},
                          {"D", potential.D},
                          {"gamma", potential.gamma},
                          {"epsilon", epsilon},
                          {"dim", dim()},
                          {"generators", std::move(gens)}};
}

AlgebraCase basis_case(const Potential& p) {
    if (!(p.gamma > 0.0)) throw std::invalid_argument("basis_case: gamma must be positive");
    AlgebraCase c;
    c.label = classify(p);
    c.family = BasisFamily::Primary;
    c.potential = p;
    c.epsilon = p.D == 0.0 ? 0.0 : std::sqrt(8.0 * std::abs(p.D));
    c.fields = primary_fields(p, c.epsilon);
    c.names = make_names(p.D == 0.0 ? "M~" : "P~", c.dim());
    return c;
}

std::vector<double> decompose(const std::vector<TildeField>& basis, const TildeField& w,
                              const std::string& what) {
    const int n = static_cast<int>(basis.size());
    using Key = std::tuple<int, double, double, int, int, int>;  // slot,rate,omega,osc,tp,qp
    std::map<Key, int> rows;
    auto visit = [&rows](const TildeField& f) {
        const ScalarField* slots[3] = {&f.a, &f.b, &f.c};
        for (int s = 0; s < 3; ++s)
            for (const Term& m : slots[s]->terms()) {
                Key k{s, m.exprate, m.omega, static_cast<int>(m.osc), m.tpow, m.qpow};
                rows.emplace(k, static_cast<int>(rows.size()));
            }
    };
    for (const TildeField& f : basis) visit(f);
    visit(w);
    const int nrows = static_cast<int>(rows.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrows, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nrows);
    auto fill = [&rows](const TildeField& f, auto&& sink) {
        const ScalarField* slots[3] = {&f.a, &f.b, &f.c};
        for (int s = 0; s < 3; ++s)
            for (const Term& m : slots[s]->terms()) {
                Key k{s, m.exprate, m.omega, static_cast<int>(m.osc), m.tpow, m.qpow};
                sink(rows.at(k), m.coeff);
            }
    };
    for (int j = 0; j < n; ++j)
        fill(basis[static_cast<std::size_t>(j)], [&](int r, double v) { A(r, j) = v; });
    fill(w, [&](int r, double v) { b(r) = v; });

    Eigen::VectorXd x = nrows == 0 ? Eigen::VectorXd::Zero(n)
                                   : A.colPivHouseholderQr().solve(b).eval();
    TildeField rec = combine(basis, x);
    const TildeField diff = w - rec;
    double scale = std::max(1.0, w.max_abs_coeff());
    for (const TildeField& f : basis) scale = std::max(scale, f.max_abs_coeff());
    if (diff.max_abs_coeff() > 1e-9 * scale)
        throw NotClosedError("decompose: " + (what.empty() ? std::string("element") : what) +
                             " is not in the span of the basis; residual " + diff.str());
    return std::vector<double>(x.data(), x.data() + n);
}

StructureConstants structure_constants(const AlgebraCase& c) {
    const int n = c.dim();
    StructureConstants sc;
    sc.coeffs.assign(static_cast<std::size_t>(n),
                     std::vector<std::vector<double>>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i >= j) continue;
            const TildeField br = bracket(c.fields[static_cast<std::size_t>(i)],
                                          c.fields[static_cast<std::size_t>(j)]);
            sc.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                decompose(c.fields, br,
                          "[" + c.names[static_cast<std::size_t>(i)] + "," +
                              c.names[static_cast<std::size_t>(j)] + "]");
        }
    return sc;
}

StructureConstants reference_table(CaseLabel label, BasisFamily family, double eps,
                                   double gamma) {
    const bool czero = label == CaseLabel::CzeroDpos || label == CaseLabel::CzeroDzero ||
                       label == CaseLabel::CzeroDneg;
    const int n = czero ? 6 : 4;
    int sign = 0;  // sign of D as seen by the chosen family
    if (family != BasisFamily::Isomorphism) {
        if (label == CaseLabel::CnonzeroDpos || label == CaseLabel::CzeroDpos) sign = 1;
        if (label == CaseLabel::CnonzeroDneg || label == CaseLabel::CzeroDneg) sign = -1;
    }
    if (family == BasisFamily::Primary && sign != 0)
        throw std::invalid_argument("reference_table: no reference for the primary D!=0 basis");
    StructureConstants sc;
    sc.coeffs.assign(static_cast<std::size_t>(n),
                     std::vector<std::vector<double>>(static_cast<std::size_t>(n)));
    auto at = [&sc, n](int i, int j) -> std::vector<double>& {
        auto& v = sc.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        v.assign(static_cast<std::size_t>(n), 0.0);
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) at(i, j);
    sc.coeffs[0][1][0] = 1.0;                              // [e1,e2] = e1
    sc.coeffs[0][2][1] = 2.0;                              // [e1,e3] = 2 e2 + g/2 e4
    sc.coeffs[0][2][3] = gamma / 2.0;
    sc.coeffs[1][2][2] = 1.0;                              // [e2,e3] = (+-e^2/2 e1) + e3
    if (sign > 0) sc.coeffs[1][2][0] = eps * eps / 2.0;
    if (sign < 0) sc.coeffs[1][2][0] = -eps * eps / 2.0;
    if (n == 6) {
        sc.coeffs[0][5][4] = 1.0;                          // [e1,e6] = e5
        sc.coeffs[1][4][4] = -0.5;                         // [e2,e5] = -1/2 e5
        sc.coeffs[1][5][5] = 0.5;                          // [e2,e6] = (...) + 1/2 e6
        if (sign > 0) sc.coeffs[1][5][4] = eps / 2.0;
        sc.coeffs[2][4][5] = -1.0;                         // [e3,e5] = (...) - e6
        if (sign > 0) sc.coeffs[2][4][4] = -eps / 2.0;
        if (sign > 0) sc.coeffs[2][5][5] = eps / 2.0;      // [e3,e6]
        if (sign < 0) sc.coeffs[2][5][4] = eps * eps / 4.0;
        sc.coeffs[4][5][3] = -1.0;                         // [e5,e6] = -e4
    }
    return sc;
}

TransformedBases transformed_basis(const AlgebraCase& primary) {
    if (primary.potential.D == 0.0)
        throw std::invalid_argument("transformed_basis: defined only for D != 0");
    if (primary.family != BasisFamily::Primary)
        throw std::invalid_argument("transformed_basis: expects the primary basis");
    const int n = primary.dim();
    const double e = primary.epsilon;
    const double g = primary.potential.gamma;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    if (primary.potential.D > 0.0) {
        T(0, 0) = 1.0 / e;   // R1 = (P1 - P2)/eps - (2/eps^2) P3
        T(1, 0) = -1.0 / e;
        T(2, 0) = -2.0 / (e * e);
        T(0, 1) = 0.5;       // R2 = (P1 + P2)/2 - (gamma/4) P4
        T(1, 1) = 0.5;
        T(3, 1) = -g / 4.0;
        T(2, 2) = 1.0;
        T(3, 3) = 1.0;
        if (n == 6) {
            T(4, 4) = 1.0 / e;   // R5 = (P5 - P6)/eps
            T(5, 4) = -1.0 / e;
            T(5, 5) = 1.0;       // R6 = P6
        }
    } else {
        T(1, 0) = 2.0 / e;   // V1 = (2/eps) P2 + (2/eps^2) P3
        T(2, 0) = 2.0 / (e * e);
        T(0, 1) = 1.0;       // V2 = P1 - (gamma/4) P4
        T(3, 1) = -g / 4.0;
        T(2, 2) = 1.0;
        T(3, 3) = 1.0;
        if (n == 6) {
            T(5, 4) = 2.0 / e;   // V5 = (2/eps) P6
            T(4, 5) = 1.0;       // V6 = P5
        }
    }
    TransformedBases out;
    out.transformed = primary;
    out.transformed.family = BasisFamily::Transformed;
    out.transformed.names = make_names(primary.potential.D > 0.0 ? "R~" : "V~", n);
    out.transformed.fields.clear();
    for (int j = 0; j < n; ++j)
        out.transformed.fields.push_back(combine(primary.fields, T.col(j)));
    out.transformed_from_primary = T;

    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
    if (primary.potential.D > 0.0) {
        S(0, 1) = -e / 2.0;                  // S2 = -(eps/2) R1 + R2
        S(0, 2) = e * e / 2.0;               // S3 = (eps^2/2) R1 - eps R2 + R3 - (eps g/4) R4
        S(1, 2) = -e;
        S(3, 2) = -e * g / 4.0;
    } else {
        S(0, 2) = -e * e / 4.0;              // S3 = -(eps^2/4) V1 + V3
    }
    out.isomorphism = out.transformed;
    out.isomorphism.family = BasisFamily::Isomorphism;
    out.isomorphism.names = make_names("S", n);
    out.isomorphism.fields.clear();
    for (int j = 0; j < n; ++j)
        out.isomorphism.fields.push_back(combine(out.transformed.fields, S.col(j)));
    out.isomorphism_from_transformed = S;
    return out;
}

double LimitDeviation::max() const {
    double m = 0.0;
    for (const auto& g : deviation)
        for (double v : g) m = std::max(m, v);
    return m;
}

std::vector<LimitDeviation> limit_check(const std::vector<double>& D_sequence, double C,
                                        double gamma, const std::vector<double>& t_grid,
                                        const std::vector<double>& q_grid) {
    if (D_sequence.empty()) return {};
    const bool pos = D_sequence.front() > 0.0;
    for (double D : D_sequence)
        if (D == 0.0 || (D > 0.0) != pos)
            throw std::invalid_argument("limit_check: sequence must be one-signed and nonzero");
    const AlgebraCase flat = basis_case(Potential(C, 0.0, gamma));
    std::vector<LimitDeviation> out;
    for (double D : D_sequence) {
        const AlgebraCase prim = basis_case(Potential(C, D, gamma));
        const AlgebraCase rv = transformed_basis(prim).transformed;
        LimitDeviation dev;
        dev.D = D;
        dev.epsilon = rv.epsilon;
        dev.deviation.resize(static_cast<std::size_t>(rv.dim()));
        for (int i = 0; i < rv.dim(); ++i) {
            const TildeField& x = rv.fields[static_cast<std::size_t>(i)];
            const TildeField& m = flat.fields[static_cast<std::size_t>(i)];
            const ScalarField* xs[3] = {&x.a, &x.b, &x.c};
            const ScalarField* ms[3] = {&m.a, &m.b, &m.c};
            for (int s = 0; s < 3; ++s) {
                double d = 0.0;
                for (double t : t_grid)
                    for (double q : q_grid)
                        d = std::max(d, std::abs((*xs[s])(t, q) - (*ms[s])(t, q)));
                dev.deviation[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = d;
            }
        }
        out.push_back(std::move(dev));
    }
    return out;
}

nlohmann::json StructureReport::to_json() const {
    return nlohmann::json{{"case", isovec::to_string(label)},
                          {"dim", dim},
                          {"sl2_ok", sl2_ok},
                          {"heisenberg_ok", heisenberg_ok},
                          {"center_ok", center_ok},
                          {"sl2_action_ok", sl2_action_ok},
                          {"direct_sum_ok", direct_sum_ok},
                          {"summary", summary}};
}

StructureReport structure_identification(const AlgebraCase& primary) {
    std::vector<TildeField> E;
    if (primary.potential.D == 0.0) E = primary.fields;
    else E = transformed_basis(primary).isomorphism.fields;
    const double g = primary.potential.gamma;
    const TildeField e = -0.5 * E[2];
    const TildeField f = 2.0 * E[0];
    const TildeField h = 2.0 * E[1] + (g / 2.0) * E[3];

    StructureReport rep;
    rep.label = primary.label;
    rep.dim = primary.dim();
    auto expect = [](const TildeField& got, const TildeField& want, const std::string& what) {
        if (!(got == want))
            throw StructureMismatchError("structure: " + what + " mismatch; got " + got.str() +
                                         ", want " + want.str());
    };
    expect(bracket(h, e), 2.0 * e, "[h,e] = 2e");
    expect(bracket(h, f), -2.0 * f, "[h,f] = -2f");
    expect(bracket(e, f), h, "[e,f] = h");
    rep.sl2_ok = true;

    for (std::size_t i = 0; i < E.size(); ++i)
        expect(bracket(E[3], E[i]), TildeField{}, "[center, e" + std::to_string(i + 1) + "] = 0");
    rep.center_ok = true;

    if (primary.dim() == 6) {
        expect(bracket(E[4], E[5]), -1.0 * E[3], "[e5,e6] = -e4");
        if (E[3].is_zero()) throw StructureMismatchError("structure: center element vanishes");
        rep.heisenberg_ok = true;
        const std::vector<TildeField> h3{E[3], E[4], E[5]};
        for (const TildeField* s : {&e, &f, &h})
            for (std::size_t v = 0; v < h3.size(); ++v)
                decompose(h3, bracket(*s, h3[v]), "sl2 action on H3");
        rep.sl2_action_ok = true;
        rep.summary = "semidirect product: sl2 acting on Heisenberg H3, center <e4>";
    } else {
        for (const TildeField* s : {&e, &f, &h})
            expect(bracket(*s, E[3]), TildeField{}, "[sl2, e4] = 0");
        rep.direct_sum_ok = true;
        rep.summary = "direct product: sl2 (+) center <e4>";
    }
    return rep;
}

nlohmann::json SubalgebraReport::to_json() const {
    return nlohmann::json{{"j_members", j_members},
                          {"k_members", k_members},
                          {"intersection", intersection},
                          {"j_closed", j_closed},
                          {"k_closed", k_closed},
                          {"j_matches_definition", j_matches_definition}};
}

SubalgebraReport subalgebra_tables(const AlgebraCase& primary) {
    if (primary.family != BasisFamily::Primary)
        throw std::invalid_argument("subalgebra_tables: expects the primary basis");
    SubalgebraReport rep;
    if (primary.potential.D != 0.0) rep.j_members = {3, 4};
    else if (primary.potential.C != 0.0) rep.j_members = {2, 3, 4};
    else rep.j_members = {2, 3, 4, 6};
    rep.k_members = {1, 2, 3, 4};
    std::set_intersection(rep.j_members.begin(), rep.j_members.end(), rep.k_members.begin(),
                          rep.k_members.end(), std::back_inserter(rep.intersection));

    std::vector<int> by_definition;
    for (int i = 0; i < primary.dim(); ++i)
        if (primary.fields[static_cast<std::size_t>(i)].c.is_constant()) by_definition.push_back(i + 1);
    rep.j_matches_definition = by_definition == rep.j_members;

    auto closed = [&primary](const std::vector<int>& members) {
        std::vector<TildeField> sub;
        for (int m : members) sub.push_back(primary.fields[static_cast<std::size_t>(m - 1)]);
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (std::size_t j = i + 1; j < sub.size(); ++j)
                decompose(sub, bracket(sub[i], sub[j]), "subalgebra closure");
        return true;
    };
    rep.j_closed = closed(rep.j_members);
    rep.k_closed = closed(rep.k_members);
    return rep;
}

std::array<ScalarField, 4> determining_check(const ScalarField& T_N, const ScalarField& l,
                                             const ScalarField& sigma, const Potential& p) {
    for (const ScalarField* f : {&T_N, &l, &sigma})
        if (f->depends_on_q())
            throw std::invalid_argument("determining_check: inputs must depend on t only");
    const ScalarField tn1 = T_N.d_dt();
    return {2.0 * p.C * l,
            l.d_dt().d_dt() - 2.0 * p.D * l,
            sigma.d_dt() - (p.gamma / 4.0) * tn1.d_dt(),
            tn1.d_dt().d_dt() - 8.0 * p.D * tn1};
}

}  // namespace isovec
