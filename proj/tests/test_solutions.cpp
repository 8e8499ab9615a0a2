#include <doctest.h>

#include <cmath>

#include "isovec/algebra_case.hpp"
#include "isovec/omega_tables.hpp"
#include "isovec/solution.hpp"

using namespace isovec;

namespace {

EvaluationGrid pos_grid() { return EvaluationGrid::uniform(-0.4, 0.9, 7, 0.3, 2.5, 9); }
EvaluationGrid full_grid() { return EvaluationGrid::uniform(-1.0, 1.0, 7, -2.0, 2.0, 9); }

void check_partials_vs_fd(const Solution& s, double t, double q, double tol = 2e-6) {
    const double h = 1e-5;
    const double ft = (s.value(t + h, q) - s.value(t - h, q)) / (2 * h);
    const double fq = (s.value(t, q + h) - s.value(t, q - h)) / (2 * h);
    const double fqq = (s.value(t, q + h) - 2 * s.value(t, q) + s.value(t, q - h)) / (h * h);
    const double scale = 1.0 + std::abs(s.value(t, q));
    CHECK(s.dt(t, q) == doctest::Approx(ft).epsilon(tol).scale(scale));
    CHECK(s.dq(t, q) == doctest::Approx(fq).epsilon(tol).scale(scale));
    CHECK(s.dqq(t, q) == doctest::Approx(fqq).epsilon(1e-4).scale(scale));
}

}  // namespace

TEST_CASE("affine solutions: paired constants and residuals") {
    SUBCASE("delta=1, lambda=0 gives the unit solution data") {
        const auto s = affine_eta(2.0, 0.0, 1.0);
        CHECK(s.potential.C == 0.0);
        CHECK(s.potential.D == 0.0);
        CHECK(s.potential.gamma == doctest::Approx(1.0));
        CHECK(s.eta.value(0.7, -1.3) == doctest::Approx(1.0));
    }
    SUBCASE("delta=3: eta = q exp(3t/2 - q^2/2)") {
        const auto s = affine_eta(2.0, 2.0, 3.0);
        CHECK(s.potential.C == doctest::Approx(0.0));
        CHECK(s.potential.D == doctest::Approx(0.5));
        const double t = 0.4, q = 1.7;
        CHECK(s.eta.value(t, q) ==
              doctest::Approx(q * std::exp(1.5 * t - q * q / 2)).epsilon(1e-14));
    }
    SUBCASE("delta=2: C = -1/8") {
        CHECK(affine_eta(2.0, 2.0, 2.0).potential.C == doctest::Approx(-1.0 / 8.0));
    }
    SUBCASE("five-point design residuals vanish") {
        const double designs[5][3] = {
            {2, 2, 1}, {2, 2, 3}, {1, 0.5, 2}, {3, -1, 4}, {0.7, 1.3, 0}};
        for (const auto& d : designs) {
            const auto s = affine_eta(d[0], d[1], d[2]);
            const auto rep = residual(s.eta, s.potential, pos_grid());
            INFO("alpha=", d[0], " lambda=", d[1], " delta=", d[2]);
            CHECK(rep.relative < 1e-10);
        }
    }
}

TEST_CASE("power-gaussian solutions cover all six potential cases") {
    const double ks[2] = {0.0, 2.5};
    const double Ds[3] = {0.5, 0.0, -0.5};
    for (double k : ks)
        for (double D : Ds) {
            const auto s = power_gaussian(k, D, 1.25, k == 0.0 ? 0.3 : 0.1);
            INFO(s.eta.provenance());
            CHECK((s.potential.C != 0.0) == (k != 0.0 && k != 1.0));
            const auto grid = k == 0.0 ? full_grid() : pos_grid();
            const auto rep = residual(s.eta, s.potential, grid);
            CHECK(rep.relative < 1e-10);
        }
    // analytic partials agree with finite differences
    const auto s = power_gaussian(1.5, -0.3, 0.8, 0.2);
    check_partials_vs_fd(s.eta, 0.25, 1.1);
}

TEST_CASE("unit solution and residual conventions") {
    const Solution one = solution_one();
    const auto rep = residual(one, Potential(0, 0, 1), full_grid());
    CHECK(rep.max_abs == 0.0);
    CHECK(rep.relative == 0.0);
    CHECK_THROWS_AS((void)one.value(0.0, 0.0), std::exception);  // never: domain is everything
}

TEST_CASE("domain checks throw outside") {
    const auto s = affine_eta(2, 2, 3);
    CHECK_THROWS_AS((void)s.eta.value(0.0, -1.0), DomainError);
    EvaluationGrid bad;
    bad.ts = {0.0};
    bad.qs = {-1.0};
    CHECK_THROWS_AS((void)residual(s.eta, s.potential, bad), DomainError);
}

TEST_CASE("apply_tilde produces solutions again") {
    const AlgebraCase flat = basis_case(Potential(0, 0, 1));
    const Solution one = solution_one();
    SUBCASE("M4 rescales") {
        const Solution r = apply_tilde(flat.fields[3], one);
        CHECK(r.value(0.3, 0.4) == doctest::Approx(-1.0));
    }
    SUBCASE("M3 annihilates constants") {
        const Solution r = apply_tilde(flat.fields[2], one);
        CHECK(r.value(0.3, 0.4) == doctest::Approx(0.0));
    }
    SUBCASE("M1 on the unit solution") {
        const double g = 1.0;
        const Solution r = apply_tilde(flat.fields[0], one);
        const double t = 0.3, q = 0.4;
        CHECK(r.value(t, q) == doctest::Approx(-(g * t - q * q) / (2 * g)));
        CHECK(residual(r, Potential(0, 0, g), full_grid()).relative < 1e-10);
    }
    SUBCASE("solution-preservation for every flat basis element on a gaussian") {
        const auto gs = gaussian_solution(0.21, 1.0);
        EvaluationGrid grid = EvaluationGrid::uniform(-0.5, 1.2, 6, -2, 2, 7);
        for (const TildeField& x : flat.fields) {
            const Solution r = apply_tilde(x, gs.eta);
            CHECK(residual(r, gs.potential, grid).relative < 1e-8);
        }
    }
    SUBCASE("solution-preservation in the oscillator case") {
        const auto sp = power_gaussian(1.0, 0.5, 1.0, 0.0);  // C=0, D=1/2
        const AlgebraCase c = basis_case(sp.potential);
        for (const TildeField& x : c.fields) {
            const Solution r = apply_tilde(x, sp.eta);
            CHECK(residual(r, sp.potential, pos_grid()).relative < 1e-8);
        }
    }
}

TEST_CASE("group actions") {
    const double g = 1.0;
    const Solution one = solution_one();
    const auto gauss = gaussian_solution(0.17, g);

    SUBCASE("identity at mu = 0") {
        for (int i = 1; i <= 6; ++i) {
            const Solution r = group_action(i, 0.0, gauss.eta, g);
            CHECK(r.value(0.4, -0.7) == doctest::Approx(gauss.eta.value(0.4, -0.7)));
        }
    }
    SUBCASE("time translation") {
        const Solution r = group_action(3, 0.25, gauss.eta, g);
        CHECK(r.value(0.5, 0.8) == doctest::Approx(gauss.eta.value(0.25, 0.8)));
    }
    SUBCASE("residuals after every action on one and on a gaussian") {
        EvaluationGrid grid = EvaluationGrid::uniform(-0.3, 0.6, 5, -1.5, 1.5, 7);
        for (int i = 1; i <= 6; ++i) {
            for (const Solution* base : {&one, &gauss.eta}) {
                const Solution r = group_action(i, 0.35, *base, g);
                INFO("generator ", i, " on ", base->provenance());
                CHECK(residual(r, Potential(0, 0, g), grid).relative < 1e-10);
            }
        }
    }
    SUBCASE("composition in the parameter") {
        for (int i = 1; i <= 6; ++i) {
            const Solution a = group_action(i, 0.2, group_action(i, 0.15, gauss.eta, g), g);
            const Solution b = group_action(i, 0.35, gauss.eta, g);
            const double t = 0.3, q = 0.9;
            INFO("generator ", i);
            CHECK(a.value(t, q) == doctest::Approx(b.value(t, q)).epsilon(1e-10));
        }
    }
    SUBCASE("derivative at mu = 0 matches the applied field") {
        const AlgebraCase flat = basis_case(Potential(0, 0, g));
        const double h = 1e-5, t = 0.3, q = -0.8;
        for (int i = 1; i <= 6; ++i) {
            const double plus = group_action(i, h, gauss.eta, g).value(t, q);
            const double minus = group_action(i, -h, gauss.eta, g).value(t, q);
            const double num = (plus - minus) / (2 * h);
            const double ana = apply_tilde(flat.fields[i - 1], gauss.eta).value(t, q);
            INFO("generator ", i);
            CHECK(num == doctest::Approx(ana).epsilon(1e-7).scale(1 + std::abs(ana)));
        }
    }
    SUBCASE("domain shrinks for the projective action") {
        // base gaussian valid on 1 + 2 g v0 t > 0; action 1 with mu < 0 caps the future
        const Solution r = group_action(1, -0.5, one, g);
        CHECK(r.domain().t_hi == doctest::Approx(2.0));
        CHECK_THROWS_AS((void)r.value(3.0, 0.0), DomainError);
        CHECK_THROWS_AS(
            (void)group_action(1, -0.5, one, g, std::make_pair(0.0, 5.0)), DomainError);
        // and the result is the usual heat-kernel-shaped solution
        EvaluationGrid grid = EvaluationGrid::uniform(-1.0, 1.5, 6, -2, 2, 7);
        CHECK(residual(r, Potential(0, 0, g), grid).relative < 1e-10);
    }
}

TEST_CASE("section values") {
    SUBCASE("unit solution has vanishing section data") {
        const SectionValues sec(solution_one(), 1.0);
        CHECK(sec.S(0.3, 0.5) == 0.0);
        CHECK(sec.thetaB(0.3, 0.5) == 0.0);
        CHECK(sec.thetaE(0.3, 0.5) == 0.0);
    }
    SUBCASE("affine delta=3 drift fields") {
        const auto s = affine_eta(2, 2, 3);
        const SectionValues sec(s.eta, s.potential.gamma);
        const double t = 0.37, q = 1.21;
        CHECK(sec.thetaB(t, q) == doctest::Approx(1.0 / q - q));
        CHECK(sec.Btilde(t, q) == doctest::Approx(q - 1.0 / q));
        // theta_eta kills the contact form: thetaB = -dS/dq, thetaE = -dS/dt
        const double h = 1e-6;
        const double dSdq = (sec.S(t, q + h) - sec.S(t, q - h)) / (2 * h);
        const double dSdt = (sec.S(t + h, q) - sec.S(t - h, q)) / (2 * h);
        CHECK(sec.thetaB(t, q) == doctest::Approx(-dSdq).epsilon(1e-8));
        CHECK(sec.thetaE(t, q) == doctest::Approx(-dSdt).epsilon(1e-8));
    }
    SUBCASE("the log transform solves the HJB form") {
        const auto s = affine_eta(2, 2, 3);
        const SectionValues sec(s.eta, s.potential.gamma);
        for (double t : {0.1, 0.5, 0.9})
            for (double q : {0.4, 1.0, 2.2})
                CHECK(std::abs(sec.hjb_residual(t, q, s.potential)) < 1e-8);
    }
    SUBCASE("rejects sign-indefinite solutions") {
        const AlgebraCase flat = basis_case(Potential(0, 0, 1));
        const Solution r = apply_tilde(flat.fields[0], solution_one());
        CHECK_THROWS_AS(SectionValues(r, 1.0), std::invalid_argument);
    }
}

TEST_CASE("contact hamiltonian identity") {
    const AlgebraCase flat = basis_case(Potential(0, 0, 1));
    const double g = 1.0;
    std::vector<SolutionWithPotential> lib;
    lib.push_back({solution_one(), Potential(0, 0, g)});
    lib.push_back(gaussian_solution(0.3, g));
    lib.push_back(affine_eta(2, 0, 3));  // eta = q on q > 0, still V = 0
    for (const auto& s : lib) {
        for (const TildeField& x : flat.fields) {
            const auto theta_f = contact_hamiltonian(x, s.eta, g);
            const Solution applied = apply_tilde(x, s.eta);
            for (double t : {-0.2, 0.4})
                for (double q : {0.5, 1.4}) {
                    const double lhs = applied.value(t, q);
                    const double rhs = -(1.0 / g) * s.eta.value(t, q) * theta_f(t, q);
                    const double scale = std::max(1.0, std::abs(lhs));
                    INFO(s.eta.provenance(), " field ", x.str());
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(scale));
                }
        }
    }
}

TEST_CASE("omega functional") {
    const AlgebraCase flat = basis_case(Potential(0, 0, 1));
    const Solution one = solution_one();
    SUBCASE("constant pair") {
        const OmegaFunctional w(flat.fields[4], flat.fields[5], one, 1.0);
        REQUIRE(w.constant_value().has_value());
        CHECK(*w.constant_value() == doctest::Approx(1.0));
        CHECK(w(0.3, 0.7) == doctest::Approx(1.0));
    }
    SUBCASE("zero pair") {
        const OmegaFunctional w(flat.fields[0], flat.fields[3], one, 1.0);
        CHECK(w.is_zero());
    }
    SUBCASE("classical martingale shape") {
        const OmegaFunctional w(flat.fields[0], flat.fields[1], one, 1.0);
        const double t = 0.6, q = 1.1;
        CHECK(w(t, q) == doctest::Approx((q * q - t) / 2.0));
    }
}

TEST_CASE("omega closed-form tables for all six cases") {
    const double gamma = 1.0;
    struct Pick {
        Potential p;
        SolutionWithPotential s;
    };
    std::vector<SolutionWithPotential> picks;
    picks.push_back(power_gaussian(0.0, 0.5, gamma, 0.2));    // C=0, D>0
    picks.push_back(gaussian_solution(0.3, gamma));           // C=0, D=0
    picks.push_back(power_gaussian(0.0, -0.5, gamma, 0.1));   // C=0, D<0
    picks.push_back(power_gaussian(2.0, 0.5, gamma, 0.2));    // C!=0, D>0
    picks.push_back(power_gaussian(2.0, 0.0, gamma, 0.1));    // C!=0, D=0
    picks.push_back(power_gaussian(2.0, -0.5, gamma, 0.1));   // C!=0, D<0
    picks.push_back({solution_one(), Potential(0, 0, gamma)});
    for (const auto& s : picks) {
        const AlgebraCase prim = basis_case(s.potential);
        const AlgebraCase table =
            s.potential.D == 0.0 ? prim : transformed_basis(prim).transformed;
        const bool positive_only = s.eta.domain().has_q_lower();
        const EvaluationGrid grid = positive_only
                                        ? EvaluationGrid::uniform(-0.4, 0.8, 5, 0.3, 2.0, 7)
                                        : EvaluationGrid::uniform(-0.4, 0.8, 5, -2.0, 2.0, 7);
        const auto checks = omega_table_check(table, s.eta, grid);
        for (const auto& chk : checks) {
            INFO(to_string(table.label), " ", s.eta.provenance(), " pair (", chk.i + 1, ",",
                 chk.j + 1, ")");
            CHECK(chk.rel() < 1e-10);
        }
        CHECK(!omega_table_corrections(table.label).empty());
    }
}

TEST_CASE("user-supplied solutions fall back to finite differences") {
    const Solution s = user_solution(
        [](double t, double q) { return std::exp(0.3 * t) * std::cos(0.5 * q); },
        Domain::all(), false, "smooth sample");
    const double t = 0.4, q = 0.9;
    CHECK(s.dt(t, q) == doctest::Approx(0.3 * s.value(t, q)).epsilon(1e-8));
    CHECK(s.dq(t, q) ==
          doctest::Approx(-0.5 * std::exp(0.3 * t) * std::sin(0.5 * q)).epsilon(1e-8));
    // second differences at the pinned step carry ~1e-5 relative roundoff
    CHECK(s.dqq(t, q) == doctest::Approx(-0.25 * s.value(t, q)).epsilon(1e-4));
    CHECK(s.jet_order() == 2);
}
