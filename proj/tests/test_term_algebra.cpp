
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "isovec/term_algebra.hpp"

using isovec::ScalarField;
using isovec::Term;
using Osc = isovec::Term::Osc;

namespace {

ScalarField t_field() { return ScalarField::monomial(1, 1, 0); }
ScalarField q_field() { return ScalarField::monomial(1, 0, 1); }

// Random field over a fixed set of representable keys.
ScalarField random_field(std::mt19937_64& rng, int nterms) {
    std::uniform_int_distribution<int> pw(0, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> ratepick(-1, 1);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<Term> terms;
    for (int i = 0; i < nterms; ++i) {
        Term m;
        m.coeff = coeff(rng);
        m.tpow = pw(rng);
        m.qpow = pw(rng);
        m.exprate = 0.5 * ratepick(rng);
        const int k = kind(rng);
        if (k > 0) {
            m.osc = k == 1 ? Osc::Cos : Osc::Sin;
            m.omega = 0.75 * (1 + pw(rng));
        }
        terms.push_back(m);
    }
    return ScalarField(terms);
}

}  // namespace

TEST_CASE("cancellation and like-term merging") {
    const ScalarField q = q_field();
    CHECK((q + (-q)).is_zero());
    CHECK((q - q).terms().empty());

    const ScalarField te = ScalarField::exponential(1, 1, 0, 1.0);  // t e^t
    const ScalarField s = te + te;
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].coeff == doctest::Approx(2.0));

    const ScalarField c2 = ScalarField::oscillating(1, 0, 0, 0, Osc::Cos, 2.0);
    const ScalarField s2 = ScalarField::oscillating(1, 0, 0, 0, Osc::Sin, 2.0);
    const ScalarField both = c2 + s2;
    REQUIRE(both.terms().size() == 2);
    // canonical order puts cos before sin at equal (rate, omega)
    CHECK(both.terms()[0].osc == Osc::Cos);
    CHECK(both.terms()[1].osc == Osc::Sin);
}

TEST_CASE("products: exponent cancellation and product-to-sum") {
    const ScalarField a = ScalarField::exponential(1, 0, 1, 1.0);   // q e^t
    const ScalarField b = ScalarField::exponential(1, 0, 1, -1.0);  // q e^-t
    const ScalarField p = a * b;
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].qpow == 2);
    CHECK(p.terms()[0].exprate == 0.0);

    const ScalarField c2 = ScalarField::oscillating(1, 0, 0, 0, Osc::Cos, 2.0);
    const ScalarField sq = c2 * c2;  // 1/2 + 1/2 cos 4t
    REQUIRE(sq.terms().size() == 2);
    CHECK(sq.terms()[0].osc == Osc::None);
    CHECK(sq.terms()[0].coeff == doctest::Approx(0.5));
    CHECK(sq.terms()[1].osc == Osc::Cos);
    CHECK(sq.terms()[1].omega == doctest::Approx(4.0));
    CHECK(sq.terms()[1].coeff == doctest::Approx(0.5));

    const ScalarField tq = t_field() * q_field();
    REQUIRE(tq.terms().size() == 1);
    CHECK(tq.terms()[0].tpow == 1);
    CHECK(tq.terms()[0].qpow == 1);
}

TEST_CASE("derivatives") {
    // d/dt (t sin t) = sin t + t cos t
    const ScalarField f = ScalarField::oscillating(1, 1, 0, 0, Osc::Sin, 1.0);
    const ScalarField df = f.d_dt();
    const ScalarField want = ScalarField::oscillating(1, 0, 0, 0, Osc::Sin, 1.0) +
                             ScalarField::oscillating(1, 1, 0, 0, Osc::Cos, 1.0);
    CHECK(df == want);

    const ScalarField g = ScalarField::exponential(1, 0, 2, 0.5);  // q^2 e^{t/2}
    CHECK(g.d_dq() == ScalarField::exponential(2, 0, 1, 0.5));

    CHECK(ScalarField::constant(3.0).d_dt().is_zero());
    CHECK(ScalarField::monomial(2, 3, 0).d_dq().is_zero());
}

TEST_CASE("eval closed forms") {
    const double gamma = 0.7;
    const ScalarField f = ScalarField::monomial(1, 0, 2) - gamma * t_field();  // q^2 - gamma t
    CHECK(f(0.0, 2.0) == doctest::Approx(4.0));
    CHECK(ScalarField::zero()(3.1, -2.2) == 0.0);

    const double eps = 1.7;
    const ScalarField e = ScalarField::exponential(1, 0, 0, eps);
    CHECK(e(std::log(2.0) / eps, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("normal-form uniqueness under shuffling and splitting") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 50; ++it) {
        const ScalarField f = random_field(rng, 6);
        std::vector<Term> split;
        for (const Term& m : f.terms()) {
            Term m1 = m, m2 = m;
            m1.coeff = 0.3 * m.coeff;
            m2.coeff = 0.7 * m.coeff;
            split.push_back(m1);
            split.push_back(m2);
        }
        std::shuffle(split.begin(), split.end(), rng);
        const ScalarField g(split);
        REQUIRE(g.terms().size() == f.terms().size());
        for (std::size_t k = 0; k < f.terms().size(); ++k) {
            CHECK(key_equal(f.terms()[k], g.terms()[k]));
            CHECK(g.terms()[k].coeff == doctest::Approx(f.terms()[k].coeff).epsilon(1e-13));
        }
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    for (int it = 0; it < 25; ++it) {
        const ScalarField f = random_field(rng, 4);
        const ScalarField g = random_field(rng, 4);
        const ScalarField s = f + g;
        const ScalarField p = f * g;
        for (int k = 0; k < 5; ++k) {
            const double t = pt(rng), q = pt(rng);
            const double scale = std::max({1.0, std::abs(f(t, q)), std::abs(g(t, q))});
            CHECK(s(t, q) == doctest::Approx(f(t, q) + g(t, q)).epsilon(1e-12).scale(scale));
            CHECK(p(t, q) ==
                  doctest::Approx(f(t, q) * g(t, q)).epsilon(1e-12).scale(scale * scale));
        }
    }
}

TEST_CASE("derivatives agree with central differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    const double h = 1e-5;
    for (int it = 0; it < 20; ++it) {
        const ScalarField f = random_field(rng, 5);
        const ScalarField ft = f.d_dt();
        const ScalarField fq = f.d_dq();
        const double t = pt(rng), q = pt(rng);
        const double num_t = (f(t + h, q) - f(t - h, q)) / (2 * h);
        const double num_q = (f(t, q + h) - f(t, q - h)) / (2 * h);
        CHECK(ft(t, q) == doctest::Approx(num_t).epsilon(1e-7).scale(1 + std::abs(num_t)));
        CHECK(fq(t, q) == doctest::Approx(num_q).epsilon(1e-7).scale(1 + std::abs(num_q)));
    }
}

TEST_CASE("json round trip preserves normal form") {
    std::mt19937_64 rng(3);
    const ScalarField f = random_field(rng, 6);
    const ScalarField back = ScalarField::from_json(f.to_json());
    CHECK(back == f);
    CHECK(back.terms().size() == f.terms().size());
}
