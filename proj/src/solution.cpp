#include "isovec/solution.hpp"

#include <cmath>
#include <sstream>

namespace isovec {

namespace {

// q^k valid for all q when k is zero or small integer, else via exp(k log q).
template <class T>
T power_q(const T& q, double k) {
    if (k == 0.0) return T(1.0);
    return pow(q, k);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

template <int N>
Jet<N> truncate4(const Jet4& j) {
    Jet<N> r;
    for (int i = 0; i <= N; ++i)
        for (int k = 0; i + k <= N; ++k) r.coeff(i, k) = j.coeff(i, k);
    return r;
}

// Taylor table of d^{di+dj} f / dt^di dq^dj from f's table.
Jet4 partial_shift(const Jet4& j, int di, int dj) {
    Jet4 r;
    for (int i = 0; i + di <= 4; ++i)
        for (int k = 0; i + k + di + dj <= 4; ++k) {
            double f = 1.0;
            for (int a = 1; a <= di; ++a) f *= i + a;
            for (int a = 1; a <= dj; ++a) f *= k + a;
            r.coeff(i, k) = j.coeff(i + di, k + dj) * f;
        }
    return r;
}

// Partial derivative of a body evaluated through arbitrary argument jets:
// take the order-4 table at the arguments' base point and compose.
template <class T>
T body_partial(const SolutionBody& b, int di, int dj, const T& t, const T& q) {
    if constexpr (std::is_same_v<T, double>) {
        const Jet1 j = b.eval1(Jet1::seed_t(t), Jet1::seed_q(q));
        return di == 1 ? j.deriv(1, 0) : j.deriv(0, 1);
    } else {
        const double t0 = t.value(), q0 = q.value();
        const Jet4 table = partial_shift(b.eval4(Jet4::seed_t(t0), Jet4::seed_q(q0)), di, dj);
        return T::compose(truncate4<T::kOrder>(table), t, q);
    }
}

}  // namespace

bool Domain::contains(double t, double q) const {
    if (!(t > t_lo && t < t_hi)) return false;
    if (has_q_lower() && !(q > q_lower(t))) return false;
    if (has_q_upper() && !(q < q_upper(t))) return false;
    return true;
}

void Solution::check_inside(double t, double q) const {
    if (!domain_.contains(t, q)) {
        std::ostringstream os;
        os << "point (t=" << t << ", q=" << q << ") outside the domain of " << provenance_;
        throw DomainError(os.str());
    }
}

double Solution::value(double t, double q) const {
    check_inside(t, q);
    return body_->value(t, q);
}

double Solution::dt(double t, double q) const { return jet2(t, q).deriv(1, 0); }
double Solution::dq(double t, double q) const { return jet2(t, q).deriv(0, 1); }
double Solution::dqq(double t, double q) const { return jet2(t, q).deriv(0, 2); }

double Solution::log_deriv_q(double t, double q) const {
    check_inside(t, q);
    const Jet1 j = body_->eval1(Jet1(t), Jet1::seed_q(q));
    return j.deriv(0, 1) / j.value();
}

Jet2 Solution::jet2(double t, double q) const {
    check_inside(t, q);
    return body_->eval2(Jet2::seed_t(t), Jet2::seed_q(q));
}

Jet4 Solution::jet4(double t, double q) const {
    check_inside(t, q);
    return body_->eval4(Jet4::seed_t(t), Jet4::seed_q(q));
}

Solution solution_one() {
    return Solution::analytic([](const auto& t, const auto& q) { return 0.0 * t + 0.0 * q + 1.0; },
                              Domain::all(), true, "one");
}

SolutionWithPotential affine_eta(double alpha, double lambda, double delta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("affine_eta: alpha must be positive");
    if (delta < 0.0) throw std::invalid_argument("affine_eta: delta must be nonnegative");
    const double gamma = alpha * alpha / 4.0;
    const double C = std::pow(alpha, 4) * (delta - 1.0) * (delta - 3.0) / 128.0;
    const double D = lambda * lambda / 8.0;
    const double k = (delta - 1.0) / 2.0;
    const double a = lambda * delta / 4.0;
    const double v = -lambda / (alpha * alpha);
    auto f = [k, a, v](const auto& t, const auto& q) {
        return power_q(q, k) * exp(a * t + v * q * q);
    };
    const Domain dom = k == 0.0 ? Domain::all() : Domain::positive_q();
    Solution eta = Solution::analytic(
        f, dom, true,
        "affine(alpha=" + fmt(alpha) + ",lambda=" + fmt(lambda) + ",delta=" + fmt(delta) + ")");
    return {std::move(eta), Potential(C, D, gamma)};
}

SolutionWithPotential gaussian_solution(double v0, double gamma) {
    return power_gaussian(0.0, 0.0, gamma, v0);
}

SolutionWithPotential power_gaussian(double k, double D, double gamma, double phase) {
    if (!(gamma > 0.0)) throw std::invalid_argument("power_gaussian: gamma must be positive");
    const double C = gamma * gamma * k * (k - 1.0) / 2.0;
    Domain dom = k == 0.0 ? Domain::all() : Domain::positive_q();
    const std::string name = "power-gaussian(k=" + fmt(k) + ",D=" + fmt(D) +
                             ",gamma=" + fmt(gamma) + ",phase=" + fmt(phase) + ")";
    const double ex = -(2.0 * k + 1.0) / 2.0;
    if (D == 0.0) {
        const double v0 = phase;
        if (v0 != 0.0) {
            const double tstar = -1.0 / (2.0 * gamma * v0);  // 1 + 2 gamma v0 t > 0
            if (v0 > 0.0) dom.t_lo = std::max(dom.t_lo, tstar);
            else dom.t_hi = std::min(dom.t_hi, tstar);
        }
        auto f = [k, v0, gamma, ex](const auto& t, const auto& q) {
            const auto w = 1.0 + (2.0 * gamma * v0) * t;
            return power_q(q, k) * pow(w, ex) * exp((v0 * reciprocal(w)) * q * q);
        };
        return {Solution::analytic(f, dom, true, name), Potential(C, 0.0, gamma)};
    }
    if (D > 0.0) {
        const double eps = std::sqrt(8.0 * D);
        auto f = [k, eps, gamma, phase, ex](const auto& t, const auto& q) {
            const auto th = (eps / 2.0) * t + phase;
            return power_q(q, k) * pow(cosh(th), ex) *
                   exp((eps / (4.0 * gamma)) * tanh(th) * q * q);
        };
        return {Solution::analytic(f, dom, true, name), Potential(C, D, gamma)};
    }
    const double eps = std::sqrt(-8.0 * D);
    // positive while cos(phase - eps t / 2) > 0
    dom.t_lo = std::max(dom.t_lo, 2.0 * (phase - M_PI / 2.0) / eps);
    dom.t_hi = std::min(dom.t_hi, 2.0 * (phase + M_PI / 2.0) / eps);
    auto f = [k, eps, gamma, phase, ex](const auto& t, const auto& q) {
        const auto th = phase - (eps / 2.0) * t;
        const auto cs = cos(th);
        return power_q(q, k) * pow(cs, ex) *
               exp((eps / (4.0 * gamma)) * (sin(th) * reciprocal(cs)) * q * q);
    };
    return {Solution::analytic(f, dom, true, name), Potential(C, D, gamma)};
}

namespace {

class FiniteDifferenceBody final : public SolutionBody {
public:
    explicit FiniteDifferenceBody(std::function<double(double, double)> f) : f_(std::move(f)) {}
    double value(double t, double q) const override { return f_(t, q); }
    Jet1 eval1(const Jet1& t, const Jet1& q) const override { return compose_from_table<1>(t, q); }
    Jet2 eval2(const Jet2& t, const Jet2& q) const override { return compose_from_table<2>(t, q); }
    Jet4 eval4(const Jet4& t, const Jet4& q) const override { return compose_from_table<4>(t, q); }

private:
    // Richardson-extrapolated central differences; table filled to order 2.
    template <int N>
    Jet<N> compose_from_table(const Jet<N>& t, const Jet<N>& q) const {
        const double t0 = t.value(), q0 = q.value();
        const double h = std::max({1.0, std::abs(t0), std::abs(q0)}) * 1e-5;
        auto at = [this, t0, q0](double dt, double dq) { return f_(t0 + dt, q0 + dq); };
        auto d1 = [&at](bool in_t, double h1) {
            auto g = [&](double s) { return in_t ? at(s, 0) : at(0, s); };
            const double c1 = (g(h1) - g(-h1)) / (2 * h1);
            const double c2 = (g(h1 / 2) - g(-h1 / 2)) / h1;
            return (4.0 * c2 - c1) / 3.0;
        };
        auto d2 = [&at](bool in_t, double h1) {
            auto g = [&](double s) { return in_t ? at(s, 0) : at(0, s); };
            const double f0 = g(0);
            const double c1 = (g(h1) - 2 * f0 + g(-h1)) / (h1 * h1);
            const double c2 = (g(h1 / 2) - 2 * f0 + g(-h1 / 2)) / (h1 * h1 / 4);
            return (4.0 * c2 - c1) / 3.0;
        };
        Jet4 table;
        table.coeff(0, 0) = at(0, 0);
        table.coeff(1, 0) = d1(true, h);
        table.coeff(0, 1) = d1(false, h);
        table.coeff(2, 0) = 0.5 * d2(true, h);
        table.coeff(0, 2) = 0.5 * d2(false, h);
        table.coeff(1, 1) = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
        return Jet<N>::compose(truncate4<N>(table), t, q);
    }
    std::function<double(double, double)> f_;
};

class TildeAppliedBody final : public BodyCRTP<TildeAppliedBody> {
public:
    TildeAppliedBody(TildeField X, std::shared_ptr<const SolutionBody> base)
        : x_(std::move(X)), base_(std::move(base)) {}
    template <class T>
    T evalT(const T& t, const T& q) const {
        T acc = x_.c.eval(t, q) * body_eval(*base_, t, q);
        if (!x_.a.is_zero()) acc += x_.a.eval(t, q) * body_partial(*base_, 1, 0, t, q);
        if (!x_.b.is_zero()) acc += x_.b.eval(t, q) * body_partial(*base_, 0, 1, t, q);
        return acc;
    }

private:
    TildeField x_;
    std::shared_ptr<const SolutionBody> base_;
};

class GroupActionBody final : public BodyCRTP<GroupActionBody> {
public:
    GroupActionBody(int i, double mu, double gamma, std::shared_ptr<const SolutionBody> base)
        : i_(i), mu_(mu), gamma_(gamma), base_(std::move(base)) {}

    template <class T>
    T evalT(const T& t, const T& q) const {
        const double mu = mu_, g = gamma_;
        switch (i_) {
            case 1: {
                const T w = 1.0 + mu * t;
                return pow(w, -0.5) * exp((mu / (2.0 * g)) * q * q * reciprocal(w)) *
                       body_eval(*base_, t * reciprocal(w), q * reciprocal(w));
            }
            case 2:
                return body_eval(*base_, std::exp(-mu) * t, std::exp(-mu / 2.0) * q);
            case 3:
                return body_eval(*base_, t - mu, q);
            case 4:
                return std::exp(-mu / g) * body_eval(*base_, t, q);
            case 5:
                return exp((mu / g) * q - (mu * mu / (2.0 * g)) * t) *
                       body_eval(*base_, t, q - mu * t);
            default:
                return body_eval(*base_, t, q - mu);
        }
    }

private:
    int i_;
    double mu_, gamma_;
    std::shared_ptr<const SolutionBody> base_;
};

Domain transform_domain(int i, double mu, const Domain& base) {
    constexpr double inf = Domain::kInf;
    Domain d = base;
    switch (i) {
        case 1: {
            if (mu == 0.0) return base;
            // branch 1 + mu t > 0, and tau = t/(1+mu t) inside the base window
            auto adj = [mu](double s) {
                if (!std::isfinite(s)) return s;
                const double den = 1.0 - mu * s;
                if (den > 0.0) return s / den;
                return mu > 0.0 ? inf : -inf;
            };
            double lo = adj(base.t_lo), hi = adj(base.t_hi);
            if (mu > 0.0) lo = std::max(lo, -1.0 / mu);
            else hi = std::min(hi, -1.0 / mu);
            d.t_lo = lo;
            d.t_hi = hi;
            if (!(d.t_lo < d.t_hi))
                throw DomainError("group_action: transformed domain is empty");
            // q/(1+mu t) > c + s t/(1+mu t)  <=>  q > c + (c mu + s) t
            if (base.has_q_lower()) d.q_lo_s = base.q_lo_c * mu + base.q_lo_s;
            if (base.has_q_upper()) d.q_hi_s = base.q_hi_c * mu + base.q_hi_s;
            return d;
        }
        case 2: {
            const double a = std::exp(mu);
            d.t_lo = std::isfinite(base.t_lo) ? base.t_lo * a : base.t_lo;
            d.t_hi = std::isfinite(base.t_hi) ? base.t_hi * a : base.t_hi;
            if (base.has_q_lower()) {
                d.q_lo_c = base.q_lo_c * std::exp(mu / 2);
                d.q_lo_s = base.q_lo_s * std::exp(-mu / 2);
            }
            if (base.has_q_upper()) {
                d.q_hi_c = base.q_hi_c * std::exp(mu / 2);
                d.q_hi_s = base.q_hi_s * std::exp(-mu / 2);
            }
            return d;
        }
        case 3:
            d.t_lo = std::isfinite(base.t_lo) ? base.t_lo + mu : base.t_lo;
            d.t_hi = std::isfinite(base.t_hi) ? base.t_hi + mu : base.t_hi;
            if (base.has_q_lower()) d.q_lo_c = base.q_lo_c - base.q_lo_s * mu;
            if (base.has_q_upper()) d.q_hi_c = base.q_hi_c - base.q_hi_s * mu;
            return d;
        case 4:
            return d;
        case 5:
            if (base.has_q_lower()) d.q_lo_s = base.q_lo_s + mu;
            if (base.has_q_upper()) d.q_hi_s = base.q_hi_s + mu;
            return d;
        default:
            if (base.has_q_lower()) d.q_lo_c = base.q_lo_c + mu;
            if (base.has_q_upper()) d.q_hi_c = base.q_hi_c + mu;
            return d;
    }
}

}  // namespace

Solution user_solution(std::function<double(double, double)> f, Domain d, bool positive,
                       std::string name) {
    return Solution(std::make_shared<FiniteDifferenceBody>(std::move(f)), d, positive,
                    std::move(name), 2);
}

Solution apply_tilde(const TildeField& X, const Solution& eta) {
    auto body = std::make_shared<TildeAppliedBody>(X, eta.body_ptr());
    return Solution(std::move(body), eta.domain(), false,
                    "applied[" + X.str() + "](" + eta.provenance() + ")",
                    std::max(0, eta.jet_order() - 1));
}

Solution group_action(int generator, double mu, const Solution& eta, double gamma,
                      std::optional<std::pair<double, double>> require_t_window) {
    if (generator < 1 || generator > 6)
        throw std::invalid_argument("group_action: generator index must be in 1..6");
    const Domain dom = transform_domain(generator, mu, eta.domain());
    if (require_t_window) {
        const auto [wl, wh] = *require_t_window;
        if (!(wl > dom.t_lo && wh < dom.t_hi))
            throw DomainError("group_action: requested time window not covered after transform");
    }
    auto body = std::make_shared<GroupActionBody>(generator, mu, gamma, eta.body_ptr());
    std::ostringstream prov;
    prov << "exp(" << mu << "*G" << generator << ")(" << eta.provenance() << ")";
    return Solution(std::move(body), dom, eta.positive(), prov.str(), eta.jet_order());
}

SectionValues::SectionValues(Solution eta, double gamma) : eta_(std::move(eta)), gamma_(gamma) {
    if (!eta_.positive())
        throw std::invalid_argument("SectionValues: eta must be positive on its domain");
}

double SectionValues::S(double t, double q) const { return -gamma_ * std::log(eta_.value(t, q)); }

double SectionValues::thetaB(double t, double q) const {
    return gamma_ * eta_.log_deriv_q(t, q);
}

double SectionValues::thetaE(double t, double q) const {
    const Jet2 j = eta_.jet2(t, q);
    return gamma_ * j.deriv(1, 0) / j.value();
}

double SectionValues::hjb_residual(double t, double q, const Potential& p) const {
    const Jet2 j = eta_.jet2(t, q);
    const double e = j.value();
    const double St = -gamma_ * j.deriv(1, 0) / e;
    const double Sq = -gamma_ * j.deriv(0, 1) / e;
    const double Sqq =
        -gamma_ * (j.deriv(0, 2) / e - j.deriv(0, 1) * j.deriv(0, 1) / (e * e));
    return -St + 0.5 * Sq * Sq - p(t, q) - (gamma_ / 2.0) * Sqq;
}

EvaluationGrid EvaluationGrid::uniform(double t0, double t1, int nt, double q0, double q1,
                                       int nq) {
    EvaluationGrid g;
    for (int i = 0; i < nt; ++i) g.ts.push_back(nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1));
    for (int j = 0; j < nq; ++j) g.qs.push_back(nq == 1 ? q0 : q0 + (q1 - q0) * j / (nq - 1));
    return g;
}

ResidualReport residual(const Solution& eta, const Potential& p, const EvaluationGrid& grid,
                        bool dual) {
    ResidualReport rep;
    const double g = p.gamma;
    const double sgn = dual ? -1.0 : 1.0;
    for (double t : grid.ts)
        for (double q : grid.qs) {
            eta.check_inside(t, q);
            const Jet2 j = eta.jet2(t, q);
            const double term_t = g * j.deriv(1, 0);
            const double term_qq = 0.5 * g * g * j.deriv(0, 2);
            const double term_v = p(t, q) * j.value();
            rep.max_abs = std::max(rep.max_abs, std::abs(sgn * term_t + term_qq - term_v));
            rep.scale =
                std::max({rep.scale, std::abs(term_t), std::abs(term_qq), std::abs(term_v)});
        }
    rep.relative = rep.scale > 0.0 ? rep.max_abs / rep.scale : rep.max_abs;
    return rep;
}

std::function<double(double, double)> contact_hamiltonian(const TildeField& X,
                                                          const Solution& eta, double gamma) {
    // recover N^t = -X.a, N^q = -X.b, N^S = -gamma X.c from the tilde components
    return [X, eta, gamma](double t, double q) {
        const Jet2 j = eta.jet2(t, q);
        const double e = j.value();
        const double thetaE = gamma * j.deriv(1, 0) / e;
        const double thetaB = gamma * j.deriv(0, 1) / e;
        return -(gamma * X.c(t, q) + thetaE * X.a(t, q) + thetaB * X.b(t, q));
    };
}

OmegaFunctional::OmegaFunctional(const TildeField& X, const TildeField& Y, Solution eta,
                                 double gamma)
    : commutator_(bracket(X, Y)), eta_(std::move(eta)), gamma_(gamma) {}

double OmegaFunctional::operator()(double t, double q) const {
    const Jet2 j = eta_.jet2(t, q);
    return gamma_ *
           (commutator_.a(t, q) * j.deriv(1, 0) + commutator_.b(t, q) * j.deriv(0, 1) +
            commutator_.c(t, q) * j.value()) /
           j.value();
}

std::optional<double> OmegaFunctional::constant_value() const {
    if (commutator_.a.is_zero() && commutator_.b.is_zero() && commutator_.c.is_constant())
        return gamma_ * commutator_.c.constant_value();
    return std::nullopt;
}

}  // namespace isovec
