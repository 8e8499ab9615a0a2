#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isovec/errors.hpp"
#include "isovec/jets.hpp"
#include "isovec/tilde_field.hpp"

namespace isovec {

/// Validity region of a solution: an open time interval crossed with a q-band
/// whose bounds may be affine in t (group actions map such bands to such
/// bands). Infinite bounds mean "no constraint".
struct Domain {
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    double t_lo = -kInf, t_hi = kInf;
    double q_lo_c = -kInf, q_lo_s = 0.0;  // q > q_lo_c + q_lo_s * t
    double q_hi_c = kInf, q_hi_s = 0.0;   // q < q_hi_c + q_hi_s * t

    static Domain all() { return {}; }
    static Domain positive_q() {
        Domain d;
        d.q_lo_c = 0.0;
        return d;
    }
    bool contains(double t, double q) const;
    bool has_q_lower() const { return q_lo_c != -kInf; }
    bool has_q_upper() const { return q_hi_c != kInf; }
    double q_lower(double t) const { return q_lo_c + q_lo_s * t; }
    double q_upper(double t) const { return q_hi_c + q_hi_s * t; }
};

/// Polymorphic evaluator core: one closed-form expression instantiated at
/// plain doubles and at truncated Taylor scalars, so every solution carries
/// analytically composed partial derivatives.
class SolutionBody {
public:
    virtual ~SolutionBody() = default;
    virtual double value(double t, double q) const = 0;
    virtual Jet1 eval1(const Jet1& t, const Jet1& q) const = 0;
    virtual Jet2 eval2(const Jet2& t, const Jet2& q) const = 0;
    virtual Jet4 eval4(const Jet4& t, const Jet4& q) const = 0;
};

template <class T>
T body_eval(const SolutionBody& b, const T& t, const T& q) {
    if constexpr (std::is_same_v<T, double>) return b.value(t, q);
    else if constexpr (std::is_same_v<T, Jet1>) return b.eval1(t, q);
    else if constexpr (std::is_same_v<T, Jet2>) return b.eval2(t, q);
    else return b.eval4(t, q);
}

template <class Derived>
class BodyCRTP : public SolutionBody {
public:
    double value(double t, double q) const final {
        return static_cast<const Derived*>(this)->template evalT<double>(t, q);
    }
    Jet1 eval1(const Jet1& t, const Jet1& q) const final {
        return static_cast<const Derived*>(this)->template evalT<Jet1>(t, q);
    }
    Jet2 eval2(const Jet2& t, const Jet2& q) const final {
        return static_cast<const Derived*>(this)->template evalT<Jet2>(t, q);
    }
    Jet4 eval4(const Jet4& t, const Jet4& q) const final {
        return static_cast<const Derived*>(this)->template evalT<Jet4>(t, q);
    }
};

template <class F>
class AnalyticBody final : public BodyCRTP<AnalyticBody<F>> {
public:
    explicit AnalyticBody(F f) : f_(std::move(f)) {}
    template <class T>
    T evalT(const T& t, const T& q) const {
        return f_(t, q);
    }

private:
    F f_;
};

/// Closed-form solution eta(t, q) with exact partials, a validity domain and
/// a provenance chain describing how it was built.
class Solution {
public:
    Solution() = default;
    Solution(std::shared_ptr<const SolutionBody> body, Domain domain, bool positive,
             std::string provenance, int jet_order = 4)
        : body_(std::move(body)), domain_(domain), positive_(positive),
          provenance_(std::move(provenance)), jet_order_(jet_order) {}

    template <class F>
    static Solution analytic(F f, Domain d, bool positive, std::string provenance) {
        return Solution(std::make_shared<AnalyticBody<F>>(std::move(f)), d, positive,
                        std::move(provenance));
    }

    double value(double t, double q) const;
    double dt(double t, double q) const;
    double dq(double t, double q) const;
    double dqq(double t, double q) const;
    /// d/dq log eta, the Bernstein drift divided by gamma; cheap path for
    /// simulation inner loops.
    double log_deriv_q(double t, double q) const;
    Jet2 jet2(double t, double q) const;
    Jet4 jet4(double t, double q) const;

    const Domain& domain() const { return domain_; }
    bool positive() const { return positive_; }
    const std::string& provenance() const { return provenance_; }
    int jet_order() const { return jet_order_; }
    const SolutionBody& body() const { return *body_; }
    std::shared_ptr<const SolutionBody> body_ptr() const { return body_; }

    void check_inside(double t, double q) const;

private:
    std::shared_ptr<const SolutionBody> body_;
    Domain domain_;
    bool positive_ = false;
    std::string provenance_;
    int jet_order_ = 4;
};

struct SolutionWithPotential {
    Solution eta;
    Potential potential;
};

/// eta == 1, a positive solution for V = 0 on the whole plane.
Solution solution_one();

/// eta = exp(lambda delta t / 4 - lambda q^2 / alpha^2) q^{(delta-1)/2} with
/// the paired potential gamma = alpha^2/4, C = alpha^4 (delta-1)(delta-3)/128,
/// D = lambda^2/8. Domain is q > 0 except at delta = 1 where eta is entire.
SolutionWithPotential affine_eta(double alpha, double lambda, double delta);

/// Free-heat Gaussian eta = (1+2 gamma v0 t)^{-1/2} exp(v0 q^2/(1+2 gamma v0 t)),
/// positive while 1 + 2 gamma v0 t > 0; potential (0, 0, gamma).
SolutionWithPotential gaussian_solution(double v0, double gamma);

/// eta = q^k exp(u(t) + v(t) q^2) where v solves the Riccati equation
/// v' = -2 gamma v^2 + D/gamma and u' = -(2k+1) gamma v. Pairs with the
/// potential C = gamma^2 k(k-1)/2, D arbitrary; covers every (C, D) sign case.
/// `phase` selects the branch member (v0 at D == 0, the tanh/tan phase else).
SolutionWithPotential power_gaussian(double k, double D, double gamma, double phase = 0.0);

/// Wraps a user-supplied evaluator; partials fall back to Richardson-extrapolated
/// central differences with step h = max(1,|t|,|q|) * 1e-5 (jets exact to order 2).
Solution user_solution(std::function<double(double, double)> f, Domain d, bool positive,
                       std::string name = "user-supplied");

/// X.a eta_t + X.b eta_q + X.c eta. A solution again, but possibly
/// sign-indefinite; jets exact to one order less than eta's.
Solution apply_tilde(const TildeField& X, const Solution& eta);

/// One-parameter symmetry group actions of the flat case (C=0, D=0), as
/// tabulated: i in 1..6, parameter mu. Throws DomainError when the i=1 action
/// leaves no admissible time window (or the requested window is not covered).
Solution group_action(int generator, double mu, const Solution& eta, double gamma,
                      std::optional<std::pair<double, double>> require_t_window = std::nullopt);

/// Section values along the solution graph: S = -gamma ln eta,
/// thetaB = gamma eta_q/eta, thetaE = gamma eta_t/eta, Btilde = -thetaB,
/// Etilde = -thetaE.
class SectionValues {
public:
    SectionValues(Solution eta, double gamma);
    double S(double t, double q) const;
    double thetaB(double t, double q) const;
    double thetaE(double t, double q) const;
    double Btilde(double t, double q) const { return -thetaB(t, q); }
    double Etilde(double t, double q) const { return -thetaE(t, q); }
    /// Residual of the Hamilton-Jacobi-Bellman form:
    /// -S_t + (1/2) S_q^2 - V - (gamma/2) S_qq.
    double hjb_residual(double t, double q, const Potential& p) const;
    const Solution& eta() const { return eta_; }
    double gamma() const { return gamma_; }

private:
    Solution eta_;
    double gamma_;
};

struct EvaluationGrid {
    std::vector<double> ts;
    std::vector<double> qs;
    static EvaluationGrid uniform(double t0, double t1, int nt, double q0, double q1, int nq);
};

struct ResidualReport {
    double max_abs = 0.0;
    double scale = 0.0;  // max of |gamma eta_t|, |V eta|, |gamma^2/2 eta_qq| on the grid
    double relative = 0.0;
};

/// Max |gamma eta_t + (gamma^2/2) eta_qq - V eta| over the grid (dual = false),
/// or the adjoint-equation residual |-gamma eta_t + (gamma^2/2) eta_qq - V eta|
/// (dual = true), normalized by the largest term magnitude.
ResidualReport residual(const Solution& eta, const Potential& p, const EvaluationGrid& grid,
                        bool dual = false);

/// theta_eta(F_N) = N^S + thetaE N^t + thetaB N^q recovered from the tilde
/// components; satisfies  X(eta) = -(1/gamma) eta * theta_eta(F_X).
std::function<double(double, double)> contact_hamiltonian(const TildeField& X,
                                                          const Solution& eta, double gamma);

/// The section-evaluated symplectic pairing: gamma [X,Y](eta) / eta.
class OmegaFunctional {
public:
    OmegaFunctional(const TildeField& X, const TildeField& Y, Solution eta, double gamma);
    double operator()(double t, double q) const;
    bool is_zero() const { return commutator_.is_zero(); }
    /// Set when the commutator is a pure constant multiplier.
    std::optional<double> constant_value() const;
    const TildeField& commutator() const { return commutator_; }

private:
    TildeField commutator_;
    Solution eta_;
    double gamma_;
};

}  // namespace isovec
