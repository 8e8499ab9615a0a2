#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace isovec {

/// Truncated bivariate Taylor expansion around a base point, used to carry
/// exact mixed partial derivatives in (t, q) through arbitrary closed-form
/// evaluators. Coefficients are stored Taylor-normalized: the monomial
/// dt^i dq^j has coefficient  d^{i+j}f / (dt^i dq^j) / (i! j!).
///
/// Order is the maximum total degree kept. All arithmetic and the usual
/// elementary functions are overloaded, so a generic evaluator written once
/// against a scalar type yields values (Order=0 path via double) and exact
/// derivatives of any order up to Order.
template <int Order>
class Jet {
public:
    static constexpr int kOrder = Order;
    static constexpr int kSize = (Order + 1) * (Order + 2) / 2;

    Jet() = default;
    Jet(double v) { c_[0] = v; }  // implicit: constants promote

    static constexpr int index(int i, int j) {
        const int d = i + j;
        return d * (d + 1) / 2 + j;
    }

    static Jet seed_t(double t0) {
        Jet r(t0);
        if constexpr (Order >= 1) r.c_[index(1, 0)] = 1.0;
        return r;
    }
    static Jet seed_q(double q0) {
        Jet r(q0);
        if constexpr (Order >= 1) r.c_[index(0, 1)] = 1.0;
        return r;
    }

    double value() const { return c_[0]; }
    double coeff(int i, int j) const { return c_[index(i, j)]; }
    double& coeff(int i, int j) { return c_[index(i, j)]; }

    /// Mixed partial d^{i+j} f / dt^i dq^j at the base point.
    double deriv(int i, int j) const {
        return c_[index(i, j)] * factorial(i) * factorial(j);
    }

    Jet operator-() const {
        Jet r;
        for (int k = 0; k < kSize; ++k) r.c_[k] = -c_[k];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int da = 0; da <= Order; ++da)
            for (int ia = 0; ia <= da; ++ia) {
                const double ca = a.c_[index(da - ia, ia)];
                if (ca == 0.0) continue;
                for (int db = 0; db + da <= Order; ++db)
                    for (int ib = 0; ib <= db; ++ib) {
                        const double cb = b.c_[index(db - ib, ib)];
                        if (cb == 0.0) continue;
                        r.c_[index(da - ia + db - ib, ia + ib)] += ca * cb;
                    }
            }
        return r;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend Jet operator*(double s, Jet a) {
        for (int k = 0; k < kSize; ++k) a.c_[k] *= s;
        return a;
    }
    friend Jet operator*(Jet a, double s) { return s * a; }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(Jet a, double s) {
        for (int k = 0; k < kSize; ++k) a.c_[k] /= s;
        return a;
    }
    friend Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }

    /// f(u0 + û) = sum_k a[k] û^k with û the zero-constant part; Horner form.
    static Jet apply_series(const Jet& u, const std::array<double, Order + 1>& a) {
        Jet uhat = u;
        uhat.c_[0] = 0.0;
        Jet r(a[Order]);
        for (int k = Order - 1; k >= 0; --k) {
            r = r * uhat;
            r.c_[0] += a[k];
        }
        return r;
    }

    friend Jet exp(const Jet& u) {
        std::array<double, Order + 1> a{};
        const double e = std::exp(u.c_[0]);
        double f = 1.0;
        for (int k = 0; k <= Order; ++k) {
            if (k > 0) f *= k;
            a[k] = e / f;
        }
        return apply_series(u, a);
    }
    friend Jet log(const Jet& u) {
        const double u0 = u.c_[0];
        if (u0 <= 0.0) throw std::domain_error("Jet log: nonpositive base value");
        std::array<double, Order + 1> a{};
        a[0] = std::log(u0);
        double p = 1.0;
        for (int k = 1; k <= Order; ++k) {
            p *= u0;
            a[k] = ((k % 2) ? 1.0 : -1.0) / (k * p);
        }
        return apply_series(u, a);
    }
    friend Jet reciprocal(const Jet& u) {
        const double u0 = u.c_[0];
        if (u0 == 0.0) throw std::domain_error("Jet reciprocal: zero base value");
        std::array<double, Order + 1> a{};
        double p = 1.0 / u0;
        for (int k = 0; k <= Order; ++k) {
            a[k] = ((k % 2) ? -1.0 : 1.0) * p;
            p /= u0;
        }
        return apply_series(u, a);
    }
    /// Real power. Integer exponents are computed by repeated multiplication
    /// (valid for any sign of the base); otherwise the base must be positive.
    friend Jet pow(const Jet& u, double p) {
        const double ri = std::nearbyint(p);
        if (p == ri && std::abs(p) <= 64) {
            int n = static_cast<int>(ri);
            if (n == 0) return Jet(1.0);
            Jet b = n > 0 ? u : reciprocal(u);
            n = n > 0 ? n : -n;
            Jet r(1.0);
            while (n > 0) {
                if (n & 1) r = r * b;
                b = b * b;
                n >>= 1;
            }
            return r;
        }
        const double u0 = u.c_[0];
        if (u0 <= 0.0) throw std::domain_error("Jet pow: nonpositive base for real exponent");
        std::array<double, Order + 1> a{};
        double binom = 1.0;
        for (int k = 0; k <= Order; ++k) {
            a[k] = binom * std::pow(u0, p - k);
            binom *= (p - k) / (k + 1);
        }
        return apply_series(u, a);
    }
    friend Jet sqrt(const Jet& u) { return pow(u, 0.5); }
    friend Jet sin(const Jet& u) {
        const double s = std::sin(u.c_[0]), c = std::cos(u.c_[0]);
        const double cycle[4] = {s, c, -s, -c};  // d^k sin
        std::array<double, Order + 1> a{};
        double f = 1.0;
        for (int k = 0; k <= Order; ++k) {
            if (k > 0) f *= k;
            a[k] = cycle[k % 4] / f;
        }
        return apply_series(u, a);
    }
    friend Jet cos(const Jet& u) {
        const double s = std::sin(u.c_[0]), c = std::cos(u.c_[0]);
        const double cycle[4] = {c, -s, -c, s};  // d^k cos
        std::array<double, Order + 1> a{};
        double f = 1.0;
        for (int k = 0; k <= Order; ++k) {
            if (k > 0) f *= k;
            a[k] = cycle[k % 4] / f;
        }
        return apply_series(u, a);
    }
    friend Jet sinh(const Jet& u) { return 0.5 * (exp(u) - exp(-u)); }
    friend Jet cosh(const Jet& u) { return 0.5 * (exp(u) + exp(-u)); }
    friend Jet tanh(const Jet& u) { return sinh(u) / cosh(u); }

    /// Evaluates this expansion at increments given by (t - t0(), q - q0()) of
    /// the argument jets; the arguments' constant parts are ignored. Used to
    /// chain a derivative table through a change of variables.
    static Jet compose(const Jet& table, const Jet& targ, const Jet& qarg) {
        Jet x = targ, y = qarg;
        x.c_[0] = 0.0;
        y.c_[0] = 0.0;
        Jet r(0.0);
        for (int i = Order; i >= 0; --i) {
            Jet row(0.0);
            for (int j = Order - i; j >= 0; --j) {
                row = row * y;
                row.c_[0] += table.c_[index(i, j)];
            }
            r = r * x + row;
        }
        return r;
    }

private:
    static double factorial(int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    }
    std::array<double, kSize> c_{};
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;
using Jet4 = Jet<4>;

// double passthroughs so generic evaluators also instantiate at plain double
inline double reciprocal(double x) { return 1.0 / x; }

}  // namespace isovec
