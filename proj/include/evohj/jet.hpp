#pragma once

#include <array>
#include <cmath>

#include "evohj/errors.hpp"

namespace evohj {

/// Degree-4 truncated Taylor series in one variable.
///
/// A Jet stores the coefficients c[0..4] of
///   f(z0 + t) = c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4 + O(t^5),
/// so c[k] = f^(k)(z0) / k!.  Arithmetic on jets propagates exact
/// derivatives through composed expressions; this is how the closed-form
/// fitness and its z-derivatives up to order 4 are evaluated without
/// finite differencing.
class Jet {
public:
    static constexpr int order = 4;

    Jet() = default;

    /// A constant (all derivatives zero).
    static Jet constant(double v) {
        Jet j;
        j.c_[0] = v;
        return j;
    }

    /// The identity function evaluated at v: value v, first derivative 1.
    static Jet variable(double v) {
        Jet j;
        j.c_[0] = v;
        j.c_[1] = 1.0;
        return j;
    }

    double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }

    double value() const { return c_[0]; }

    /// k-th derivative (k! * coeff).
    double deriv(int k) const {
        static constexpr double fact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};
        return c_[static_cast<std::size_t>(k)] * fact[k];
    }

    /// Jet of the derivative f' (degree drops by one; top coefficient 0).
    Jet derivative_series() const {
        Jet j;
        for (int k = 0; k < order; ++k)
            j.c_[static_cast<std::size_t>(k)] =
                (k + 1) * c_[static_cast<std::size_t>(k + 1)];
        return j;
    }

    Jet operator-() const {
        Jet j;
        for (std::size_t k = 0; k <= order; ++k) j.c_[k] = -c_[k];
        return j;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k <= order; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k <= order; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (std::size_t k = 0; k <= order; ++k) c_[k] *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator+(double s, Jet a) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator-(Jet a, double s) {
        a.c_[0] -= s;
        return a;
    }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet j;
        for (int i = 0; i <= order; ++i)
            for (int k = 0; i + k <= order; ++k)
                j.c_[static_cast<std::size_t>(i + k)] +=
                    a.c_[static_cast<std::size_t>(i)] *
                    b.c_[static_cast<std::size_t>(k)];
        return j;
    }

    /// Series division; the denominator's value must be nonzero.
    friend Jet operator/(const Jet& n, const Jet& d) {
        if (d.c_[0] == 0.0) throw DomainError("jet division by zero value");
        Jet q;
        for (int k = 0; k <= order; ++k) {
            double acc = n.c_[static_cast<std::size_t>(k)];
            for (int i = 0; i < k; ++i)
                acc -= q.c_[static_cast<std::size_t>(i)] *
                       d.c_[static_cast<std::size_t>(k - i)];
            q.c_[static_cast<std::size_t>(k)] = acc / d.c_[0];
        }
        return q;
    }

private:
    std::array<double, order + 1> c_{};
};

/// Series square root; requires a strictly positive value coefficient.
inline Jet sqrt(const Jet& f) {
    if (!(f.value() > 0.0)) throw DomainError("jet sqrt of nonpositive value");
    Jet g;
    g.coeff(0) = std::sqrt(f.value());
    for (int k = 1; k <= Jet::order; ++k) {
        double acc = f.coeff(k);
        for (int i = 1; i < k; ++i) acc -= g.coeff(i) * g.coeff(k - i);
        g.coeff(k) = acc / (2.0 * g.coeff(0));
    }
    return g;
}

/// Series exponential.
inline Jet exp(const Jet& f) {
    Jet g;
    g.coeff(0) = std::exp(f.value());
    for (int k = 1; k <= Jet::order; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * f.coeff(i) * g.coeff(k - i);
        g.coeff(k) = acc / k;
    }
    return g;
}

/// Series logarithm; requires a strictly positive value coefficient.
inline Jet log(const Jet& f) {
    if (!(f.value() > 0.0)) throw DomainError("jet log of nonpositive value");
    Jet g;
    g.coeff(0) = std::log(f.value());
    for (int k = 1; k <= Jet::order; ++k) {
        double acc = k * f.coeff(k);
        for (int i = 1; i < k; ++i) acc -= i * g.coeff(i) * f.coeff(k - i);
        g.coeff(k) = acc / (k * f.value());
    }
    return g;
}

} // namespace evohj
