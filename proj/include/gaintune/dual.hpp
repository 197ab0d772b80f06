#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gaintune {

/// Forward-mode dual number carrying N derivative slots, so one pass
/// through a scalar pipeline yields the value and an N-directional
/// gradient. Only the operations the control laws need are provided.
template <std::size_t N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) { d.fill(0.0); } // NOLINT(google-explicit-constructor)

    static Dual seed(double value, std::size_t slot) {
        Dual x(value);
        x.d[slot] = 1.0;
        return x;
    }

    Dual operator-() const {
        Dual r(-v);
        for (std::size_t i = 0; i < N; ++i) r.d[i] = -d[i];
        return r;
    }
    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (std::size_t i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const double inv = 1.0 / o.v;
        for (std::size_t i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
        v *= inv;
        return *this;
    }
};

template <std::size_t N>
Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <std::size_t N>
Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <std::size_t N>
Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <std::size_t N>
Dual<N> operator/(Dual<N> a, const Dual<N>& b) { return a /= b; }

template <std::size_t N> Dual<N> operator+(double a, Dual<N> b) { return Dual<N>(a) + b; }
template <std::size_t N> Dual<N> operator+(Dual<N> a, double b) { return a + Dual<N>(b); }
template <std::size_t N> Dual<N> operator-(double a, const Dual<N>& b) { return Dual<N>(a) - b; }
template <std::size_t N> Dual<N> operator-(Dual<N> a, double b) { return a - Dual<N>(b); }
template <std::size_t N> Dual<N> operator*(double a, Dual<N> b) { return Dual<N>(a) * b; }
template <std::size_t N> Dual<N> operator*(Dual<N> a, double b) { return a * Dual<N>(b); }
template <std::size_t N> Dual<N> operator/(double a, const Dual<N>& b) { return Dual<N>(a) / b; }
template <std::size_t N> Dual<N> operator/(Dual<N> a, double b) { return a / Dual<N>(b); }

template <std::size_t N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <std::size_t N> bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <std::size_t N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <std::size_t N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }
template <std::size_t N> bool operator<(double a, const Dual<N>& b) { return a < b.v; }
template <std::size_t N> bool operator>(double a, const Dual<N>& b) { return a > b.v; }

template <std::size_t N>
Dual<N> chain(double fv, double dfv, const Dual<N>& x) {
    Dual<N> r(fv);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = dfv * x.d[i];
    return r;
}

template <std::size_t N> Dual<N> sin(const Dual<N>& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
template <std::size_t N> Dual<N> cos(const Dual<N>& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
template <std::size_t N> Dual<N> tan(const Dual<N>& x) {
    const double c = std::cos(x.v);
    return chain(std::tan(x.v), 1.0 / (c * c), x);
}
template <std::size_t N> Dual<N> exp(const Dual<N>& x) {
    const double e = std::exp(x.v);
    return chain(e, e, x);
}
template <std::size_t N> Dual<N> log(const Dual<N>& x) { return chain(std::log(x.v), 1.0 / x.v, x); }
template <std::size_t N> Dual<N> sqrt(const Dual<N>& x) {
    const double s = std::sqrt(x.v);
    return chain(s, 0.5 / s, x);
}
template <std::size_t N> Dual<N> abs(const Dual<N>& x) {
    return x.v < 0.0 ? -x : x; // kink at 0 resolved toward +
}
template <std::size_t N> Dual<N> acos(const Dual<N>& x) {
    return chain(std::acos(x.v), -1.0 / std::sqrt(1.0 - x.v * x.v), x);
}
template <std::size_t N> Dual<N> asin(const Dual<N>& x) {
    return chain(std::asin(x.v), 1.0 / std::sqrt(1.0 - x.v * x.v), x);
}
template <std::size_t N> Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
    const double denom = x.v * x.v + y.v * y.v;
    Dual<N> r(std::atan2(y.v, x.v));
    for (std::size_t i = 0; i < N; ++i)
        r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / denom;
    return r;
}
template <std::size_t N> Dual<N> pow(const Dual<N>& x, double p) {
    return chain(std::pow(x.v, p), p * std::pow(x.v, p - 1.0), x);
}

template <std::size_t N>
double value(const Dual<N>& x) { return x.v; }
inline double value(double x) { return x; }

} // namespace gaintune
