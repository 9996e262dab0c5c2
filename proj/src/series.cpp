#include "brickwall/series.hpp"

#include <cmath>

namespace brickwall {

Jet Jet::variable(std::size_t order, cplx x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (std::size_t k = 0; k <= r.order(); ++k) r.c_[k] += b.c_[k];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (std::size_t k = 0; k <= r.order(); ++k) r.c_[k] -= b.c_[k];
    return r;
}

Jet operator-(const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v = -v;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order(), 0.0);
    for (std::size_t n = 0; n <= a.order(); ++n)
        for (std::size_t k = 0; k <= n; ++k) r.c_[n] += a.c_[k] * b.c_[n - k];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.order(), 0.0);
    for (std::size_t n = 0; n <= a.order(); ++n) {
        cplx acc = a.c_[n];
        for (std::size_t k = 1; k <= n; ++k) acc -= b.c_[k] * r.c_[n - k];
        r.c_[n] = acc / b.c_[0];
    }
    return r;
}

Jet operator*(cplx s, const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v *= s;
    return r;
}

Jet operator+(cplx s, const Jet& a) {
    Jet r = a;
    r.c_[0] += s;
    return r;
}

Jet exp(const Jet& a) {
    Jet e(a.order(), std::exp(a[0]));
    for (std::size_t n = 1; n <= a.order(); ++n) {
        cplx acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += double(k) * a[k] * e[n - k];
        e[n] = acc / double(n);
    }
    return e;
}

namespace {

// Coupled recurrences for (f, g) with f' = g a', g' = sign f a'.
void sincos_like(const Jet& a, Jet& f, Jet& g, double sign) {
    for (std::size_t n = 1; n <= a.order(); ++n) {
        cplx af = 0.0, ag = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            af += double(k) * a[k] * g[n - k];
            ag += double(k) * a[k] * f[n - k];
        }
        f[n] = af / double(n);
        g[n] = sign * ag / double(n);
    }
}

}  // namespace

Jet sin(const Jet& a) {
    Jet s(a.order(), std::sin(a[0])), c(a.order(), std::cos(a[0]));
    sincos_like(a, s, c, -1.0);
    return s;
}

Jet cos(const Jet& a) {
    Jet s(a.order(), std::sin(a[0])), c(a.order(), std::cos(a[0]));
    sincos_like(a, s, c, -1.0);
    return c;
}

Jet sinh(const Jet& a) {
    Jet s(a.order(), std::sinh(a[0])), c(a.order(), std::cosh(a[0]));
    sincos_like(a, s, c, 1.0);
    return s;
}

Jet cosh(const Jet& a) {
    Jet s(a.order(), std::sinh(a[0])), c(a.order(), std::cosh(a[0]));
    sincos_like(a, s, c, 1.0);
    return c;
}

}  // namespace brickwall
