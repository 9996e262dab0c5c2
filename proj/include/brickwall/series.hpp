#pragma once

#include <cstddef>
#include <vector>

#include "brickwall/core.hpp"

namespace brickwall {

// Truncated Taylor series in a single variable with complex coefficients.
class Jet {
public:
    Jet() = default;
    Jet(std::size_t order, cplx constant) : c_(order + 1, cplx(0.0)) { c_[0] = constant; }
    static Jet variable(std::size_t order, cplx x0);

    std::size_t order() const { return c_.size() - 1; }
    const cplx& operator[](std::size_t k) const { return c_[k]; }
    cplx& operator[](std::size_t k) { return c_[k]; }

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator*(cplx s, const Jet& a);
    friend Jet operator+(cplx s, const Jet& a);

private:
    std::vector<cplx> c_;
};

Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);

}  // namespace brickwall
