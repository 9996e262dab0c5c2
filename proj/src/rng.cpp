#include "brickwall/rng.hpp"

#include <cmath>

namespace brickwall {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t state = root + stream * 0x9E3779B97F4A7C15ull;
    return splitmix64_next(state);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * pi * u2);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

CVector Rng::random_state(Eigen::Index dim) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = complex_normal();
    return v / v.norm();
}

}  // namespace brickwall
