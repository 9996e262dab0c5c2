#pragma once

#include <cstdint>
#include <random>

#include "brickwall/core.hpp"

namespace brickwall {

// Seed splitting: child i of a root seed is the first SplitMix64 output of the
// state root + (i + 1) * 0x9E3779B97F4A7C15.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

// mt19937_64 stream with portable conversions: uniform doubles take the top
// 53 bits, normals use Box-Muller.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    cplx complex_normal();  // E|z|^2 = 1
    CVector random_state(Eigen::Index dim);  // normalized

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace brickwall
