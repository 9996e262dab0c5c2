#pragma once

#include <cstdint>

#include "brickwall/core.hpp"
#include "brickwall/gate_types.hpp"
#include "brickwall/rng.hpp"

namespace brickwall {

// Two-site generator h in the basis {|00>, |01>, |10>, |11>}.
Mat4 hamiltonian_density(const HamiltonianGateParams& p);

TwoQubitGate gate_from_hamiltonian(const HamiltonianGateParams& p);

HaarGateParams canonicalize(const HaarGateParams& p);
TwoQubitGate gate_from_haar(const HaarGateParams& p);

// gate = exp(i mu (z1 + z2) / 2) * gate_from_haar(params).
struct HaarExtraction {
    HaarGateParams params;
    double magnetization_phase = 0.0;  // mu, zero for equal corners
};

HaarExtraction haar_params_from_gate(const TwoQubitGate& g);

// Draws from d(sin^2 phi) d chi d alpha d theta d delta; draw order is
// delta, alpha, sin^2 phi, chi, theta.
class HaarSampler {
public:
    explicit HaarSampler(std::uint64_t seed) : rng_(seed) {}
    HaarGateParams next();

private:
    Rng rng_;
};

HaarGateParams sample_haar(std::uint64_t seed);

TwoQubitGate gate_sqrt(const HamiltonianGateParams& p);
// Uses tau/2 when Hamiltonian parameters are attached, otherwise the principal
// square root of each magnetization block.
TwoQubitGate gate_sqrt(const TwoQubitGate& g);

}  // namespace brickwall
