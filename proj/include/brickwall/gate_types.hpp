#pragma once

#include <optional>
#include <string>

#include "brickwall/core.hpp"

namespace brickwall {

// h = J (xx + yy) + Delta zz + B (z2 - z1) + D (x1 y2 - y1 x2) + M (z1 + z2) + A,
// gate U = exp(-i tau h).
struct HamiltonianGateParams {
    double tau = 0.0;
    double delta = 0.0;
    double B = 0.0;
    double D = 0.0;
    double M = 0.0;
    double A = 0.0;
    double J = 1.0;
};

// Corners e^{i delta_phase}; central block
// e^{i alpha} [[sin phi e^{-i chi}, cos phi e^{-i theta_v}], [cos phi e^{i theta_v}, -sin phi e^{i chi}]].
struct HaarGateParams {
    double delta_phase = 0.0;
    double alpha = 0.0;
    double phi = 0.0;
    double chi = 0.0;
    double theta_v = 0.0;
};

enum class GateSource { custom, hamiltonian, haar, r_matrix };

std::string to_string(GateSource s);

struct TwoQubitGate {
    Mat4 matrix = Mat4::Identity();
    GateSource source = GateSource::custom;
    std::optional<HamiltonianGateParams> hamiltonian;
    std::optional<HaarGateParams> haar;

    static TwoQubitGate from_matrix(const Mat4& m) {
        TwoQubitGate g;
        g.matrix = m;
        return g;
    }

    // Largest modulus among the entries that must vanish for a
    // magnetization-conserving gate.
    double mc_violation() const;
    bool is_mc(double tol = 0.0) const { return mc_violation() <= tol; }
    double unitarity_residual() const;
};

}  // namespace brickwall
