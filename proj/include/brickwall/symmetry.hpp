#pragma once

#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/gate_types.hpp"
#include "brickwall/operators.hpp"

namespace brickwall {

// v -> W conj(v), with conj taken in the computational basis.
struct AntiUnitary {
    Operator unitary_part;

    CVector apply(const CVector& v) const { return unitary_part.entries * v.conjugate(); }
    // T X T^{-1} = W conj(X) W^dagger.
    CMatrix conjugate(const CMatrix& x) const {
        return unitary_part.entries * x.conjugate() * unitary_part.entries.adjoint();
    }
    // || W conj(W) - 1 ||_max, zero when T^2 = 1.
    double square_residual() const;
};

// exp[-i theta/2 (z2 - z1)] on the two-qubit basis.
Mat4 w_theta(double theta);

struct GateTimeReversal {
    AntiUnitary op;
    double theta = 0.0;
    double residual = 0.0;  // || T g T^{-1} - g^dagger ||_max
};

GateTimeReversal single_gate_time_reversal(const TwoQubitGate& g);

struct DmRotation {
    HamiltonianGateParams params;  // D = 0, J = sqrt(J^2 + D^2)
    double theta = 0.0;            // tan(2 theta) = -D / J
    double residual = 0.0;         // || W h W^dagger - h' ||_max
};

DmRotation rotate_out_dm(const HamiltonianGateParams& p);

// theta of the gate on each bond (j, j+1); periodic circuits include (L-1, 0).
std::vector<double> bond_angles(const BrickworkCircuit& circuit);

struct AngleDefect {
    double mod_2pi = 0.0;  // sum of bond angles reduced into (-pi, pi]
    double mod_pi = 0.0;   // same sum reduced into (-pi/2, pi/2]
};
AngleDefect angle_defect(const BrickworkCircuit& circuit);

// prod_j exp(-i c_j z_j) K with c_j = sum_{k<j} theta^(k). Periodic circuits
// are refused with SymmetryError unless the bond angles close around the ring.
AntiUnitary global_time_reversal(const BrickworkCircuit& circuit, double tol = 1e-10);

// Layers: sqrt(odd), even, sqrt(odd).
BrickworkCircuit equivalent_circuit(const BrickworkCircuit& circuit);

// Largest distance between paired eigenvalues after phase sorting, falling
// back to greedy nearest matching when sorting misaligns near-degenerate pairs.
double spectral_match_error(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol = 1e-10);
std::vector<cplx> eigenvalues(const CMatrix& m);

}  // namespace brickwall
