#include "brickwall/gates.hpp"
#include "brickwall/integrability.hpp"
#include "brickwall/symmetry.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace brickwall;

namespace {

HamiltonianGateParams random_hamiltonian(Rng& rng) {
    HamiltonianGateParams p;
    p.tau = rng.uniform(0.1, 2.0);
    p.delta = rng.uniform(-2, 2);
    p.B = rng.uniform(-1, 1);
    p.D = rng.uniform(-1, 1);
    return p;
}

BrickworkCircuit disordered(int L, Boundary bc, Rng& rng) {
    std::vector<TwoQubitGate> odd, even;
    for (int j = 0; j < L / 2; ++j) odd.push_back(gate_from_hamiltonian(random_hamiltonian(rng)));
    const int ne = bc == Boundary::periodic ? L / 2 : L / 2 - 1;
    for (int j = 0; j < ne; ++j) even.push_back(gate_from_hamiltonian(random_hamiltonian(rng)));
    return BrickworkCircuit::brickwork(L, bc, odd, even);
}

}  // namespace

TEST_CASE("single-gate time reversal") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const GateTimeReversal t = single_gate_time_reversal(gate_from_haar(sample_haar(s)));
        CHECK(t.residual < 1e-12);
        CHECK(t.op.square_residual() < 1e-14);
    }
    // real symmetric gate: K alone
    HamiltonianGateParams p;
    p.tau = 0.7;
    p.delta = 0.3;
    p.B = 0.4;
    const GateTimeReversal t = single_gate_time_reversal(gate_from_hamiltonian(p));
    CHECK(std::abs(wrap_symmetric(2 * t.theta)) < 1e-12);
    CHECK(t.residual < 1e-12);

    p.D = 0.8;
    CHECK(single_gate_time_reversal(gate_from_hamiltonian(p)).residual < 1e-12);
}

TEST_CASE("rotating out the DM coupling") {
    HamiltonianGateParams p;
    p.tau = pi / 3;
    p.delta = 1.0;
    p.B = 0.5;
    const DmRotation none = rotate_out_dm(p);
    CHECK(none.params.J == 1.0);
    CHECK(none.theta == 0.0);
    CHECK(none.residual < 1e-15);

    p.D = 0.5;
    const DmRotation r = rotate_out_dm(p);
    CHECK(r.params.D == 0.0);
    CHECK(r.params.J == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
    CHECK(r.residual < 1e-13);
    CHECK(std::tan(2 * r.theta) == doctest::Approx(-0.5).epsilon(1e-12));
    // independent conjugation check with W = exp(-i theta/2 (z2 - z1))
    const Mat4 gen = oracle::pauli_kron(oracle::id2(), oracle::sz()) - oracle::pauli_kron(oracle::sz(), oracle::id2());
    const Mat4 w = oracle::expm(Mat4(cplx(0, -r.theta / 2) * gen));
    CHECK(max_abs(w * hamiltonian_density(p) * w.adjoint() - hamiltonian_density(r.params)) < 1e-13);
    CHECK(classify_phase_hamiltonian(p).phase == classify_phase_hamiltonian(r.params).phase);

    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        HamiltonianGateParams q = random_hamiltonian(rng);
        const DmRotation rq = rotate_out_dm(q);
        CHECK(rq.residual < 1e-13);
        const PhaseClassification a = classify_phase_hamiltonian(q), b = classify_phase_hamiltonian(rq.params);
        if (std::abs(a.lhs - 1.0) > 1e-6) CHECK(a.phase == b.phase);
    }
}

TEST_CASE("equivalent circuit and global time reversal, open boundaries") {
    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const int L = 8;
        const BrickworkCircuit c = disordered(L, Boundary::open, rng);
        const BrickworkCircuit eq = equivalent_circuit(c);
        const CMatrix u = build_propagator(c).entries, ut = build_propagator(eq).entries;
        CHECK(spectral_match_error(eigenvalues(u), eigenvalues(ut)) < 1e-10);
        const AntiUnitary t = global_time_reversal(c);
        CHECK(max_abs(t.conjugate(ut) - ut.adjoint()) < 1e-11);
        CHECK(t.square_residual() < 1e-14);
        // The plain propagator is not time-reversal symmetric under the same operator in general.
        CHECK(max_abs(t.conjugate(u) - u.adjoint()) > 1e-6);
    }
    // homogeneous
    HamiltonianGateParams p;
    p.tau = pi / 3;
    p.delta = 1.0;
    p.B = p.D = 0.5;
    const BrickworkCircuit h = BrickworkCircuit::homogeneous(8, Boundary::open, gate_from_hamiltonian(p));
    const CMatrix uh = build_propagator(h).entries, uth = build_propagator(equivalent_circuit(h)).entries;
    CHECK(spectral_match_error(eigenvalues(uh), eigenvalues(uth)) < 1e-10);

    // identity gates
    const BrickworkCircuit id = BrickworkCircuit::homogeneous(6, Boundary::open, TwoQubitGate{});
    CHECK(max_abs(build_propagator(equivalent_circuit(id)).entries - CMatrix::Identity(64, 64)) == 0.0);
    const AntiUnitary tid = global_time_reversal(id);
    CHECK(max_abs(tid.unitary_part.entries - CMatrix::Identity(64, 64)) == 0.0);
}

TEST_CASE("periodic boundaries: refusal with the angle defect, acceptance when the ring closes") {
    Rng rng(33);
    const int L = 6;
    for (int trial = 0; trial < 5; ++trial) {
        const BrickworkCircuit c = disordered(L, Boundary::periodic, rng);
        double sum = 0.0;
        for (double t : bond_angles(c)) sum += t;
        const AngleDefect d = angle_defect(c);
        CHECK(std::abs(wrap_symmetric(d.mod_2pi - sum)) < 1e-12);
        try {
            global_time_reversal(c);
            FAIL("generic periodic circuit accepted");
        } catch (const SymmetryError& e) {
            CHECK(std::abs(e.measured() - d.mod_2pi) < 1e-12);
        }
    }

    // Fine-tuned ring: the last bond cancels the others.
    std::vector<TwoQubitGate> odd, even;
    std::vector<HaarGateParams> params(L);
    double sum = 0.0;
    for (int b = 0; b < L; ++b) {
        params[b] = sample_haar(900 + b);
        if (b < L - 1) sum += params[b].theta_v;
    }
    params[L - 1].theta_v = wrap_angle(-sum);
    // bond b: odd layer holds even b, even layer odd b
    for (int b = 0; b < L; ++b) (b % 2 == 0 ? odd : even).push_back(gate_from_haar(params[b]));
    const BrickworkCircuit ring = BrickworkCircuit::brickwork(L, Boundary::periodic, odd, even);
    const AntiUnitary t = global_time_reversal(ring);
    BrickworkCircuit sym = ring;
    Layer half;
    for (const auto& g : ring.layers[0]) half.push_back({g.first, g.second, gate_sqrt(g.gate)});
    sym.layers = {half, ring.layers[1], half};
    const CMatrix ut = build_propagator(sym).entries;
    CHECK(max_abs(t.conjugate(ut) - ut.adjoint()) < 1e-11);

    CHECK_THROWS_AS(equivalent_circuit(ring), ParameterError);
}

TEST_CASE("spectral matching survives near-degenerate reordering") {
    std::vector<cplx> a = {std::polar(1.0, 0.1), std::polar(1.0, 0.1 + 1e-13), std::polar(1.0, 2.0)};
    std::vector<cplx> b = {a[2], a[1], a[0]};
    CHECK(spectral_match_error(a, b) < 1e-12);
    b[2] = std::polar(1.0, 0.2);
    CHECK(spectral_match_error(a, b) > 1e-2);
}
