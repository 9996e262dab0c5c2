#include <algorithm>

#include "brickwall/gates.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace brickwall;

namespace {

// h built from Pauli products, independent of the library's closed form.
Mat4 pauli_density(const HamiltonianGateParams& p) {
    using namespace oracle;
    return p.J * (pauli_kron(sx(), sx()) + pauli_kron(sy(), sy())) + p.delta * pauli_kron(sz(), sz()) +
           p.B * (pauli_kron(id2(), sz()) - pauli_kron(sz(), id2())) +
           p.D * (pauli_kron(sx(), sy()) - pauli_kron(sy(), sx())) +
           p.M * (pauli_kron(sz(), id2()) + pauli_kron(id2(), sz())) + p.A * Mat4::Identity();
}

HamiltonianGateParams random_hamiltonian(Rng& rng, double scale = 5.0) {
    HamiltonianGateParams p;
    p.tau = rng.uniform(-scale, scale);
    p.delta = rng.uniform(-scale, scale);
    p.B = rng.uniform(-scale, scale);
    p.D = rng.uniform(-scale, scale);
    p.M = rng.uniform(-scale, scale);
    p.A = rng.uniform(-scale, scale);
    p.J = rng.uniform(0.2, 2.0);
    return p;
}

// Max deviation of a from b after removing one global phase.
double phase_free_distance(const Mat4& a, const Mat4& b) {
    Eigen::Index r, c;
    b.cwiseAbs().maxCoeff(&r, &c);
    const cplx ph = a(r, c) / b(r, c);
    return (a - (ph / std::abs(ph)) * b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("Hamiltonian gates against a brute-force exponential") {
    Rng rng(2024);
    double worst = 0.0, worst_unit = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HamiltonianGateParams p = random_hamiltonian(rng);
        const Mat4 h = pauli_density(p);
        CHECK(max_abs(hamiltonian_density(p) - h) < 1e-14);
        const TwoQubitGate g = gate_from_hamiltonian(p);
        worst = std::max(worst, max_abs(g.matrix - oracle::expm(Mat4(cplx(0, -p.tau) * h))));
        worst_unit = std::max(worst_unit, g.unitarity_residual());
        CHECK(g.mc_violation() == 0.0);
    }
    CHECK(worst < 1e-12);
    CHECK(worst_unit < 1e-13);

    HamiltonianGateParams zero;
    zero.delta = 3.0;
    zero.B = 1.0;
    CHECK(max_abs(gate_from_hamiltonian(zero).matrix - Mat4::Identity()) == 0.0);

    HamiltonianGateParams xxx;
    xxx.tau = pi / 3;
    xxx.delta = 1.0;
    CHECK(max_abs(gate_from_hamiltonian(xxx).matrix - oracle::expm(Mat4(cplx(0, -pi / 3) * pauli_density(xxx)))) <
          1e-12);

    HamiltonianGateParams bad;
    bad.tau = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(gate_from_hamiltonian(bad), ParameterError);
}

TEST_CASE("M and A only contribute magnetization-dependent phases") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        HamiltonianGateParams p = random_hamiltonian(rng, 2.0);
        HamiltonianGateParams q = p;
        q.M = q.A = 0.0;
        const Mat4 a = gate_from_hamiltonian(p).matrix, b = gate_from_hamiltonian(q).matrix;
        // Per block: ratio of nonzero entries is one phase.
        CHECK(std::abs(std::abs(a(0, 0) / b(0, 0)) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(a(3, 3) / b(3, 3)) - 1.0) < 1e-12);
        const cplx ph = std::exp(cplx(0, -p.tau * p.A));
        CHECK(max_abs(CMatrix(a.block<2, 2>(1, 1) - ph * b.block<2, 2>(1, 1))) < 1e-12);
    }
}

TEST_CASE("Haar gates: structure, special cases, periodicity") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const TwoQubitGate g = gate_from_haar(sample_haar(s));
        CHECK(g.mc_violation() == 0.0);
        CHECK(g.unitarity_residual() < 1e-14);
    }
    HaarGateParams p;
    p.phi = pi / 2;
    const Mat4 diag = gate_from_haar(p).matrix;
    CHECK(max_abs(diag - Mat4(Eigen::Vector4cd(1, 1, -1, 1).asDiagonal())) < 1e-15);

    p.phi = 0.0;
    const Mat4 swap = gate_from_haar(p).matrix;
    CHECK(std::abs(swap(1, 2) - 1.0) < 1e-15);
    CHECK(std::abs(swap(2, 1) - 1.0) < 1e-15);
    CHECK(std::abs(swap(1, 1)) < 1e-15);

    for (std::uint64_t s = 0; s < 100; ++s) {
        HaarGateParams a = sample_haar(s), b = a;
        b.theta_v += pi;
        b.chi += pi;
        b.alpha += pi;
        CHECK(max_abs(gate_from_haar(a).matrix - gate_from_haar(b).matrix) < 1e-14);
    }
    p.phi = 2.0;
    CHECK_THROWS_AS(gate_from_haar(p), ParameterError);
}

TEST_CASE("Haar extraction round trips") {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const TwoQubitGate g = gate_from_haar(sample_haar(1000 + s));
        const HaarExtraction ex = haar_params_from_gate(g);
        CHECK(std::abs(ex.magnetization_phase) < 1e-14);
        worst = std::max(worst, max_abs(gate_from_haar(ex.params).matrix - g.matrix));
    }
    CHECK(worst < 1e-13);

    // identity extracts to parameters that rebuild it
    const HaarExtraction id = haar_params_from_gate(TwoQubitGate{});
    CHECK(max_abs(gate_from_haar(id.params).matrix - Mat4::Identity()) < 1e-15);

    HamiltonianGateParams h;
    h.tau = pi / 3;
    h.delta = 1.4;
    h.B = h.D = 0.5;
    const TwoQubitGate hg = gate_from_hamiltonian(h);
    CHECK(max_abs(gate_from_haar(haar_params_from_gate(hg).params).matrix - hg.matrix) < 1e-13);

    // Unequal corners: the factored phase exp(i mu (z1 + z2) / 2) restores the gate.
    h.M = 0.37;
    const TwoQubitGate mg = gate_from_hamiltonian(h);
    const HaarExtraction ex = haar_params_from_gate(mg);
    CHECK(std::abs(ex.magnetization_phase) > 0.1);
    const Eigen::Vector4cd zsum(-1.0, 0.0, 0.0, 1.0);
    Mat4 phase = Mat4::Zero();
    for (int i = 0; i < 4; ++i) phase(i, i) = std::exp(cplx(0, ex.magnetization_phase * zsum(i).real()));
    CHECK(phase_free_distance(phase * gate_from_haar(ex.params).matrix, mg.matrix) < 1e-12);

    Mat4 broken = Mat4::Identity();
    broken(0, 3) = 0.1;
    CHECK_THROWS_AS(haar_params_from_gate(TwoQubitGate::from_matrix(broken)), StructureError);
}

TEST_CASE("Hamiltonian -> Haar -> gate equivalence up to a global phase") {
    Rng rng(77);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HamiltonianGateParams p = random_hamiltonian(rng);
        const TwoQubitGate g = gate_from_hamiltonian(p);
        const Mat4 rebuilt = gate_from_haar(haar_params_from_gate(g).params).matrix;
        Mat4 phase = Mat4::Identity();
        const double mu = haar_params_from_gate(g).magnetization_phase;
        phase(0, 0) = std::exp(cplx(0, -mu));
        phase(3, 3) = std::exp(cplx(0, mu));
        worst = std::max(worst, phase_free_distance(phase * rebuilt, g.matrix));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("Haar sampler: uniform sin^2 phi, half in phase I, determinism") {
    const int n = 100000;
    HaarSampler s(123);
    std::vector<double> s2;
    s2.reserve(n);
    for (int i = 0; i < n; ++i) {
        const HaarGateParams p = s.next();
        s2.push_back(std::pow(std::sin(p.phi), 2));
        CHECK_MESSAGE((p.chi >= 0 && p.chi < 2 * pi && p.alpha >= 0 && p.alpha < 2 * pi), "angle range");
    }
    std::sort(s2.begin(), s2.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) ks = std::max({ks, std::abs(s2[i] - double(i) / n), std::abs(s2[i] - double(i + 1) / n)});
    CHECK(ks < 0.01);

    HaarSampler a(9), b(9);
    for (int i = 0; i < 10; ++i) {
        const HaarGateParams x = a.next(), y = b.next();
        CHECK(x.phi == y.phi);
        CHECK(x.theta_v == y.theta_v);
    }
}

TEST_CASE("gate square roots") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const HamiltonianGateParams p = random_hamiltonian(rng, 3.0);
        const TwoQubitGate r = gate_sqrt(p);
        CHECK(max_abs(r.matrix * r.matrix - gate_from_hamiltonian(p).matrix) < 1e-12);
        CHECK(r.mc_violation() == 0.0);
        const TwoQubitGate h = gate_sqrt(gate_from_haar(sample_haar(i)));
        CHECK(max_abs(h.matrix * h.matrix - gate_from_haar(sample_haar(i)).matrix) < 1e-12);
        CHECK(h.mc_violation() == 0.0);
    }
    HamiltonianGateParams id;
    CHECK(max_abs(gate_sqrt(id).matrix - Mat4::Identity()) == 0.0);
}
