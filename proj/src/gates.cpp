#include "brickwall/gates.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace brickwall {

namespace {

void require_finite(const HamiltonianGateParams& p) {
    for (double v : {p.tau, p.delta, p.B, p.D, p.M, p.A, p.J})
        if (!std::isfinite(v)) throw ParameterError("Hamiltonian gate parameters must be finite");
}

}  // namespace

Mat4 hamiltonian_density(const HamiltonianGateParams& p) {
    require_finite(p);
    Mat4 h = Mat4::Zero();
    h(0, 0) = p.delta - 2.0 * p.M + p.A;
    h(3, 3) = p.delta + 2.0 * p.M + p.A;
    h(1, 1) = -p.delta + 2.0 * p.B + p.A;
    h(2, 2) = -p.delta - 2.0 * p.B + p.A;
    h(1, 2) = cplx(2.0 * p.J, -2.0 * p.D);
    h(2, 1) = cplx(2.0 * p.J, 2.0 * p.D);
    return h;
}

TwoQubitGate gate_from_hamiltonian(const HamiltonianGateParams& p) {
    require_finite(p);
    const double tau = p.tau;
    Mat4 u = Mat4::Zero();
    u(0, 0) = std::exp(-I * (tau * (p.delta - 2.0 * p.M + p.A)));
    u(3, 3) = std::exp(-I * (tau * (p.delta + 2.0 * p.M + p.A)));

    // central block: (A - Delta) + [[b, w], [conj(w), -b]]
    const double b = 2.0 * p.B;
    const cplx w(2.0 * p.J, -2.0 * p.D);
    const double n = std::sqrt(b * b + std::norm(w));
    const double c = std::cos(tau * n);
    const double sn = n > 0.0 ? std::sin(tau * n) / n : tau;
    const cplx phase = std::exp(-I * (tau * (p.A - p.delta)));
    u(1, 1) = phase * (c - I * sn * b);
    u(2, 2) = phase * (c + I * sn * b);
    u(1, 2) = phase * (-I * sn * w);
    u(2, 1) = phase * (-I * sn * std::conj(w));

    TwoQubitGate g;
    g.matrix = u;
    g.source = GateSource::hamiltonian;
    g.hamiltonian = p;
    return g;
}

HaarGateParams canonicalize(const HaarGateParams& p) {
    HaarGateParams q = p;
    q.delta_phase = wrap_angle(p.delta_phase);
    q.alpha = wrap_angle(p.alpha);
    q.chi = wrap_angle(p.chi);
    q.theta_v = wrap_angle(p.theta_v);
    if (!(p.phi >= 0.0 && p.phi <= pi / 2)) throw ParameterError("Haar parameter phi must lie in [0, pi/2]");
    return q;
}

TwoQubitGate gate_from_haar(const HaarGateParams& raw) {
    const HaarGateParams p = canonicalize(raw);
    const double s = std::sin(p.phi), c = std::cos(p.phi);
    const cplx ea = std::exp(I * p.alpha);
    Mat4 u = Mat4::Zero();
    u(0, 0) = std::exp(I * p.delta_phase);
    u(3, 3) = u(0, 0);
    u(1, 1) = ea * s * std::exp(-I * p.chi);
    u(1, 2) = ea * c * std::exp(-I * p.theta_v);
    u(2, 1) = ea * c * std::exp(I * p.theta_v);
    u(2, 2) = -ea * s * std::exp(I * p.chi);
    TwoQubitGate g;
    g.matrix = u;
    g.source = GateSource::haar;
    g.haar = p;
    return g;
}

HaarExtraction haar_params_from_gate(const TwoQubitGate& g) {
    const double viol = g.mc_violation();
    if (viol > 1e-10) throw StructureError("gate is not magnetization conserving (max forbidden entry " +
                                           std::to_string(viol) + ")");
    if (g.unitarity_residual() > 1e-10) throw StructureError("gate is not unitary");
    const Mat4& u = g.matrix;

    HaarExtraction out;
    const double mu = wrap_symmetric(std::arg(u(3, 3)) - std::arg(u(0, 0))) / 2.0;
    out.magnetization_phase = mu;
    HaarGateParams& p = out.params;
    p.delta_phase = wrap_angle(std::arg(u(0, 0)) + mu);

    const Mat2 v = u.block<2, 2>(1, 1);
    double alpha = std::arg(-v.determinant()) / 2.0;
    if (alpha < 0.0) alpha += pi;
    if (alpha >= pi) alpha -= pi;
    p.alpha = alpha;
    const Mat2 vt = std::exp(-I * alpha) * v;
    const double s = std::abs(vt(0, 0));
    const double c = std::abs(vt(1, 0));
    p.phi = std::atan2(s, c);
    p.chi = s > 1e-15 ? wrap_angle(-std::arg(vt(0, 0))) : 0.0;
    p.theta_v = c > 1e-15 ? wrap_angle(std::arg(vt(1, 0))) : 0.0;
    return out;
}

HaarGateParams HaarSampler::next() {
    HaarGateParams p;
    p.delta_phase = rng_.uniform(0.0, 2.0 * pi);
    p.alpha = rng_.uniform(0.0, 2.0 * pi);
    p.phi = std::asin(std::sqrt(rng_.uniform()));
    p.chi = rng_.uniform(0.0, 2.0 * pi);
    p.theta_v = rng_.uniform(0.0, 2.0 * pi);
    return p;
}

HaarGateParams sample_haar(std::uint64_t seed) { return HaarSampler(seed).next(); }

TwoQubitGate gate_sqrt(const HamiltonianGateParams& p) {
    HamiltonianGateParams half = p;
    half.tau = p.tau / 2.0;
    return gate_from_hamiltonian(half);
}

TwoQubitGate gate_sqrt(const TwoQubitGate& g) {
    if (g.hamiltonian) return gate_sqrt(*g.hamiltonian);
    if (g.mc_violation() > 1e-10) throw StructureError("gate_sqrt: gate is not magnetization conserving");
    Mat4 r = Mat4::Zero();
    r(0, 0) = std::sqrt(g.matrix(0, 0));
    r(3, 3) = std::sqrt(g.matrix(3, 3));
    Eigen::ComplexSchur<Mat2> schur(Mat2(g.matrix.block<2, 2>(1, 1)));
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::sqrt(schur.matrixT()(0, 0));
    d(1, 1) = std::sqrt(schur.matrixT()(1, 1));
    r.block<2, 2>(1, 1) = schur.matrixU() * d * schur.matrixU().adjoint();
    return TwoQubitGate::from_matrix(r);
}

}  // namespace brickwall
