#include "brickwall/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "brickwall/gates.hpp"

namespace brickwall {

double AntiUnitary::square_residual() const {
    const CMatrix& w = unitary_part.entries;
    return max_abs(w * w.conjugate() - CMatrix::Identity(w.rows(), w.cols()));
}

Mat4 w_theta(double theta) {
    Mat4 w = Mat4::Zero();
    w(0, 0) = w(3, 3) = 1.0;
    w(1, 1) = std::exp(-I * theta);  // |01>: z2 - z1 = 2
    w(2, 2) = std::exp(I * theta);
    return w;
}

GateTimeReversal single_gate_time_reversal(const TwoQubitGate& g) {
    GateTimeReversal out;
    out.theta = haar_params_from_gate(g).params.theta_v;
    const Mat4 w = w_theta(out.theta);
    out.op.unitary_part = {CMatrix(w), "W_theta"};
    out.residual = max_abs(CMatrix(w * g.matrix.conjugate() * w.adjoint() - g.matrix.adjoint()));
    return out;
}

DmRotation rotate_out_dm(const HamiltonianGateParams& p) {
    DmRotation out;
    out.params = p;
    out.params.D = 0.0;
    out.params.J = std::hypot(p.J, p.D);
    out.theta = -0.5 * std::atan2(p.D, p.J);
    const Mat4 w = w_theta(out.theta);
    out.residual =
        max_abs(CMatrix(w * hamiltonian_density(p) * w.adjoint() - hamiltonian_density(out.params)));
    return out;
}

std::vector<double> bond_angles(const BrickworkCircuit& circuit) {
    const int L = circuit.L;
    const int bonds = circuit.boundary == Boundary::periodic ? L : L - 1;
    std::vector<double> theta(bonds, 0.0);
    std::vector<bool> seen(bonds, false);
    for (const auto& layer : circuit.layers)
        for (const auto& g : layer) {
            int bond;
            if (g.second == (g.first + 1) % L)
                bond = g.first;
            else
                throw ParameterError("time reversal expects gates oriented along increasing sites");
            const double t = haar_params_from_gate(g.gate).params.theta_v;
            if (seen[bond]) {
                const double d = wrap_symmetric(2.0 * (t - theta[bond]));
                if (std::abs(d) > 1e-10)
                    throw SymmetryError("gates on one bond carry different theta angles", std::abs(d) / 2.0);
                continue;
            }
            theta[bond] = t;
            seen[bond] = true;
        }
    return theta;
}

AngleDefect angle_defect(const BrickworkCircuit& circuit) {
    const auto theta = bond_angles(circuit);
    double sum = 0.0;
    for (double t : theta) sum += t;
    AngleDefect d;
    d.mod_2pi = wrap_symmetric(sum);
    d.mod_pi = wrap_symmetric(2.0 * sum) / 2.0;
    return d;
}

AntiUnitary global_time_reversal(const BrickworkCircuit& circuit, double tol) {
    const int L = circuit.L;
    if (L > kMaxDenseSites) throw CapacityError("dense time-reversal operator refused beyond L=12");
    const auto theta = bond_angles(circuit);
    if (circuit.boundary == Boundary::periodic) {
        // theta enters only through e^{2i theta}, so the ring closes modulo pi
        const AngleDefect d = angle_defect(circuit);
        if (std::abs(d.mod_pi) > tol)
            throw SymmetryError("periodic circuit: bond angles do not close, angle defect " +
                                    std::to_string(d.mod_2pi),
                                d.mod_2pi);
    }
    std::vector<double> c(L, 0.0);
    for (int j = 1; j < L; ++j) c[j] = c[j - 1] + theta[j - 1];
    const Eigen::Index n = Eigen::Index(1) << L;
    CVector diag(n);
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(n); ++s) {
        double phase = 0.0;
        for (int j = 0; j < L; ++j) phase -= c[j] * (site_bit(s, j, L) ? 1.0 : -1.0);
        diag[static_cast<Eigen::Index>(s)] = std::exp(I * phase);
    }
    return AntiUnitary{{CMatrix(diag.asDiagonal()), "global time reversal"}};
}

BrickworkCircuit equivalent_circuit(const BrickworkCircuit& circuit) {
    if (circuit.boundary != Boundary::open)
        throw ParameterError("equivalent circuit is defined for open boundaries");
    if (!circuit.is_standard()) throw ParameterError("equivalent circuit expects a two-layer brickwork");
    BrickworkCircuit out = circuit;
    Layer half;
    for (const auto& g : circuit.layers[0]) half.push_back({g.first, g.second, gate_sqrt(g.gate)});
    out.layers = {half, circuit.layers[1], half};
    return out;
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double spectral_match_error(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    auto by_phase = [](std::vector<cplx> v) {
        std::sort(v.begin(), v.end(),
                  [](const cplx& x, const cplx& y) { return wrap_angle(std::arg(x)) < wrap_angle(std::arg(y)); });
        return v;
    };
    const auto sa = by_phase(a), sb = by_phase(b);
    double err = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) err = std::max(err, std::abs(sa[i] - sb[i]));
    if (err <= tol) return err;
    std::vector<bool> used(sb.size(), false);
    double greedy = 0.0;
    for (const auto& x : sa) {
        std::size_t best = 0;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sb.size(); ++j)
            if (!used[j] && std::abs(x - sb[j]) < dist) {
                dist = std::abs(x - sb[j]);
                best = j;
            }
        used[best] = true;
        greedy = std::max(greedy, dist);
    }
    return std::min(err, greedy);
}

}  // namespace brickwall
