#include <cmath>
#include <limits>

#include "brickwall/integrability.hpp"
#include "brickwall/parallel.hpp"
#include "brickwall/pauli.hpp"

namespace brickwall {

namespace {

using Mat2c = Eigen::Matrix2cd;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix k3(const CMatrix& a, const CMatrix& b, const CMatrix& c) { return kron(kron(a, b), c); }

void require_charge_inputs(const RMatrixParams& p, int sign, int L, int min_L) {
    if (p.phase == Phase::critical) throw UnsupportedError("charges are not built on the critical manifold");
    if (sign != 1 && sign != -1) throw ParameterError("charge sign must be +1 or -1");
    if (L % 2 != 0 || L < min_L) throw ParameterError("charge construction needs even L >= " + std::to_string(min_L));
    if (L > kMaxDenseSites) throw CapacityError("dense charges refused beyond L=12");
}

ChargeFamily make_family(const RMatrixParams& p, int ell, int sign, int L, CMatrix density, int start, CMatrix q,
                         bool with_parts) {
    ChargeFamily f;
    f.ell = ell;
    f.sign = sign;
    f.u = p.u;
    f.L = L;
    f.density_support = 2 * ell + 1;
    f.density_start = start;
    f.density = std::move(density);
    if (with_parts) {
        f.hermitian_part = {(q + q.adjoint()) / 2.0, "hermitian part"};
        f.antihermitian_part = {(q - q.adjoint()) / (2.0 * I), "antihermitian part"};
    }
    f.matrix = {std::move(q), "Q_" + std::to_string(ell) + (sign > 0 ? "+" : "-")};
    return f;
}

CMatrix assemble(const CMatrix& density, int start, int L) {
    const Eigen::Index n = Eigen::Index(1) << L;
    CMatrix q = CMatrix::Zero(n, n);
    for (int j = 0; j < L / 2; ++j) q += embed_local(density, (start + 2 * j) % L, L);
    return q;
}

}  // namespace

CMatrix charge_q1_density(const RMatrixParams& p, int sign) {
    const CMatrix id2 = CMatrix::Identity(2, 2);
    const Mat4 ru = r_matrix(p, p.u);
    const Mat4 ru_inv = ru.inverse();
    const Mat4 d0 = r_matrix_derivative(p, 0.0);
    if (sign > 0) {
        const Mat4 du = r_matrix_derivative(p, p.u);
        return kron(du * ru_inv, id2) + kron(ru, id2) * kron(id2, d0) * kron(ru_inv, id2);
    }
    const Mat4 dmu = r_matrix_derivative(p, -p.u);
    return kron(id2, ru) * kron(d0, id2) * kron(id2, ru_inv) + kron(id2, ru * dmu);
}

ChargeFamily charge_q1(const RMatrixParams& p, int sign, int L) {
    require_charge_inputs(p, sign, L, 6);
    const int start = charge_q1_density_start(sign);
    CMatrix d = charge_q1_density(p, sign);
    CMatrix q = assemble(d, start, L);
    return make_family(p, 1, sign, L, std::move(d), start, std::move(q), true);
}

CMatrix charge_q1_closed_form_density(const RMatrixParams& p, int sign) {
    if (p.phase == Phase::critical) throw UnsupportedError("charges are not built on the critical manifold");
    // Standard-orientation Paulis: z = diag(1, -1) on the index basis.
    CMatrix X(2, 2), Y(2, 2), Z(2, 2), id(2, 2);
    X << 0, 1, 1, 0;
    Y << 0, cplx(0, -1), cplx(0, 1), 0;
    Z << 1, 0, 0, -1;
    id.setIdentity();

    cplx u = p.u, rho = p.rho, xi = p.xi;
    const double theta = p.theta;
    if (p.phase == Phase::II) {
        u = I * u;
        rho = I * rho;
        xi = -I * xi;
    }
    if (std::abs(std::cos(2.0 * u) - std::cosh(2.0 * rho)) < 1e-300)
        throw DegenerateError("closed-form charge density is singular at u = rho = 0");
    const double s = sign;

    const CMatrix xx12 = k3(X, X, id) + k3(Y, Y, id), xx23 = k3(id, X, X) + k3(id, Y, Y);
    const CMatrix xx13 = k3(X, id, X) + k3(Y, id, Y);
    const CMatrix dm12 = k3(X, Y, id) - k3(Y, X, id), dm23 = k3(id, X, Y) - k3(id, Y, X);
    const CMatrix dm13 = k3(X, id, Y) - k3(Y, id, X);
    const CMatrix z1 = k3(Z, id, id), z2 = k3(id, Z, id), z3 = k3(id, id, Z);

    const cplx tp = theta + s * xi * u, tm = theta - s * xi * u;
    const cplx cu = std::cos(u), su = std::sin(u), shr = std::sinh(rho), chr = std::cosh(rho);
    CMatrix body = 2.0 * cu * shr *
                       (std::cos(tp) * xx12 + std::cos(tm) * xx23 - std::sin(tp) * dm12 - std::sin(tm) * dm23 -
                        (chr / cu) * (z1 * z2 + z2 * z3)) -
                   2.0 * su * su * (chr / shr) * (std::cos(2.0 * theta) * xx13 - std::sin(2.0 * theta) * dm13 + z1 * z3) -
                   s * 2.0 * su * chr * (std::sin(tp) * xx12 + std::cos(tp) * dm12) * z3 -
                   s * std::sin(2.0 * u) * (std::sin(2.0 * theta) * xx13 + std::cos(2.0 * theta) * dm13) * z2 -
                   s * 2.0 * su * chr * (std::sin(tm) * xx23 + std::cos(tm) * dm23) * z1;
    CMatrix d = body / (2.0 * I * (std::cos(2.0 * u) - std::cosh(2.0 * rho)));
    // the substituted expression is the derivative in the rotated variable
    if (p.phase == Phase::II) d *= I;
    return d;
}

ChargeFamily charge_q1_closed_form(const RMatrixParams& p, int sign, int L) {
    require_charge_inputs(p, sign, L, 6);
    const int start = charge_q1_density_start(sign);
    CMatrix d = charge_q1_closed_form_density(p, sign);
    CMatrix q = assemble(d, start, L);
    return make_family(p, 1, sign, L, std::move(d), start, std::move(q), true);
}

CVector apply_higher_charge(const TransferMatrix& t, int ell, const CVector& v) {
    if (ell < 1 || ell > t.order()) throw ParameterError("charge order exceeds the transfer-matrix series order");
    using Poly = std::vector<CVector>;
    // Y(p) = sum_{k>=1} T0^{-1} T_k e^k p, truncated at order ell; T0 is unitary at +-u/2
    auto apply_y = [&](const Poly& in) {
        Poly out(ell + 1);
        for (int j = 0; j < ell; ++j) {
            if (in[j].size() == 0) continue;
            const auto series = t.apply_series(in[j], ell - j);
            for (int k = 1; k <= ell - j; ++k) {
                CVector c = t.apply_adjoint(series[k]);
                if (out[j + k].size() == 0)
                    out[j + k] = std::move(c);
                else
                    out[j + k] += c;
            }
        }
        return out;
    };
    Poly power(ell + 1);
    power[0] = v;
    CVector acc = CVector::Zero(v.size());
    double factorial = 1.0;
    for (int m = 1; m <= ell; ++m) factorial *= m;
    for (int m = 1; m <= ell; ++m) {
        power = apply_y(power);
        if (power[ell].size() != 0) acc += ((m % 2 == 1 ? 1.0 : -1.0) / m) * power[ell];
    }
    return factorial * acc;
}

ChargeFamily higher_charge(const RMatrixParams& p, int ell, int sign, int L, int threads) {
    if (ell < 1) throw ParameterError("charge order must be >= 1");
    require_charge_inputs(p, sign, L, std::max(6, 2 * (2 * ell + 1)));
    const TransferMatrix t(p, L, sign * p.u / 2.0, ell);
    const Eigen::Index n = Eigen::Index(1) << L;

    {
        // the log-derivative series assumes T(+-u/2)^{-1} = T(+-u/2)^dagger
        CVector probe = CVector::Zero(n);
        for (Eigen::Index s = 0; s < n; ++s) probe[s] = cplx(std::cos(0.7 * s + 0.1), std::sin(1.3 * s));
        const double err = (t.apply_adjoint(t.apply(probe)) - probe).cwiseAbs().maxCoeff();
        if (err > 1e-9) throw DegenerateError("transfer matrix at +-u/2 is not unitary");
    }

    CMatrix q(n, n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t s) {
        CVector e = CVector::Zero(n);
        e[static_cast<Eigen::Index>(s)] = 1.0;
        q.col(static_cast<Eigen::Index>(s)) = apply_higher_charge(t, ell, e);
    });

    // Split into product-basis strings: strings longer than 2 ell + 1 sites
    // measure the support violation; the rest form the density.
    const int w = 2 * ell + 1;
    CMatrix coeff = q;
    to_local_basis(coeff, L);
    const auto span = cyclic_span_table(L);
    double outside = 0.0;
    double parity_mass[2] = {0.0, 0.0};
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto mask = static_cast<std::uint64_t>(r | c);
            const double a = std::abs(coeff(r, c));
            if (span[mask] > w)
                outside = std::max(outside, a);
            else if (span[mask] == w)
                parity_mass[cyclic_span_start(mask, L) % 2] += a;
        }
    const int start = parity_mass[1] > parity_mass[0] ? 1 : 0;

    const Eigen::Index dw = Eigen::Index(1) << w;
    CMatrix density = CMatrix::Zero(dw, dw);
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto mask = static_cast<std::uint64_t>(r | c);
            if (mask == 0 || span[mask] > w) continue;
            // place the string in the window [start + 2j, start + 2j + w) containing it
            const int first = cyclic_span_start(mask, L);
            const int window = (((first - start) % 2 + 2) % 2 == 0) ? first : (first - 1 + L) % L;
            if (window != start) continue;
            const int extent = (first - window + L) % L + span[mask];
            if (extent > w) continue;  // counted above as a parity mismatch
            Eigen::Index lr = 0, lc = 0;
            for (int k = 0; k < w; ++k) {
                const int site = (window + k) % L;
                lr = (lr << 1) | ((r >> (L - 1 - site)) & 1);
                lc = (lc << 1) | ((c >> (L - 1 - site)) & 1);
            }
            density(lr, lc) = coeff(r, c);
        }
    from_local_basis(density, w);
    coeff.resize(0, 0);

    ChargeFamily f = make_family(p, ell, sign, L, std::move(density), start, std::move(q), L <= 10);
    f.out_of_window = outside;
    return f;
}

}  // namespace brickwall
