#include "brickwall/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brickwall/gates.hpp"
#include "brickwall/series.hpp"

namespace brickwall {

std::string to_string(Phase p) {
    switch (p) {
        case Phase::I: return "I";
        case Phase::II: return "II";
        case Phase::critical: break;
    }
    return "critical";
}

namespace {

cplx lift(const cplx&, cplx c) { return c; }
Jet lift(const Jet& like, cplx c) { return Jet(like.order(), c); }

template <class S>
struct Entries {
    S corner, m11, m12, m21, m22;
};

template <class S>
Entries<S> r_entries(const RMatrixParams& p, const S& x) {
    using std::exp;
    using std::sin;
    using std::sinh;
    if (p.phase == Phase::critical)
        throw UnsupportedError("R-check is singular on the critical manifold");
    const S shifted = x + lift(x, cplx(0.0, p.rho));
    S a, b;
    if (p.phase == Phase::I) {
        const S den = sin(shifted);
        a = sin(x) / den;
        b = lift(x, std::sinh(p.rho)) / den;
    } else {
        const S den = sinh(shifted);
        a = sinh(x) / den;
        b = lift(x, std::sin(p.rho)) / den;
    }
    const S eb = exp(cplx(0.0, p.beta) * x);
    const S ib = I * (eb * b);
    return {eb, ib * exp(cplx(0.0, -p.xi) * x), cplx(-std::exp(-I * p.theta)) * (eb * a),
            cplx(-std::exp(I * p.theta)) * (eb * a), ib * exp(cplx(0.0, p.xi) * x)};
}

Mat8 kron_left(const Mat4& a) {  // a (x) 1
    Mat8 m = Mat8::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 2; ++k) m(2 * i + k, 2 * j + k) = a(i, j);
    return m;
}

Mat8 kron_right(const Mat4& a) {  // 1 (x) a
    Mat8 m = Mat8::Zero();
    for (int k = 0; k < 2; ++k) m.block<4, 4>(4 * k, 4 * k) = a;
    return m;
}

}  // namespace

ABCoefficients ab_coefficients(const RMatrixParams& p, cplx x) {
    if (p.phase == Phase::critical) throw UnsupportedError("no (a, b) on the critical manifold");
    const cplx s = x + cplx(0.0, p.rho);
    if (p.phase == Phase::I) return {std::sin(x) / std::sin(s), std::sinh(p.rho) / std::sin(s)};
    return {std::sinh(x) / std::sinh(s), std::sin(p.rho) / std::sinh(s)};
}

Mat4 r_matrix(const RMatrixParams& p, cplx x) {
    const auto e = r_entries(p, x);
    Mat4 r = Mat4::Zero();
    r(0, 0) = r(3, 3) = e.corner;
    r(1, 1) = e.m11;
    r(1, 2) = e.m12;
    r(2, 1) = e.m21;
    r(2, 2) = e.m22;
    return r;
}

Mat4 r_matrix_derivative(const RMatrixParams& p, cplx x) {
    if (p.phase == Phase::critical) throw UnsupportedError("R-check is singular on the critical manifold");
    const cplx s = x + cplx(0.0, p.rho);
    cplx a, b, da, db;
    if (p.phase == Phase::I) {
        const cplx den = std::sin(s);
        a = std::sin(x) / den;
        b = std::sinh(p.rho) / den;
        da = I * std::sinh(p.rho) / (den * den);
        db = -std::sinh(p.rho) * std::cos(s) / (den * den);
    } else {
        const cplx den = std::sinh(s);
        a = std::sinh(x) / den;
        b = std::sin(p.rho) / den;
        da = I * std::sin(p.rho) / (den * den);
        db = -std::sin(p.rho) * std::cosh(s) / (den * den);
    }
    const cplx eb = std::exp(I * p.beta * x);
    const cplx ib = I * p.beta;
    const cplx em = std::exp(-I * p.xi * x), ep = std::exp(I * p.xi * x);
    Mat4 d = Mat4::Zero();
    d(0, 0) = d(3, 3) = ib * eb;
    d(1, 1) = eb * (ib * I * b * em + I * (db - I * p.xi * b) * em);
    d(2, 2) = eb * (ib * I * b * ep + I * (db + I * p.xi * b) * ep);
    d(1, 2) = -eb * std::exp(-I * p.theta) * (ib * a + da);
    d(2, 1) = -eb * std::exp(I * p.theta) * (ib * a + da);
    return d;
}

std::vector<Mat4> r_matrix_series(const RMatrixParams& p, cplx x0, int order) {
    const auto e = r_entries(p, Jet::variable(static_cast<std::size_t>(order), x0));
    std::vector<Mat4> out(order + 1, Mat4::Zero());
    for (int k = 0; k <= order; ++k) {
        out[k](0, 0) = out[k](3, 3) = e.corner[k];
        out[k](1, 1) = e.m11[k];
        out[k](1, 2) = e.m12[k];
        out[k](2, 1) = e.m21[k];
        out[k](2, 2) = e.m22[k];
    }
    return out;
}

Mat4 swap_gate() {
    Mat4 p = Mat4::Zero();
    p(0, 0) = p(3, 3) = 1.0;
    p(1, 2) = p(2, 1) = 1.0;
    return p;
}

double yang_baxter_residual(const Mat4& r_x, const Mat4& r_xy, const Mat4& r_y) {
    const Mat8 lhs = kron_left(r_x) * kron_right(r_xy) * kron_left(r_y);
    const Mat8 rhs = kron_right(r_y) * kron_left(r_xy) * kron_right(r_x);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double check_yang_baxter(const RMatrixParams& p, double x, double y) {
    return yang_baxter_residual(r_matrix(p, x), r_matrix(p, x + y), r_matrix(p, y));
}

namespace {

struct Reduced {
    HaarGateParams p;
    double gamma;
    bool shifted;
};

double wrap_low(double a) {  // into [-pi, pi)
    double r = std::fmod(a + pi, 2.0 * pi);
    if (r < 0) r += 2.0 * pi;
    return r - pi;
}

Reduced reduce_gamma(const HaarGateParams& raw) {
    Reduced r{canonicalize(raw), 0.0, false};
    r.gamma = wrap_low(r.p.delta_phase - r.p.alpha + pi);
    if (r.gamma < -pi / 2 || r.gamma >= pi / 2) {
        r.p.alpha = wrap_angle(r.p.alpha + pi);
        r.p.theta_v = wrap_angle(r.p.theta_v + pi);
        r.p.chi = wrap_angle(r.p.chi + pi);
        r.gamma = wrap_low(r.p.delta_phase - r.p.alpha + pi);
        r.shifted = true;
    }
    // rounding can leave gamma a hair outside the interval
    r.gamma = std::clamp(r.gamma, -pi / 2, std::nextafter(pi / 2, 0.0));
    return r;
}

}  // namespace

HaarPhase classify_phase_haar(const HaarGateParams& p) {
    const Reduced r = reduce_gamma(p);
    const double cp = std::cos(r.p.phi), cg = std::cos(r.gamma);
    Phase ph = Phase::critical;
    if (std::abs(cp - cg) >= kCriticalTolerance) ph = cp < cg ? Phase::I : Phase::II;
    return {ph, cp, cg};
}

HaarToR haar_to_r(const HaarGateParams& p) {
    const Reduced r = reduce_gamma(p);
    HaarToR out;
    out.gamma = r.gamma;
    out.phi = r.p.phi;
    out.shifted = r.shifted;
    out.reduced = r.p;

    if ((gate_from_haar(p).matrix - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-14) {
        out.identity = true;
        out.params = RMatrixParams{0.0, 0.0, 0.0, 1.0, 0.0, Phase::I};
        return out;
    }

    const double sp = std::sin(r.p.phi), cp = std::cos(r.p.phi);
    const double sg = std::sin(r.gamma), cg = std::cos(r.gamma);
    out.critical_distance = cp - cg;
    if (std::abs(cp - cg) < kCriticalTolerance)
        throw CriticalManifoldError("gate lies on the critical manifold |cos(phi) - cos(gamma)| = " +
                                        std::to_string(std::abs(cp - cg)),
                                    std::abs(cp - cg));
    if (sp == 0.0) throw DegenerateError("phi = 0 maps to u -> infinity in phase II");
    if (cp == 0.0) throw DegenerateError("phi = pi/2 (a = 0) maps to rho -> infinity");

    RMatrixParams& q = out.params;
    q.theta = r.p.theta_v;
    double xiu;
    if (cp < cg) {
        q.phase = Phase::I;
        q.u = std::acos(std::clamp(sg / sp, -1.0, 1.0));
        q.rho = std::acosh(std::max(cg / cp, 1.0));
        xiu = r.p.chi - pi / 2;
    } else {
        q.phase = Phase::II;
        const double s = sg >= 0.0 ? 1.0 : -1.0;
        q.u = std::acosh(std::max(std::abs(sg) / sp, 1.0));
        q.rho = s * std::acos(std::clamp(cg / cp, -1.0, 1.0));
        xiu = r.p.chi - s * pi / 2;
    }
    if (q.u == 0.0) throw DegenerateError("u = 0 for a non-identity gate");
    q.beta = wrap_symmetric(r.p.delta_phase) / q.u;
    q.xi = wrap_symmetric(xiu) / q.u;
    return out;
}

PhaseClassification classify_phase_hamiltonian(const HamiltonianGateParams& p) {
    for (double v : {p.tau, p.delta, p.B, p.D, p.J})
        if (!std::isfinite(v)) throw ParameterError("Hamiltonian gate parameters must be finite");
    const double jd = std::hypot(p.J, p.D);
    const double w = std::sqrt(jd * jd + p.B * p.B);
    const double num = std::abs(std::sin(2.0 * p.tau * p.delta));
    const double den = w > 0.0 ? std::abs(std::sin(2.0 * p.tau * w)) * jd / w : 0.0;
    PhaseClassification c;
    if (den < 1e-15) {
        if (num < 1e-15) {
            c.phase = Phase::critical;
            c.lhs = 1.0;
            return c;
        }
        c.phase = Phase::I;
        c.lhs = std::numeric_limits<double>::infinity();
        c.lhs_infinite = true;
        return c;
    }
    c.lhs = num / den;
    if (c.lhs > 1.0 + kCriticalTolerance)
        c.phase = Phase::I;
    else if (c.lhs < 1.0 - kCriticalTolerance)
        c.phase = Phase::II;
    else
        c.phase = Phase::critical;
    return c;
}

TwoQubitGate gate_from_r(const RMatrixParams& p) {
    TwoQubitGate g;
    g.matrix = r_matrix(p, p.u);
    g.source = GateSource::r_matrix;
    return g;
}

CMatrix traceless(const CMatrix& m) {
    const auto n = m.rows();
    return m - (m.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
}

}  // namespace brickwall
