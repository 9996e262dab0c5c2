#pragma once

#include <string>
#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/gate_types.hpp"
#include "brickwall/operators.hpp"

namespace brickwall {

enum class Phase { I, II, critical };

std::string to_string(Phase p);

inline constexpr double kCriticalTolerance = 1e-9;

// R(x) = e^{i beta x} [[1,0,0,0],[0, i b e^{-i xi x}, -a e^{-i theta}, 0],
//                      [0, -a e^{i theta}, i b e^{i xi x}, 0],[0,0,0,1]]
// with a = sin x / sin(x + i rho), b = sinh rho / sin(x + i rho) in phase I and
// a = sinh x / sinh(x + i rho), b = sin rho / sinh(x + i rho) in phase II.
struct RMatrixParams {
    double beta = 0.0;
    double xi = 0.0;
    double theta = 0.0;
    double rho = 1.0;
    double u = 0.0;
    Phase phase = Phase::I;
};

struct ABCoefficients {
    cplx a;
    cplx b;
};

ABCoefficients ab_coefficients(const RMatrixParams& p, cplx x);
Mat4 r_matrix(const RMatrixParams& p, cplx x);
Mat4 r_matrix_derivative(const RMatrixParams& p, cplx x);
// Taylor coefficients R_k with R(x0 + e) = sum_k R_k e^k, k = 0..order.
std::vector<Mat4> r_matrix_series(const RMatrixParams& p, cplx x0, int order);
// The two-site SWAP.
Mat4 swap_gate();

// Max-norm of R12(x) R23(x+y) R12(y) - R23(y) R12(x+y) R23(x).
double yang_baxter_residual(const Mat4& r_x, const Mat4& r_xy, const Mat4& r_y);
double check_yang_baxter(const RMatrixParams& p, double x, double y);

struct HaarToR {
    RMatrixParams params;
    double gamma = 0.0;             // after reduction into [-pi/2, pi/2)
    double phi = 0.0;
    double critical_distance = 0.0; // cos(phi) - cos(gamma)
    bool shifted = false;           // (theta, chi, alpha) moved by pi
    bool identity = false;
    HaarGateParams reduced;
};

// Critical gates raise CriticalManifoldError; phi = 0 and the a = 0 family
// (other than the identity) raise DegenerateError.
HaarToR haar_to_r(const HaarGateParams& p);

struct HaarPhase {
    Phase phase;
    double cos_phi;
    double cos_gamma;
};
HaarPhase classify_phase_haar(const HaarGateParams& p);

struct PhaseClassification {
    Phase phase = Phase::critical;
    double lhs = 0.0;
    bool lhs_infinite = false;
};

// |sin(2 tau Delta) w / (sin(2 tau w) sqrt(J^2 + D^2))| with w = sqrt(J^2 + D^2 + B^2).
PhaseClassification classify_phase_hamiltonian(const HamiltonianGateParams& p);

TwoQubitGate gate_from_r(const RMatrixParams& p);

struct TransferMatrixSpec {
    RMatrixParams params;
    cplx x = 0.0;
    int L = 0;
};

// Matrix-free T(x0 + e) = tr_a[R_{0a}(x+) R_{1a}(x-) ... R_{L-1,a}(x-)],
// x+- = x0 + e +- u/2, R = P R-check, expanded to a fixed order in e.
class TransferMatrix {
public:
    TransferMatrix(const RMatrixParams& p, int L, cplx x0, int order = 0);

    int L() const { return L_; }
    int order() const { return order_; }
    // Taylor coefficients T_k v, k = 0..order (T_k = T^{(k)} / k!).
    std::vector<CVector> apply_series(const CVector& v, int max_order) const;
    CVector apply(const CVector& v) const;
    CVector apply_adjoint(const CVector& v) const;

private:
    int L_;
    int order_;
    std::vector<Mat4> plus_;   // series of R(x0 + e + u/2)
    std::vector<Mat4> minus_;  // series of R(x0 + e - u/2)
};

Operator transfer_matrix(const TransferMatrixSpec& spec);

// Homogeneous periodic brickwork with gate R-check(u).
BrickworkCircuit integrable_circuit(const RMatrixParams& p, int L);

struct ChargeFamily {
    int ell = 1;
    int sign = 1;
    double u = 0.0;
    int L = 0;
    int density_support = 3;
    int density_start = 0;  // density sits on sites start + 2j, ...
    CMatrix density;        // 2^support square, possibly empty
    Operator matrix;
    Operator hermitian_part;      // (Q + Q^dagger) / 2
    Operator antihermitian_part;  // (Q - Q^dagger) / (2i)
    // Largest coefficient of a product-basis string longer than the support;
    // negative when not evaluated.
    double out_of_window = -1.0;
};

// Q1 from logarithmic derivatives of T at sign * u / 2, built from the
// three-site density with analytic derivatives of R-check.
ChargeFamily charge_q1(const RMatrixParams& p, int sign, int L);
CMatrix charge_q1_density(const RMatrixParams& p, int sign);
// Q1+ densities start on odd sites, Q1- on even ones.
inline int charge_q1_density_start(int sign) { return sign > 0 ? 1 : 0; }
// Explicit XX / DM / zz form of the same density.
ChargeFamily charge_q1_closed_form(const RMatrixParams& p, int sign, int L);
CMatrix charge_q1_closed_form_density(const RMatrixParams& p, int sign);

// Q_ell = d^ell/dx^ell log T(x) at x = sign * u / 2, obtained exactly from
// Taylor coefficients of T (all T(x) commute, so log needs no matrix logarithm).
CVector apply_higher_charge(const TransferMatrix& t, int ell, const CVector& v);
ChargeFamily higher_charge(const RMatrixParams& p, int ell, int sign, int L, int threads = 1);

// Traceless part of a square matrix.
CMatrix traceless(const CMatrix& m);

}  // namespace brickwall
