#include <cmath>

#include "brickwall/integrability.hpp"

namespace brickwall {

namespace {

// Applies a series of two-site gates to a series of vectors:
// out_n = sum_k R_k w_{n-k}. Empty vectors stand for zero.
void apply_series_gate(std::vector<CVector>& w, const std::vector<Mat4>& r, int site, int aux, int n_sites) {
    const int top = static_cast<int>(w.size()) - 1;
    for (int n = top; n >= 0; --n) {
        CVector acc;
        for (int k = 0; k <= n && k < static_cast<int>(r.size()); ++k) {
            if (w[n - k].size() == 0) continue;
            CVector t = w[n - k];
            apply_two_site(t, r[k], site, aux, n_sites);
            if (acc.size() == 0)
                acc = std::move(t);
            else
                acc += t;
        }
        w[n] = std::move(acc);
    }
}

}  // namespace

TransferMatrix::TransferMatrix(const RMatrixParams& p, int L, cplx x0, int order) : L_(L), order_(order) {
    if (L < 2 || L % 2 != 0) throw ParameterError("transfer matrix needs an even number of sites");
    if (L + 1 > kMaxMatrixFreeSites) throw CapacityError("transfer matrix refused beyond L=19");
    const Mat4 swap = swap_gate();
    plus_ = r_matrix_series(p, x0 + p.u / 2, order);
    minus_ = r_matrix_series(p, x0 - p.u / 2, order);
    for (auto& m : plus_) m = swap * m;
    for (auto& m : minus_) m = swap * m;
}

std::vector<CVector> TransferMatrix::apply_series(const CVector& v, int max_order) const {
    if (max_order > order_) throw ParameterError("transfer matrix series order exceeded");
    const Eigen::Index dim = Eigen::Index(1) << L_;
    if (v.size() != dim) throw ParameterError("transfer matrix: state dimension mismatch");
    std::vector<CVector> out(max_order + 1, CVector::Zero(dim));
    for (int a = 0; a < 2; ++a) {
        std::vector<CVector> w(max_order + 1);
        w[0] = CVector::Zero(2 * dim);
        for (Eigen::Index s = 0; s < dim; ++s) w[0][2 * s + a] = v[s];
        for (int j = L_ - 1; j >= 0; --j) apply_series_gate(w, j % 2 == 0 ? plus_ : minus_, j, L_, L_ + 1);
        for (int k = 0; k <= max_order; ++k) {
            if (w[k].size() == 0) continue;
            for (Eigen::Index s = 0; s < dim; ++s) out[k][s] += w[k][2 * s + a];
        }
    }
    return out;
}

CVector TransferMatrix::apply(const CVector& v) const { return apply_series(v, 0)[0]; }

CVector TransferMatrix::apply_adjoint(const CVector& v) const {
    const Eigen::Index dim = Eigen::Index(1) << L_;
    if (v.size() != dim) throw ParameterError("transfer matrix: state dimension mismatch");
    CVector out = CVector::Zero(dim);
    for (int a = 0; a < 2; ++a) {
        CVector w = CVector::Zero(2 * dim);
        for (Eigen::Index s = 0; s < dim; ++s) w[2 * s + a] = v[s];
        for (int j = 0; j < L_; ++j) {
            const Mat4 r = (j % 2 == 0 ? plus_ : minus_)[0].adjoint();
            apply_two_site(w, r, j, L_, L_ + 1);
        }
        for (Eigen::Index s = 0; s < dim; ++s) out[s] += w[2 * s + a];
    }
    return out;
}

Operator transfer_matrix(const TransferMatrixSpec& spec) {
    if (spec.L > kMaxDenseSites) throw CapacityError("dense transfer matrix refused beyond L=12");
    const TransferMatrix t(spec.params, spec.L, spec.x, 0);
    const Eigen::Index dim = Eigen::Index(1) << spec.L;
    Operator op{CMatrix(dim, dim), "transfer matrix"};
    for (Eigen::Index s = 0; s < dim; ++s) {
        CVector e = CVector::Zero(dim);
        e[s] = 1.0;
        op.entries.col(s) = t.apply(e);
    }
    return op;
}

BrickworkCircuit integrable_circuit(const RMatrixParams& p, int L) {
    return BrickworkCircuit::homogeneous(L, Boundary::periodic, gate_from_r(p));
}

}  // namespace brickwall
