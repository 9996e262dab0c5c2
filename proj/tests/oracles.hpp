#pragma once

// Independent reference implementations used only by the tests. None of them
// call into the library code they check.

#include <cstdint>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "brickwall/core.hpp"

namespace oracle {

using brickwall::CMatrix;
using brickwall::CVector;
using brickwall::cplx;
using brickwall::Mat4;

inline Mat4 expm(const Mat4& a) { return a.exp(); }
inline CMatrix expm(const CMatrix& a) { return a.exp(); }

inline Mat4 pauli_kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

// Basis |0>, |1> with |1> = up, so z = diag(-1, +1).
inline Eigen::Matrix2cd sx() { return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Eigen::Matrix2cd sy() {
    return (Eigen::Matrix2cd() << 0, cplx(0, 1), cplx(0, -1), 0).finished();
}
inline Eigen::Matrix2cd sz() { return (Eigen::Matrix2cd() << -1, 0, 0, 1).finished(); }
inline Eigen::Matrix2cd id2() { return Eigen::Matrix2cd::Identity(); }

// Operator acting on arbitrary sites of an L-site register; sites[0] is the most
// significant factor of op. Site i is bit L-1-i.
inline CMatrix embed(const CMatrix& op, const std::vector<int>& sites, int L) {
    const int k = static_cast<int>(sites.size());
    const std::uint64_t dim = 1ull << L;
    CMatrix out = CMatrix::Zero(dim, dim);
    auto local = [&](std::uint64_t s) {
        std::uint64_t v = 0;
        for (int i = 0; i < k; ++i) v = (v << 1) | ((s >> (L - 1 - sites[i])) & 1u);
        return v;
    };
    std::uint64_t mask = 0;
    for (int s : sites) mask |= 1ull << (L - 1 - s);
    for (std::uint64_t col = 0; col < dim; ++col) {
        const std::uint64_t lc = local(col);
        for (std::uint64_t lr = 0; lr < (1ull << k); ++lr) {
            const cplx v = op(lr, lc);
            if (v == 0.0) continue;
            std::uint64_t row = col & ~mask;
            for (int i = 0; i < k; ++i)
                if ((lr >> (k - 1 - i)) & 1u) row |= 1ull << (L - 1 - sites[i]);
            out(row, col) += v;
        }
    }
    return out;
}

// Odd layer (0,1),(2,3),... first, then (1,2),(3,4),... and (L-1,0) on a ring.
inline CMatrix brickwork(int L, bool periodic, const std::vector<Mat4>& odd, const std::vector<Mat4>& even) {
    CMatrix o = CMatrix::Identity(1 << L, 1 << L), e = o;
    for (int j = 0; j < L / 2; ++j) o = embed(odd[j], {2 * j, 2 * j + 1}, L) * o;
    const int ne = periodic ? L / 2 : L / 2 - 1;
    for (int j = 0; j < ne; ++j) e = embed(even[j], {2 * j + 1, (2 * j + 2) % L}, L) * e;
    return e * o;
}

inline CMatrix homogeneous(int L, bool periodic, const Mat4& g) {
    return brickwork(L, periodic, std::vector<Mat4>(L / 2, g), std::vector<Mat4>(L / 2, g));
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Haar unitary from the QR decomposition of a complex Ginibre matrix.
inline CMatrix cue(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

// COE member U^T U with U from the CUE.
inline CMatrix coe(int n, std::mt19937_64& rng) {
    const CMatrix u = cue(n, rng);
    return u.transpose() * u;
}

inline std::vector<double> phases_of(const CMatrix& u) {
    Eigen::ComplexEigenSolver<CMatrix> es(u, false);
    std::vector<double> p;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double a = std::arg(es.eigenvalues()(i));
        if (a < 0) a += 2 * brickwall::pi;
        p.push_back(a);
    }
    std::sort(p.begin(), p.end());
    return p;
}

// Mean of min/max of consecutive cyclic spacings, computed directly.
inline double r_tilde(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const std::size_t n = p.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s[i] = p[i + 1] - p[i];
    s[n - 1] = p[0] + 2 * brickwall::pi - p[n - 1];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = s[i], b = s[(i + 1) % n];
        acc += std::min(a, b) / std::max(a, b);
    }
    return acc / n;
}

}  // namespace oracle
