#include "brickwall/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "brickwall/parallel.hpp"

namespace brickwall {

std::string SectorKey::label() const {
    std::string s = "L=" + std::to_string(L) + "," + to_string(boundary) + ",m=" + std::to_string(m);
    if (k) s += ",k=" + std::to_string(*k);
    if (reflection != 0) s += reflection > 0 ? ",P=+1" : ",P=-1";
    if (spacetime_block >= 0) s += ",K=" + std::to_string(spacetime_block);
    return s;
}

std::vector<double> scaled_spacings(const std::vector<double>& phases) {
    const std::size_t n = phases.size();
    std::vector<double> s;
    if (n < 2) return s;
    s.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(phases[i + 1] - phases[i]);
    s.push_back(phases.front() + 2.0 * pi - phases.back());
    const double scale = static_cast<double>(n) / (2.0 * pi);
    for (auto& x : s) x *= scale;
    return s;
}

namespace {

std::pair<double, std::size_t> ratio_sum(const std::vector<double>& phases) {
    const auto s = scaled_spacings(phases);
    double sum = 0.0;
    std::size_t count = 0;
    if (s.size() < 3) return {0.0, 0};
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = s[i], b = s[(i + 1) % s.size()];
        const double hi = std::max(a, b);
        if (hi <= 0.0) continue;
        sum += std::min(a, b) / hi;
        ++count;
    }
    return {sum, count};
}

SpectrumResult finish(SectorKey key, std::vector<double> phases, double residual) {
    for (auto& p : phases) p = wrap_angle(p);
    std::sort(phases.begin(), phases.end());
    SpectrumResult r;
    r.key = std::move(key);
    r.spacings = scaled_spacings(phases);
    r.r_tilde = brickwall::r_tilde(phases);
    r.eigenphases = std::move(phases);
    r.unitarity_residual = residual;
    return r;
}

bool homogeneous_periodic(const BrickworkCircuit& c) {
    if (c.boundary != Boundary::periodic || !c.is_standard()) return false;
    const Mat4& g0 = c.layers[0].front().gate.matrix;
    for (const auto& layer : c.layers)
        for (const auto& g : layer)
            if (g.gate.matrix != g0 || g.second != (g.first + 1) % c.L) return false;
    return true;
}

}  // namespace

double r_tilde(const std::vector<double>& phases) {
    const auto [sum, count] = ratio_sum(phases);
    return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

double pooled_r_tilde(const std::vector<SpectrumResult>& results) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : results) {
        const auto [s, c] = ratio_sum(r.eigenphases);
        sum += s;
        count += c;
    }
    return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

std::vector<SpectrumResult> sector_spectrum(const BrickworkCircuit& circuit, int m, const SpectrumOptions& opt) {
    const int L = circuit.L;
    if (L > kMaxSectorSites) throw CapacityError("sector spectra refused beyond L=14");
    if (opt.k && circuit.boundary != Boundary::periodic)
        throw ParameterError("momentum resolution requires periodic boundaries");
    if (opt.spacetime && !homogeneous_periodic(circuit))
        throw ParameterError("space-time resolution requires a homogeneous periodic brickwork");

    const SectorBasis basis = sector_basis(L, m, opt.k);
    const auto d = static_cast<Eigen::Index>(basis.dim());
    SectorKey key{L, circuit.boundary, m, opt.k, 0, -1};
    if (d == 0) return {};
    const CMatrix u = restrict([&](const CVector& v) { return propagator_apply(circuit, v); }, basis).entries;

    // orthonormal column blocks of the sector, each invariant under u
    struct Block {
        CMatrix q;
        int reflection;
    };
    std::vector<Block> blocks{{CMatrix::Identity(d, d), 0}};

    const bool self_conjugate = !opt.k || (2 * *opt.k) % (L / 2) == 0;
    CMatrix p;
    if (opt.resolve_reflection && m == 0 && self_conjugate) {
        try {
            p = restrict([&](const CVector& v) { return apply_reflect_flip(v, L); }, basis).entries;
            if (max_abs(p * u - u * p) < 1e-10) {
                Eigen::SelfAdjointEigenSolver<CMatrix> es((p + p.adjoint()) / 2.0);
                std::vector<Eigen::Index> minus, plus;
                for (Eigen::Index i = 0; i < d; ++i) (es.eigenvalues()[i] < 0 ? minus : plus).push_back(i);
                blocks.clear();
                for (auto [sign, idx] : {std::pair{-1, minus}, std::pair{1, plus}}) {
                    if (idx.empty()) continue;
                    CMatrix q(d, static_cast<Eigen::Index>(idx.size()));
                    for (std::size_t c = 0; c < idx.size(); ++c) q.col(c) = es.eigenvectors().col(idx[c]);
                    blocks.push_back({q, sign});
                }
            } else {
                p.resize(0, 0);
            }
        } catch (const SymmetryError&) {
            p.resize(0, 0);
        }
    }

    std::vector<SpectrumResult> out;
    if (opt.spacetime) {
        const BrickworkCircuit odd{L, circuit.boundary, {circuit.layers[0]}};
        const CMatrix kmat = restrict(
                                 [&](const CVector& v) { return apply_shift(propagator_apply(odd, v), 1, L); }, basis)
                                 .entries;
        const cplx shift = basis.shift_eigenvalue();
        const double sq = max_abs(kmat * kmat - shift * u);
        if (sq > 1e-10) throw SymmetryError("space-time operator does not square to S^2 U", sq);
        if (p.size() != 0 && max_abs(p * kmat - kmat * p) > 1e-10) blocks = {{CMatrix::Identity(d, d), 0}};
        const double half_q = std::arg(shift) / 2.0;
        for (const auto& b : blocks) {
            const CMatrix kb = b.q.adjoint() * kmat * b.q;
            const double residual = max_abs(kb.adjoint() * kb - CMatrix::Identity(kb.rows(), kb.cols()));
            if (residual > opt.unitarity_tol) throw SymmetryError("space-time block is not unitary", residual);
            Eigen::ComplexEigenSolver<CMatrix> es(kb, false);
            std::vector<double> ph[2];
            for (const auto& kappa : es.eigenvalues()) {
                const double phi = wrap_angle(std::arg(kappa) - half_q);
                ph[phi < pi ? 0 : 1].push_back(2.0 * phi);
            }
            for (int s = 0; s < 2; ++s) {
                if (ph[s].empty()) continue;
                SectorKey kk = key;
                kk.reflection = b.reflection;
                kk.spacetime_block = s;
                out.push_back(finish(kk, ph[s], residual));
            }
        }
        return out;
    }

    for (const auto& b : blocks) {
        const CMatrix ub = b.q.adjoint() * u * b.q;
        const double residual = max_abs(ub.adjoint() * ub - CMatrix::Identity(ub.rows(), ub.cols()));
        if (residual > opt.unitarity_tol) throw SymmetryError("sector block is not unitary", residual);
        Eigen::ComplexEigenSolver<CMatrix> es(ub, false);
        std::vector<double> ph;
        for (const auto& l : es.eigenvalues()) ph.push_back(std::arg(l));
        SectorKey kk = key;
        kk.reflection = b.reflection;
        out.push_back(finish(kk, std::move(ph), residual));
    }
    return out;
}

std::vector<SpectrumResult> resolved_spectra(const BrickworkCircuit& circuit, const ResolutionOptions& opt) {
    const int L = circuit.L;
    struct Job {
        int m;
        std::optional<int> k;
    };
    std::vector<Job> jobs;
    for (int m = opt.nonnegative_m ? 0 : -L; m <= L; m += 2) {
        if (!opt.momentum) {
            jobs.push_back({m, std::nullopt});
            continue;
        }
        for (int k = 0; k < L / 2; ++k) {
            // (0, k) and (0, -k) are exchanged by the reflection with spin flip
            if (opt.nonnegative_m && m == 0 && opt.resolve_reflection && k > (L / 2 - k) % (L / 2)) continue;
            jobs.push_back({m, k});
        }
    }
    std::vector<std::vector<SpectrumResult>> parts(jobs.size());
    parallel_for(jobs.size(), opt.threads, [&](std::size_t i) {
        SpectrumOptions so;
        so.k = jobs[i].k;
        so.spacetime = opt.spacetime;
        so.resolve_reflection = opt.resolve_reflection;
        if (sector_basis(L, jobs[i].m, jobs[i].k).dim() < opt.min_levels) return;
        parts[i] = sector_spectrum(circuit, jobs[i].m, so);
    });
    std::vector<SpectrumResult> out;
    for (auto& p : parts)
        for (auto& r : p)
            if (r.eigenphases.size() >= opt.min_levels) out.push_back(std::move(r));
    return out;
}

double poisson_cdf(double s) { return s <= 0 ? 0.0 : 1.0 - std::exp(-s); }
double coe_surmise_cdf(double s) { return s <= 0 ? 0.0 : 1.0 - std::exp(-pi * s * s / 4.0); }
double cue_surmise_cdf(double s) {
    return s <= 0 ? 0.0 : std::erf(2.0 * s / std::sqrt(pi)) - 4.0 * s / pi * std::exp(-4.0 * s * s / pi);
}

std::string SpacingHistogram::closest() const {
    if (tv_poisson <= tv_coe && tv_poisson <= tv_cue) return "poisson";
    return tv_coe <= tv_cue ? "coe" : "cue";
}

SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int bins, double s_max) {
    if (bins < 1 || !(s_max > 0)) throw ParameterError("spacing histogram needs bins >= 1 and s_max > 0");
    SpacingHistogram h;
    h.count = spacings.size();
    h.too_few = h.count < 200;
    const double ds = s_max / bins;
    std::vector<double> counts(bins, 0.0);
    double tail = 0.0;
    for (double s : spacings) {
        if (s >= s_max)
            tail += 1.0;
        else
            counts[static_cast<std::size_t>(std::max(0.0, s) / ds)] += 1.0;
    }
    const double n = std::max<double>(1.0, static_cast<double>(h.count));
    double tv[3] = {0, 0, 0};
    double (*cdf[3])(double) = {poisson_cdf, coe_surmise_cdf, cue_surmise_cdf};
    for (int i = 0; i <= bins; ++i) h.edges.push_back(i * ds);
    for (int i = 0; i < bins; ++i) {
        const double lo = i * ds, hi = lo + ds, c = lo + ds / 2;
        h.density.push_back(counts[i] / (n * ds));
        h.poisson.push_back(std::exp(-c));
        h.coe.push_back(pi / 2 * c * std::exp(-pi * c * c / 4));
        h.cue.push_back(32.0 / (pi * pi) * c * c * std::exp(-4.0 * c * c / pi));
        for (int r = 0; r < 3; ++r) tv[r] += std::abs(counts[i] / n - (cdf[r](hi) - cdf[r](lo)));
    }
    for (int r = 0; r < 3; ++r) tv[r] = 0.5 * (tv[r] + std::abs(tail / n - (1.0 - cdf[r](s_max))));
    h.tv_poisson = tv[0];
    h.tv_coe = tv[1];
    h.tv_cue = tv[2];
    return h;
}

SpacingHistogram spacing_histogram(const std::vector<SpectrumResult>& results, int bins, double s_max) {
    std::vector<double> all;
    for (const auto& r : results) all.insert(all.end(), r.spacings.begin(), r.spacings.end());
    return spacing_histogram(all, bins, s_max);
}

}  // namespace brickwall
