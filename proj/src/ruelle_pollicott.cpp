#include "brickwall/ruelle_pollicott.hpp"

#include <algorithm>
#include <cmath>

#include "brickwall/operators.hpp"
#include "brickwall/parallel.hpp"
#include "brickwall/pauli.hpp"
#include "brickwall/fit.hpp"

namespace brickwall {

namespace {

constexpr int kLetterCharge[4] = {0, 0, 1, -1};

std::uint64_t lookup_key(int parity, std::uint32_t code) {
    return (static_cast<std::uint64_t>(parity) << 32) | code;
}

void check_range(int r) {
    if (r < 1) throw ParameterError("operator range must be at least 1");
    if (r > kMaxLocalRange) throw CapacityError("operator range beyond 6 is not supported");
}

void append_parity(LocalOperatorSpace& s, int parity) {
    const std::uint32_t n = 1u << (2 * s.r);
    for (std::uint32_t code = 0; code < n; ++code) {
        if (letter_at(code, 0) == 0 || string_charge(code, s.r) != s.charge) continue;
        s.lookup.emplace(lookup_key(parity, code), s.elements.size());
        s.elements.push_back({parity, code});
    }
}

// One-step light cone [a, b] of the sites [a, b].
std::pair<int, int> light_cone(int a, int b) {
    auto odd = [](int s) { return ((s % 2) + 2) % 2 == 1; };
    // even-layer bonds start on odd sites
    if (!odd(a)) --a;
    if (odd(b)) ++b;
    // odd-layer bonds start on even sites
    if (odd(a)) --a;
    if (!odd(b)) ++b;
    return {a, b};
}

bool is_mc_gate(const Mat4& g) {
    return TwoQubitGate::from_matrix(g).mc_violation() < 1e-12;
}

}  // namespace

int string_charge(std::uint32_t code, int r) {
    int q = 0;
    for (int i = 0; i < r; ++i) q += kLetterCharge[letter_at(code, i)];
    return q;
}

int string_extent(std::uint32_t code, int r) {
    for (int i = r - 1; i >= 0; --i) {
        if (letter_at(code, i) != 0) return i + 1;
    }
    return 0;
}

std::string string_label(const LocalString& s, int r) {
    static constexpr char names[4] = {'1', 'z', '+', '-'};
    std::string out = s.parity == 0 ? "e:" : "o:";
    for (int i = 0; i < r; ++i) out += names[letter_at(s.code, i)];
    return out;
}

std::optional<std::size_t> LocalOperatorSpace::index_of(int p, std::uint32_t code) const {
    auto it = lookup.find(lookup_key(p, code));
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

LocalOperatorSpace build_basis(int r, int parity, int charge) {
    check_range(r);
    if (parity != 0 && parity != 1) throw ParameterError("parity must be 0 or 1");
    LocalOperatorSpace s;
    s.r = r;
    s.parity = parity;
    s.charge = charge;
    append_parity(s, parity);
    return s;
}

LocalOperatorSpace build_basis(int r, int charge) {
    check_range(r);
    LocalOperatorSpace s;
    s.r = r;
    s.charge = charge;
    append_parity(s, 0);
    append_parity(s, 1);
    return s;
}

std::vector<int> charge_blocks(int r) {
    check_range(r);
    std::vector<int> out;
    for (int q = -r; q <= r; ++q) out.push_back(q);
    return out;
}

OperatorWindow light_cone_window(int r, int parity) {
    check_range(r);
    const auto [a, b] = light_cone(parity, parity + r - 1);
    return {a, b - a + 1};
}

CMatrix embed_string(const LocalString& q, int r, const OperatorWindow& window) {
    const int offset = q.parity - window.start;
    const int extent = string_extent(q.code, r);
    if (offset < 0 || offset + extent > window.size) throw ParameterError("string does not fit into the window");
    const int W = window.size;
    if (W > kMaxDenseSites) throw CapacityError("window too large for a dense operator");
    const Eigen::Index n = Eigen::Index(1) << W;
    CMatrix m = CMatrix::Zero(n, n);
    // a product string has a single nonzero coefficient
    std::uint64_t row = 0, col = 0;
    for (int w = 0; w < W; ++w) {
        const int rel = w - offset;
        const int letter = (rel >= 0 && rel < r) ? letter_at(q.code, rel) : 0;
        int rb, cb;
        bits_from_letter(letter, rb, cb);
        row |= static_cast<std::uint64_t>(rb) << (W - 1 - w);
        col |= static_cast<std::uint64_t>(cb) << (W - 1 - w);
    }
    m(row, col) = 1.0;
    from_local_basis(m, W);
    return m;
}

CMatrix heisenberg_step(const CMatrix& op, const Mat4& gate, const OperatorWindow& window) {
    const int W = window.size;
    if (W < 2 || W > kMaxDenseSites) throw CapacityError("window size out of range");
    if (op.rows() != (Eigen::Index(1) << W) || op.cols() != op.rows())
        throw ParameterError("operator does not match the window");

    CMatrix coeffs = op;
    to_local_basis(coeffs, W);
    std::uint64_t mask = 0;
    const double scale = std::max(1.0, max_abs(coeffs));
    for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
        for (Eigen::Index r = 0; r < coeffs.rows(); ++r) {
            if (std::abs(coeffs(r, c)) > 1e-13 * scale) mask |= static_cast<std::uint64_t>(r | c);
        }
    }
    if (mask != 0) {
        int first = 0, last = W - 1;
        while (!((mask >> (W - 1 - first)) & 1u)) ++first;
        while (!((mask >> (W - 1 - last)) & 1u)) --last;
        const auto [a, b] = light_cone(window.start + first, window.start + last);
        if (a < window.start || b > window.start + W - 1)
            throw ParameterError("window misses the light cone of the operator");
    }

    Operator out{op, ""};
    const TwoQubitGate gd = TwoQubitGate::from_matrix(gate.adjoint());
    for (int layer_parity : {1, 0}) {
        for (int w = 0; w + 1 < W; ++w) {
            const int g = window.start + w;
            if (((g % 2) + 2) % 2 != layer_parity) continue;
            conjugate_gate(out, gd, {w, w + 1}, W, Boundary::open);
        }
    }
    return out.entries;
}

Eigen::Matrix<cplx, 16, 16> gate_superoperator(const Mat4& gate) {
    Eigen::Matrix<cplx, 16, 16> s;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            int ra, ca, rb, cb;
            bits_from_letter(a, ra, ca);
            bits_from_letter(b, rb, cb);
            CMatrix m = CMatrix::Zero(4, 4);
            m((ra << 1) | rb, (ca << 1) | cb) = 1.0;
            from_local_basis(m, 2);
            m = gate.adjoint() * m * gate;
            to_local_basis(m, 2);
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    const int a2 = letter_from_bits(r >> 1, c >> 1);
                    const int b2 = letter_from_bits(r & 1, c & 1);
                    s((a2 << 2) | b2, (a << 2) | b) = m(r, c);
                }
            }
        }
    }
    return s;
}

RawPropagator raw_propagator(const TwoQubitGate& gate, int r, int charge, int threads) {
    check_range(r);
    if (!is_mc_gate(gate.matrix)) throw ParameterError("the propagator needs a magnetization-conserving gate");
    if (gate.unitarity_residual() > 1e-10) throw ParameterError("gate is not unitary");
    const Eigen::Matrix<cplx, 16, 16> S = gate_superoperator(gate.matrix);

    RawPropagator raw;
    raw.r = r;
    raw.space = build_basis(r, charge);
    const auto& elements = raw.space.elements;
    const std::size_t n = elements.size();
    std::vector<int> extent(n);
    for (std::size_t i = 0; i < n; ++i) extent[i] = string_extent(elements[i].code, r);
    raw.columns.resize(n);

    parallel_for(n, threads, [&](std::size_t col) {
        const LocalString& q = elements[col];
        const OperatorWindow win = light_cone_window(r, q.parity);
        const int W = win.size;
        const int half = W / 2;
        std::vector<int> in(W, 0);
        for (int i = 0; i < r; ++i) in[q.parity - win.start + i] = letter_at(q.code, i);

        // even-layer bond (2j-1, 2j) as a 4x4 map on the intermediate letters
        std::vector<Mat4> ebond(half);
        for (int j = 1; j < half; ++j) {
            const int w = 2 * j - 1;
            const int from = (in[w] << 2) | in[w + 1];
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) ebond[j](x, y) = S((x << 2) | y, from);
        }

        std::vector<int> out(W);
        std::vector<RawElement>& result = raw.columns[col];
        for (std::size_t row = 0; row < n; ++row) {
            const LocalString& t = elements[row];
            for (int first = ((t.parity - win.start) % 2 + 2) % 2; first + extent[row] <= W; first += 2) {
                std::fill(out.begin(), out.end(), 0);
                for (int i = 0; i < extent[row]; ++i) out[first + i] = letter_at(t.code, i);
                // contract the chain of odd-layer bonds (2j, 2j+1)
                Eigen::Vector4cd v;
                for (int x1 = 0; x1 < 4; ++x1) v[x1] = S((out[0] << 2) | out[1], x1);
                for (int j = 1; j < half && v.squaredNorm() != 0.0; ++j) {
                    const int o = (out[2 * j] << 2) | out[2 * j + 1];
                    Eigen::Vector4cd u = Eigen::Vector4cd::Zero();
                    const Eigen::RowVector4cd ve = v.transpose() * ebond[j];
                    for (int x2 = 0; x2 < 4; ++x2) {
                        if (ve[x2] == 0.0) continue;
                        for (int x3 = 0; x3 < 4; ++x3) u[x3] += ve[x2] * S(o, (x2 << 2) | x3);
                    }
                    v = u;
                }
                const cplx value = v[0];
                if (std::abs(value) > 1e-15) {
                    const int shift = (win.start + first - t.parity) / 2;
                    result.push_back({static_cast<std::uint32_t>(row), shift, value});
                }
            }
        }
    });
    return raw;
}

CMatrix assemble_propagator(const RawPropagator& raw, double k) {
    const auto n = static_cast<Eigen::Index>(raw.space.dim());
    CMatrix t = CMatrix::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        for (const RawElement& e : raw.columns[col]) {
            t(e.row, col) += std::exp(cplx(0.0, -k * e.shift)) * e.value;
        }
    }
    return t;
}

TruncatedPropagator truncated_propagator(const TwoQubitGate& gate, int r, double k, std::optional<int> charge,
                                         int threads) {
    check_range(r);
    TruncatedPropagator tp;
    tp.k = k;
    tp.r = r;
    std::vector<int> charges = charge ? std::vector<int>{*charge} : charge_blocks(r);
    for (int q : charges) {
        if (std::abs(q) > r) throw ParameterError("charge block exceeds the range");
        RawPropagator raw = raw_propagator(gate, r, q, threads);
        tp.blocks.push_back(assemble_propagator(raw, k));
        tp.spaces.push_back(std::move(raw.space));
    }
    return tp;
}

namespace {

// Right and left null vectors of (t - lambda) of the given count.
void cluster_vectors(const CMatrix& t, cplx lambda, int count, CMatrix& right, CMatrix& left) {
    const Eigen::Index n = t.rows();
    const CMatrix shifted = t - lambda * CMatrix::Identity(n, n);
    Eigen::BDCSVD<CMatrix> svd(shifted, Eigen::ComputeThinU | Eigen::ComputeThinV);
    right = svd.matrixV().rightCols(count);
    left = svd.matrixU().rightCols(count);
}

}  // namespace

RpSpectrum rp_spectrum(const TruncatedPropagator& tp, double keep_eps, double unit_tol) {
    RpSpectrum out;
    out.k = tp.k;
    out.r = tp.r;
    out.unit_tol = unit_tol;
    double lambda2_abs = -1.0;
    for (std::size_t b = 0; b < tp.blocks.size(); ++b) {
        const CMatrix& t = tp.blocks[b];
        std::vector<cplx> ev;
        if (t.rows() > 0) {
            Eigen::ComplexEigenSolver<CMatrix> solver(t, false);
            if (solver.info() != Eigen::Success) throw Error("eigenvalue solver failed");
            ev.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + t.rows());
        }
        std::sort(ev.begin(), ev.end(), [](cplx a, cplx c) { return std::abs(a) > std::abs(c); });

        // clusters of kept eigenvalues, each resolved by one SVD
        std::vector<std::pair<cplx, int>> clusters;
        for (cplx l : ev) {
            out.spectral_radius = std::max(out.spectral_radius, std::abs(l));
            const bool unit = std::abs(l - 1.0) < unit_tol;
            if (unit) ++out.unit_multiplicity;
            if (!unit && std::abs(l) > lambda2_abs) {
                lambda2_abs = std::abs(l);
                out.lambda2 = l;
                out.lambda2_charge = tp.charge(b);
            }
            if (!unit && std::abs(l) <= 1.0 - keep_eps) continue;
            const cplx centre = unit ? cplx(1.0) : l;
            auto it = std::find_if(clusters.begin(), clusters.end(),
                                   [&](const auto& c) { return std::abs(c.first - centre) < unit_tol; });
            if (it == clusters.end())
                clusters.push_back({centre, 1});
            else
                ++it->second;
        }
        for (const auto& [lambda, count] : clusters) {
            CMatrix right, left;
            cluster_vectors(t, lambda, count, right, left);
            for (int i = 0; i < count; ++i)
                out.kept.push_back({lambda, tp.charge(b), right.col(i), left.col(i)});
        }
        out.charges.push_back(tp.charge(b));
        out.eigenvalues.push_back(std::move(ev));
    }
    return out;
}

CMatrix unit_eigenspace(const RpSpectrum& spectrum, int charge) {
    std::vector<const CVector*> cols;
    for (const auto& p : spectrum.kept) {
        if (p.charge == charge && std::abs(p.value - 1.0) < spectrum.unit_tol) cols.push_back(&p.right);
    }
    if (cols.empty()) return CMatrix();
    CMatrix m(cols.front()->size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) m.col(i) = *cols[i];
    Eigen::HouseholderQR<CMatrix> qr(m);
    return qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
}

std::vector<CVector> known_charge_vectors(const RMatrixParams& p, const LocalOperatorSpace& space) {
    if (space.charge != 0 || space.parity || space.r < 3)
        throw ParameterError("known charges live in the charge-0 space of both parities with r >= 3");
    const auto n = static_cast<Eigen::Index>(space.dim());
    std::vector<CVector> out;

    CVector mag = CVector::Zero(n);
    for (int parity : {0, 1}) mag[*space.index_of(parity, 1u)] = 1.0;
    out.push_back(mag);

    for (int sign : {1, -1}) {
        CMatrix d = charge_q1_density(p, sign);
        to_local_basis(d, 3);
        const int start = charge_q1_density_start(sign);
        CVector v = CVector::Zero(n);
        for (int row = 0; row < 8; ++row) {
            for (int col = 0; col < 8; ++col) {
                if (d(row, col) == 0.0) continue;
                int letters[3];
                for (int i = 0; i < 3; ++i) letters[i] = letter_from_bits((row >> (2 - i)) & 1, (col >> (2 - i)) & 1);
                int first = 0;
                while (first < 3 && letters[first] == 0) ++first;
                if (first == 3) continue;  // identity part
                std::uint32_t code = 0;
                for (int i = first; i < 3; ++i) code |= static_cast<std::uint32_t>(letters[i]) << (2 * (i - first));
                const auto idx = space.index_of((start + first) % 2, code);
                if (!idx) throw StructureError("charge density outside the operator space");
                v[*idx] += d(row, col);
            }
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> principal_angles(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) throw ParameterError("subspaces live in different spaces");
    auto orthonormal = [](const CMatrix& m) -> CMatrix {
        Eigen::HouseholderQR<CMatrix> qr(m);
        return qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
    };
    CMatrix qa = orthonormal(a.cols() >= b.cols() ? a : b);
    CMatrix qb = orthonormal(a.cols() >= b.cols() ? b : a);
    // sines of the angles from the part of qb outside span(qa)
    const CMatrix rest = qb - qa * (qa.adjoint() * qb);
    Eigen::JacobiSVD<CMatrix> svd(rest);
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        angles.push_back(std::asin(std::min(1.0, svd.singularValues()[i])));
    std::sort(angles.begin(), angles.end());
    return angles;
}

std::string to_string(GapModel m) { return m == GapModel::exponential ? "exponential" : "linear"; }

GapFit gap_scaling(const TwoQubitGate& gate, double k, const std::vector<int>& r_list, std::optional<GapModel> model,
                   int threads) {
    std::vector<int> rs = r_list;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    if (rs.size() < 2) throw ParameterError("gap scaling needs at least two distinct ranges");
    for (int r : rs) {
        if (r > kMaxLocalRange) throw CapacityError("operator range beyond 6 is not supported");
        if (r < 3) throw ParameterError("gap scaling uses ranges 3..6");
    }
    const double kw = wrap_symmetric(k);
    if (!model) {
        if (std::abs(kw) < 1e-12)
            model = GapModel::exponential;
        else if (std::abs(std::abs(kw) - pi) < 1e-12)
            model = GapModel::linear;
        else
            throw ParameterError("choose a fit model for k other than 0 and pi");
    }

    GapFit fit;
    fit.k = k;
    fit.model = *model;
    std::vector<double> x, y;
    for (int r : rs) {
        const RpSpectrum s = rp_spectrum(truncated_propagator(gate, r, k, std::nullopt, threads));
        if (!s.lambda2) throw DegenerateError("every eigenvalue is 1; fit refused");
        GapPoint pt{r, *s.lambda2, s.lambda2_charge, 1.0 - std::abs(*s.lambda2), s.unit_multiplicity};
        if (pt.gap < 1e-10) throw DegenerateError("gap vanishes at r=" + std::to_string(r) + "; fit refused");
        fit.points.push_back(pt);
        x.push_back(r);
        y.push_back(fit.model == GapModel::exponential ? std::log(pt.gap) : pt.gap);
    }
    const LinearFit lf = linear_fit(x, y);
    fit.sse = lf.sse;
    if (fit.model == GapModel::exponential) {
        fit.rate = -lf.slope;
        fit.c = std::exp(lf.intercept);
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) m += y[i] + fit.pinned_rate * x[i];
        fit.c_pinned = std::exp(m / x.size());
    } else {
        fit.intercept = lf.intercept;
        fit.slope = lf.slope;
    }
    return fit;
}

}  // namespace brickwall
