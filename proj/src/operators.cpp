#include "brickwall/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace brickwall {

double wrap_angle(double a) {
    double r = std::fmod(a, 2.0 * pi);
    if (r < 0) r += 2.0 * pi;
    if (r >= 2.0 * pi) r = 0.0;
    return r;
}

double wrap_symmetric(double a) {
    double r = wrap_angle(a);
    if (r > pi) r -= 2.0 * pi;
    return r;
}

std::string to_string(GateSource s) {
    switch (s) {
        case GateSource::hamiltonian: return "hamiltonian";
        case GateSource::haar: return "haar";
        case GateSource::r_matrix: return "r_matrix";
        case GateSource::custom: break;
    }
    return "custom";
}

double TwoQubitGate::mc_violation() const {
    static constexpr int zeros[10][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0},
                                         {3, 0}, {1, 3}, {2, 3}, {3, 1}, {3, 2}};
    double v = 0.0;
    for (const auto& z : zeros) v = std::max(v, std::abs(matrix(z[0], z[1])));
    return v;
}

double TwoQubitGate::unitarity_residual() const {
    return max_abs(matrix.adjoint() * matrix - Mat4::Identity());
}

double Operator::unitarity_residual() const {
    const auto n = entries.rows();
    return max_abs(entries.adjoint() * entries - CMatrix::Identity(n, n));
}

// ---------------------------------------------------------------------------
// Spin configuration maps

std::uint64_t shift_state(std::uint64_t state, int n, int L) {
    n = ((n % L) + L) % L;
    if (n == 0) return state;
    const std::uint64_t mask = (L == 64) ? ~0ull : ((1ull << L) - 1);
    return ((state >> n) | (state << (L - n))) & mask;
}

std::uint64_t reflect_flip_state(std::uint64_t state, int L) {
    std::uint64_t out = 0;
    for (int i = 0; i < L; ++i)
        if (!((state >> i) & 1u)) out |= 1ull << (L - 1 - i);
    return out;
}

CVector apply_shift(const CVector& psi, int n, int L) {
    CVector out(psi.size());
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(psi.size()); ++s)
        out[static_cast<Eigen::Index>(shift_state(s, n, L))] = psi[static_cast<Eigen::Index>(s)];
    return out;
}

CVector apply_reflect_flip(const CVector& psi, int L) {
    CVector out(psi.size());
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(psi.size()); ++s)
        out[static_cast<Eigen::Index>(reflect_flip_state(s, L))] = psi[static_cast<Eigen::Index>(s)];
    return out;
}

// ---------------------------------------------------------------------------
// Sector bases

cplx SectorBasis::shift_eigenvalue() const {
    if (!momentum) return 1.0;
    return std::exp(I * (4.0 * pi * *momentum / L));
}

CVector SectorBasis::embed(const CVector& coeffs) const {
    CVector out = CVector::Zero(Eigen::Index(1) << L);
    for (std::size_t b = 0; b < dim(); ++b)
        for (const auto& [s, amp] : components[b]) out[static_cast<Eigen::Index>(s)] += amp * coeffs[b];
    return out;
}

CVector SectorBasis::project(const CVector& full) const {
    CVector out(dim());
    for (std::size_t b = 0; b < dim(); ++b) {
        cplx acc = 0.0;
        for (const auto& [s, amp] : components[b]) acc += std::conj(amp) * full[static_cast<Eigen::Index>(s)];
        out[b] = acc;
    }
    return out;
}

CMatrix SectorBasis::isometry() const {
    CMatrix v = CMatrix::Zero(Eigen::Index(1) << L, dim());
    for (std::size_t b = 0; b < dim(); ++b)
        for (const auto& [s, amp] : components[b]) v(static_cast<Eigen::Index>(s), b) = amp;
    return v;
}

SectorBasis sector_basis(int L, int m, std::optional<int> k) {
    if (L < 2 || L > kMaxMatrixFreeSites || L % 2 != 0)
        throw ParameterError("sector_basis: L must be even with 2 <= L <= 20");
    if ((L + m) % 2 != 0 || m < -L || m > L)
        throw ParameterError("sector_basis: magnetization " + std::to_string(m) + " impossible for L=" +
                             std::to_string(L));
    if (k && (*k < 0 || *k >= L / 2))
        throw ParameterError("sector_basis: momentum index must lie in [0, L/2)");

    SectorBasis basis;
    basis.L = L;
    basis.magnetization = m;
    basis.momentum = k;
    const int n_up = (L + m) / 2;
    const std::uint64_t total = 1ull << L;
    const double kappa = k ? 4.0 * pi * *k / L : 0.0;
    for (std::uint64_t s = 0; s < total; ++s) {
        if (__builtin_popcountll(s) != n_up) continue;
        if (!k) {
            basis.representatives.push_back(s);
            basis.components.push_back({{s, 1.0}});
            continue;
        }
        std::vector<std::uint64_t> orbit{s};
        bool is_rep = true;
        for (std::uint64_t t = shift_state(s, 2, L); t != s; t = shift_state(t, 2, L)) {
            if (t < s) {
                is_rep = false;
                break;
            }
            orbit.push_back(t);
        }
        if (!is_rep) continue;
        const int R = static_cast<int>(orbit.size());
        if ((*k * R) % (L / 2) != 0) continue;
        std::vector<std::pair<std::uint64_t, cplx>> comp;
        const double norm = 1.0 / std::sqrt(static_cast<double>(R));
        for (int j = 0; j < R; ++j) comp.emplace_back(orbit[j], norm * std::exp(-I * (kappa * j)));
        basis.representatives.push_back(s);
        basis.components.push_back(std::move(comp));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Circuits

std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

Boundary parse_boundary(const std::string& s) {
    if (s == "open" || s == "obc") return Boundary::open;
    if (s == "periodic" || s == "pbc") return Boundary::periodic;
    throw ParameterError("unknown boundary '" + s + "' (expected open or periodic)");
}

void check_adjacent(int first, int second, int L, Boundary boundary) {
    if (first < 0 || second < 0 || first >= L || second >= L || first == second)
        throw ParameterError("gate sites out of range");
    const int d = std::abs(first - second);
    if (d == 1) return;
    if (boundary == Boundary::periodic && d == L - 1) return;
    throw ParameterError("gate sites (" + std::to_string(first) + "," + std::to_string(second) +
                         ") are not adjacent");
}

BrickworkCircuit BrickworkCircuit::brickwork(int L, Boundary boundary, const std::vector<TwoQubitGate>& odd,
                                             const std::vector<TwoQubitGate>& even) {
    if (L < 2 || L % 2 != 0) throw ParameterError("brickwork circuits need an even number of sites");
    if (boundary == Boundary::periodic && L < 4)
        throw ParameterError("periodic brickwork circuits need L >= 4");
    BrickworkCircuit c;
    c.L = L;
    c.boundary = boundary;
    if (static_cast<int>(odd.size()) != L / 2 || static_cast<int>(even.size()) != c.even_layer_size())
        throw ParameterError("brickwork: wrong number of gates per layer");
    Layer lo, le;
    for (int j = 0; j < L / 2; ++j) lo.push_back({2 * j, 2 * j + 1, odd[j]});
    for (int j = 0; j < c.even_layer_size(); ++j) le.push_back({2 * j + 1, (2 * j + 2) % L, even[j]});
    c.layers = {std::move(lo), std::move(le)};
    return c;
}

BrickworkCircuit BrickworkCircuit::homogeneous(int L, Boundary boundary, const TwoQubitGate& gate) {
    const int n_even = boundary == Boundary::periodic ? L / 2 : L / 2 - 1;
    return brickwork(L, boundary, std::vector<TwoQubitGate>(L / 2, gate),
                     std::vector<TwoQubitGate>(std::max(n_even, 0), gate));
}

BrickworkCircuit BrickworkCircuit::two_gate(int L, Boundary boundary, const TwoQubitGate& gate_a,
                                            const TwoQubitGate& gate_b) {
    const int n_even = boundary == Boundary::periodic ? L / 2 : L / 2 - 1;
    return brickwork(L, boundary, std::vector<TwoQubitGate>(L / 2, gate_a),
                     std::vector<TwoQubitGate>(std::max(n_even, 0), gate_b));
}

namespace {

// Applies g to sites (a, b) of each length-2^n vector stored contiguously at data.
void kernel(cplx* data, const Mat4& g, int a, int b, int n) {
    const std::uint64_t ba = 1ull << (n - 1 - a);
    const std::uint64_t bb = 1ull << (n - 1 - b);
    const std::uint64_t lo = std::min(ba, bb), hi = std::max(ba, bb);
    const std::uint64_t quarter = 1ull << (n - 2);
    cplx m[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = g(i, j);
    for (std::uint64_t t = 0; t < quarter; ++t) {
        // insert zero bits at positions lo and hi
        std::uint64_t s = t;
        s = ((s & ~(lo - 1)) << 1) | (s & (lo - 1));
        s = ((s & ~(hi - 1)) << 1) | (s & (hi - 1));
        const std::uint64_t idx[4] = {s, s | bb, s | ba, s | ba | bb};
        const cplx v[4] = {data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]};
        for (int i = 0; i < 4; ++i) data[idx[i]] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    }
}

const Mat4& mat(const PlacedGate& p) { return p.gate.matrix; }

}  // namespace

void apply_two_site(CVector& psi, const Mat4& g, int a, int b, int n) {
    if (psi.size() != (Eigen::Index(1) << n)) throw ParameterError("state dimension does not match 2^L");
    kernel(psi.data(), g, a, b, n);
}

void apply_two_site_columns(CMatrix& m, const Mat4& g, int a, int b, int n) {
    if (m.rows() != (Eigen::Index(1) << n)) throw ParameterError("operator dimension does not match 2^L");
    for (Eigen::Index c = 0; c < m.cols(); ++c) kernel(m.col(c).data(), g, a, b, n);
}

void apply_gate(CVector& state, const TwoQubitGate& gate, std::pair<int, int> sites, int L, Boundary boundary) {
    check_adjacent(sites.first, sites.second, L, boundary);
    apply_two_site(state, gate.matrix, sites.first, sites.second, L);
}

void apply_gate(Operator& op, const TwoQubitGate& gate, std::pair<int, int> sites, int L, Boundary boundary) {
    check_adjacent(sites.first, sites.second, L, boundary);
    apply_two_site_columns(op.entries, gate.matrix, sites.first, sites.second, L);
}

void conjugate_gate(Operator& op, const TwoQubitGate& gate, std::pair<int, int> sites, int L,
                    Boundary boundary) {
    check_adjacent(sites.first, sites.second, L, boundary);
    apply_two_site_columns(op.entries, gate.matrix, sites.first, sites.second, L);
    CMatrix t = op.entries.adjoint();
    apply_two_site_columns(t, gate.matrix, sites.first, sites.second, L);
    op.entries = t.adjoint();
}

CMatrix embed_two_site(const Mat4& g, int a, int b, int L) {
    if (L > kMaxDenseSites) throw CapacityError("dense embedding refused beyond L=12");
    const Eigen::Index n = Eigen::Index(1) << L;
    CMatrix m = CMatrix::Identity(n, n);
    apply_two_site_columns(m, g, a, b, L);
    return m;
}

CMatrix embed_local(const CMatrix& op, int start, int L) {
    if (L > kMaxDenseSites) throw CapacityError("dense embedding refused beyond L=12");
    const int k = static_cast<int>(std::lround(std::log2(static_cast<double>(op.rows()))));
    const std::uint64_t n = 1ull << L;
    CMatrix out = CMatrix::Zero(n, n);
    std::vector<int> sites(k);
    for (int i = 0; i < k; ++i) sites[i] = (start + i) % L;
    std::uint64_t local_mask = 0;
    for (int s : sites) local_mask |= 1ull << (L - 1 - s);
    auto local_index = [&](std::uint64_t s) {
        std::uint64_t idx = 0;
        for (int i = 0; i < k; ++i) idx = (idx << 1) | ((s >> (L - 1 - sites[i])) & 1u);
        return idx;
    };
    auto place = [&](std::uint64_t base, std::uint64_t idx) {
        std::uint64_t s = base;
        for (int i = 0; i < k; ++i)
            if ((idx >> (k - 1 - i)) & 1u) s |= 1ull << (L - 1 - sites[i]);
        return s;
    };
    for (std::uint64_t col = 0; col < n; ++col) {
        const std::uint64_t base = col & ~local_mask;
        const std::uint64_t lc = local_index(col);
        for (std::uint64_t lr = 0; lr < static_cast<std::uint64_t>(op.rows()); ++lr) {
            const cplx v = op(lr, lc);
            if (v != cplx(0.0)) out(place(base, lr), col) = v;
        }
    }
    return out;
}

CVector propagator_apply(const BrickworkCircuit& circuit, const CVector& state) {
    CVector psi = state;
    for (const auto& layer : circuit.layers)
        for (const auto& g : layer) apply_two_site(psi, mat(g), g.first, g.second, circuit.L);
    return psi;
}

CVector propagator_apply_adjoint(const BrickworkCircuit& circuit, const CVector& state) {
    CVector psi = state;
    for (auto l = circuit.layers.rbegin(); l != circuit.layers.rend(); ++l)
        for (auto g = l->rbegin(); g != l->rend(); ++g)
            apply_two_site(psi, mat(*g).adjoint(), g->first, g->second, circuit.L);
    return psi;
}

Operator build_propagator(const BrickworkCircuit& circuit) {
    if (circuit.L > kMaxDenseSites)
        throw CapacityError("dense propagator refused for L=" + std::to_string(circuit.L) +
                            " (limit 12); use propagator_apply");
    const Eigen::Index n = Eigen::Index(1) << circuit.L;
    Operator op{CMatrix::Identity(n, n), "propagator"};
    for (const auto& layer : circuit.layers)
        for (const auto& g : layer) apply_two_site_columns(op.entries, mat(g), g.first, g.second, circuit.L);
    return op;
}

Operator restrict(const Operator& op, const SectorBasis& basis, double tol) {
    if (op.entries.rows() != (Eigen::Index(1) << basis.L))
        throw ParameterError("restrict: operator dimension does not match the basis");
    const CMatrix v = basis.isometry();
    const CMatrix w = op.entries * v;
    CMatrix block = v.adjoint() * w;
    const double leak = max_abs(w - v * block);
    if (leak > tol) throw SymmetryError("restrict: operator does not preserve the sector", leak);
    return {std::move(block), op.label};
}

Operator restrict(const std::function<CVector(const CVector&)>& apply, const SectorBasis& basis, double tol) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    CMatrix block(d, d);
    double leak = 0.0;
    for (Eigen::Index b = 0; b < d; ++b) {
        CVector e = CVector::Zero(d);
        e[b] = 1.0;
        const CVector w = apply(basis.embed(e));
        block.col(b) = basis.project(w);
        leak = std::max(leak, (w - basis.embed(block.col(b))).cwiseAbs().maxCoeff());
    }
    if (leak > tol) throw SymmetryError("restrict: operator does not preserve the sector", leak);
    return {std::move(block), "sector block"};
}

RVector sigma_z_diagonal(int site, int L) {
    RVector d(Eigen::Index(1) << L);
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(d.size()); ++s)
        d[static_cast<Eigen::Index>(s)] = site_bit(s, site, L) ? 1.0 : -1.0;
    return d;
}

RVector total_magnetization_diagonal(int L) {
    RVector d(Eigen::Index(1) << L);
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(d.size()); ++s)
        d[static_cast<Eigen::Index>(s)] = magnetization_of(s, L);
    return d;
}

Operator total_magnetization(int L) {
    if (L > kMaxDenseSites) throw CapacityError("dense magnetization operator refused beyond L=12");
    return {total_magnetization_diagonal(L).cast<cplx>().asDiagonal(), "total magnetization"};
}

void write_matrix_csv(std::ostream& os, const CMatrix& m, const std::string& header_comment) {
    if (m.rows() != m.cols()) throw ParameterError("write_matrix_csv: matrix must be square");
    os << "# dim=" << m.rows() << "\n";
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "row,col,re,im\n";
    char buf[128];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r), static_cast<long>(c),
                          m(r, c).real(), m(r, c).imag());
            os << buf;
        }
}

CMatrix read_matrix_csv(std::istream& is) {
    std::string line;
    long dim = -1;
    CMatrix m;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto p = line.find("dim=");
            if (p != std::string::npos && dim < 0) {
                dim = std::stol(line.substr(p + 4));
                m = CMatrix::Zero(dim, dim);
            }
            continue;
        }
        if (line.rfind("row", 0) == 0) continue;
        if (dim < 0) throw ParameterError("read_matrix_csv: missing dim header");
        std::istringstream ls(line);
        std::string f[4];
        for (auto& x : f)
            if (!std::getline(ls, x, ',')) throw ParameterError("read_matrix_csv: malformed line: " + line);
        const long r = std::stol(f[0]), c = std::stol(f[1]);
        if (r < 0 || c < 0 || r >= dim || c >= dim) throw ParameterError("read_matrix_csv: index out of range");
        m(r, c) = cplx(std::stod(f[2]), std::stod(f[3]));
    }
    if (dim < 0) throw ParameterError("read_matrix_csv: missing dim header");
    return m;
}

std::vector<double> eigenphases(const CMatrix& unitary) {
    Eigen::ComplexEigenSolver<CMatrix> es(unitary, false);
    std::vector<double> ph;
    ph.reserve(es.eigenvalues().size());
    for (const auto& l : es.eigenvalues()) ph.push_back(wrap_angle(std::arg(l)));
    std::sort(ph.begin(), ph.end());
    return ph;
}

}  // namespace brickwall
