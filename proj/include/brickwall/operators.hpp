#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/gate_types.hpp"

namespace brickwall {

// Largest L for which full 2^L x 2^L dense matrices are built.
inline constexpr int kMaxDenseSites = 12;
// Largest L for sector blocks and matrix-free evolution.
inline constexpr int kMaxSectorSites = 14;
inline constexpr int kMaxMatrixFreeSites = 20;

struct Operator {
    CMatrix entries;
    std::string label;

    int dim() const { return static_cast<int>(entries.rows()); }
    double unitarity_residual() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_residual() < tol; }
};

// Orthonormal basis of a fixed-magnetization sector, optionally symmetrized
// under the two-site shift. Without momentum each element is one bitstring;
// with momentum k element b is
//   (1/sqrt(R)) sum_{j<R} e^{-i kappa j} T^j |rep_b>,  kappa = 4 pi k / L,
// where T moves the content of site i to site i+2 and R is the orbit length.
struct SectorBasis {
    int L = 0;
    int magnetization = 0;
    std::optional<int> momentum;
    std::vector<std::uint64_t> representatives;
    std::vector<std::vector<std::pair<std::uint64_t, cplx>>> components;

    std::size_t dim() const { return representatives.size(); }
    // Eigenvalue of the two-site shift on this sector.
    cplx shift_eigenvalue() const;
    CVector embed(const CVector& coeffs) const;
    CVector project(const CVector& full) const;
    // 2^L x dim isometry; dense, for small L.
    CMatrix isometry() const;
};

SectorBasis sector_basis(int L, int m, std::optional<int> k = std::nullopt);

enum class Boundary { open, periodic };

std::string to_string(Boundary b);
Boundary parse_boundary(const std::string& s);

struct PlacedGate {
    int first = 0;
    int second = 1;
    TwoQubitGate gate;
};

using Layer = std::vector<PlacedGate>;

// Layers are applied in order; a standard brickwork step has the odd layer on
// pairs (0,1), (2,3), ... first and the even layer on (1,2), (3,4), ... second,
// closing with (L-1, 0) for periodic boundaries.
struct BrickworkCircuit {
    int L = 0;
    Boundary boundary = Boundary::open;
    std::vector<Layer> layers;

    static BrickworkCircuit brickwork(int L, Boundary boundary, const std::vector<TwoQubitGate>& odd,
                                      const std::vector<TwoQubitGate>& even);
    static BrickworkCircuit homogeneous(int L, Boundary boundary, const TwoQubitGate& gate);
    // Two gates alternating between the layers: gate_a on the odd layer, gate_b on the even one.
    static BrickworkCircuit two_gate(int L, Boundary boundary, const TwoQubitGate& gate_a,
                                     const TwoQubitGate& gate_b);

    int even_layer_size() const { return boundary == Boundary::periodic ? L / 2 : L / 2 - 1; }
    bool is_standard() const { return layers.size() == 2; }
};

void check_adjacent(int first, int second, int L, Boundary boundary);

// Unchecked kernel: act with g on sites (a, b) of an n-site register, with a as
// the first tensor factor. Sites need not be adjacent.
void apply_two_site(CVector& psi, const Mat4& g, int a, int b, int n);
void apply_two_site_columns(CMatrix& m, const Mat4& g, int a, int b, int n);

void apply_gate(CVector& state, const TwoQubitGate& gate, std::pair<int, int> sites, int L,
                Boundary boundary);
// Left action on every column of a dense operator.
void apply_gate(Operator& op, const TwoQubitGate& gate, std::pair<int, int> sites, int L,
                Boundary boundary);
// op -> G op G^dagger.
void conjugate_gate(Operator& op, const TwoQubitGate& gate, std::pair<int, int> sites, int L,
                    Boundary boundary);

CMatrix embed_two_site(const Mat4& g, int a, int b, int L);
// Embeds a k-site operator acting on consecutive sites start, start+1, ... (mod L).
CMatrix embed_local(const CMatrix& op, int start, int L);

CVector propagator_apply(const BrickworkCircuit& circuit, const CVector& state);
CVector propagator_apply_adjoint(const BrickworkCircuit& circuit, const CVector& state);
Operator build_propagator(const BrickworkCircuit& circuit);

// <b'|op|b> on a sector; refuses operators that leak out of it.
Operator restrict(const Operator& op, const SectorBasis& basis, double tol = 1e-10);
Operator restrict(const std::function<CVector(const CVector&)>& apply, const SectorBasis& basis,
                  double tol = 1e-10);

// Spin configuration maps. shift_state moves the content of site i to site i+n.
std::uint64_t shift_state(std::uint64_t state, int n, int L);
// Reflection j -> L-1-j composed with a global spin flip.
std::uint64_t reflect_flip_state(std::uint64_t state, int L);
CVector apply_shift(const CVector& psi, int n, int L);
CVector apply_reflect_flip(const CVector& psi, int L);

RVector sigma_z_diagonal(int site, int L);
RVector total_magnetization_diagonal(int L);
Operator total_magnetization(int L);

// CSV format: "# dim=<n>" header, then one "row,col,re,im" line per entry.
void write_matrix_csv(std::ostream& os, const CMatrix& m, const std::string& header_comment = "");
CMatrix read_matrix_csv(std::istream& is);

std::vector<double> eigenphases(const CMatrix& unitary);

}  // namespace brickwall
