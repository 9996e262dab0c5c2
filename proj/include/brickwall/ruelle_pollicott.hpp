#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/gate_types.hpp"
#include "brickwall/integrability.hpp"

namespace brickwall {

inline constexpr int kMaxLocalRange = 6;

// A translation representative: letters over {1, z, +, -} (0..3, same
// normalization as pauli.hpp) on sites parity, parity+1, ..., parity+r-1 of the
// infinite chain. Letter i sits in bits 2i, 2i+1 of code; letter 0 is nonzero.
struct LocalString {
    int parity = 0;
    std::uint32_t code = 0;
};

inline int letter_at(std::uint32_t code, int i) { return static_cast<int>((code >> (2 * i)) & 3u); }
int string_charge(std::uint32_t code, int r);
// Number of sites up to and including the last non-identity letter.
int string_extent(std::uint32_t code, int r);
std::string string_label(const LocalString& s, int r);

struct LocalOperatorSpace {
    int r = 0;
    std::optional<int> parity;  // empty: both parities, parity 0 first
    int charge = 0;
    std::vector<LocalString> elements;

    std::size_t dim() const { return elements.size(); }
    std::optional<std::size_t> index_of(int parity, std::uint32_t code) const;

    std::unordered_map<std::uint64_t, std::size_t> lookup;
};

LocalOperatorSpace build_basis(int r, int parity, int charge);
LocalOperatorSpace build_basis(int r, int charge);
// Every charge block with at least one element, ascending.
std::vector<int> charge_blocks(int r);

// Sites [start, start + size) of the chain. The layer structure follows the
// global site parity: even-layer bonds (2j+1, 2j+2) act first, then odd-layer
// bonds (2j, 2j+1), i.e. U^dagger q U for U = E O.
struct OperatorWindow {
    int start = 0;
    int size = 0;
};

// Smallest window holding the one-step light cone of a range-r string of the given parity.
OperatorWindow light_cone_window(int r, int parity);

// Dense operator of a string on a window (identity elsewhere in the window).
CMatrix embed_string(const LocalString& q, int r, const OperatorWindow& window);

// U^dagger op U restricted to the window. The light cone of op's support must
// fit into the window; otherwise ParameterError.
CMatrix heisenberg_step(const CMatrix& op, const Mat4& gate, const OperatorWindow& window);

// G^dagger (a x b) G in the local string basis: entry ((a' << 2) | b', (a << 2) | b).
Eigen::Matrix<cplx, 16, 16> gate_superoperator(const Mat4& gate);

// k-independent matrix elements <S^{2 shift} q'|U q>, grouped by column.
struct RawElement {
    std::uint32_t row = 0;
    int shift = 0;
    cplx value;
};

struct RawPropagator {
    int r = 0;
    LocalOperatorSpace space;
    std::vector<std::vector<RawElement>> columns;
};

RawPropagator raw_propagator(const TwoQubitGate& gate, int r, int charge, int threads = 1);
// T(k)_{q', q} = sum_shift e^{-i k shift} <S^{2 shift} q'|U q>.
CMatrix assemble_propagator(const RawPropagator& raw, double k);

struct TruncatedPropagator {
    double k = 0.0;
    int r = 0;
    std::vector<LocalOperatorSpace> spaces;  // one per charge block
    std::vector<CMatrix> blocks;

    int charge(std::size_t b) const { return spaces[b].charge; }
};

// All charge blocks unless one is requested. Gates must conserve magnetization.
TruncatedPropagator truncated_propagator(const TwoQubitGate& gate, int r, double k,
                                         std::optional<int> charge = std::nullopt, int threads = 1);

struct RpEigenpair {
    cplx value;
    int charge = 0;
    CVector right;
    CVector left;
};

struct RpSpectrum {
    double k = 0.0;
    int r = 0;
    std::vector<int> charges;                    // parallel to eigenvalues
    std::vector<std::vector<cplx>> eigenvalues;  // per block, by decreasing modulus
    double spectral_radius = 0.0;
    double unit_tol = 1e-8;
    int unit_multiplicity = 0;
    std::vector<RpEigenpair> kept;  // |lambda| > 1 - keep_eps
    // Largest modulus outside the unit cluster.
    std::optional<cplx> lambda2;
    int lambda2_charge = 0;
};

RpSpectrum rp_spectrum(const TruncatedPropagator& tp, double keep_eps = 1e-8, double unit_tol = 1e-8);

// Unit-cluster right eigenvectors of one block, orthonormal columns.
CMatrix unit_eigenspace(const RpSpectrum& spectrum, int charge);

// Magnetization and the two range-3 charges Q1+- as vectors of a charge-0 space with r >= 3.
std::vector<CVector> known_charge_vectors(const RMatrixParams& p, const LocalOperatorSpace& space);

// Principal angles between the column spans, ascending.
std::vector<double> principal_angles(const CMatrix& a, const CMatrix& b);

enum class GapModel { exponential, linear };

struct GapPoint {
    int r = 0;
    cplx lambda2;
    int charge = 0;
    double gap = 0.0;  // 1 - |lambda2|
    int unit_multiplicity = 0;
};

struct GapFit {
    double k = 0.0;
    GapModel model = GapModel::exponential;
    std::vector<GapPoint> points;
    // exponential: gap = c e^{-rate r}; c_pinned is the least-squares
    // prefactor with rate fixed to pinned_rate.
    double c = 0.0;
    double rate = 0.0;
    double pinned_rate = 0.5;
    double c_pinned = 0.0;
    // linear: gap = intercept + slope r.
    double intercept = 0.0;
    double slope = 0.0;
    double sse = 0.0;  // residual in the fitted space (log gap or gap)
};

// At least two distinct ranges in [3, 6]. Refuses (DegenerateError) when a
// gap vanishes. Without a model, k = 0 selects exponential and k = pi linear.
GapFit gap_scaling(const TwoQubitGate& gate, double k, const std::vector<int>& r_list,
                   std::optional<GapModel> model = std::nullopt, int threads = 1);

std::string to_string(GapModel m);

}  // namespace brickwall
