#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/fit.hpp"
#include "brickwall/operators.hpp"

namespace brickwall {

enum class CorrelationMethod { exact_trace, typicality };

std::string to_string(CorrelationMethod m);
CorrelationMethod parse_correlation_method(const std::string& s);

struct CorrelationSeries {
    std::vector<int> times;
    std::vector<double> values;
    std::vector<double> errors;  // standard errors; zero for exact traces
    CorrelationMethod method = CorrelationMethod::exact_trace;
    int samples = 0;
    std::uint64_t seed = 0;
};

struct TypicalityOptions {
    int samples = 20;
    std::uint64_t seed = 0;
    int threads = 1;
};

// tr(A(t) B) / 2^L for diagonal A and B, A(t) = U^{-t} A U^t, t = 0..steps.
// exact_trace diagonalizes each magnetization block (L <= 12); typicality
// averages <psi|A(t) B|psi> over random normalized states (L <= 14).
CorrelationSeries diagonal_autocorrelation(const BrickworkCircuit& circuit, const RVector& a, const RVector& b,
                                           int steps, CorrelationMethod method, const TypicalityOptions& options = {});

// tr(sigma^z_0(t) sigma^z_0) / 2^L on an open chain.
CorrelationSeries boundary_autocorrelation(const TwoQubitGate& gate, int L, int steps, CorrelationMethod method,
                                           const TypicalityOptions& options = {});

// Staggered magnetization S = sum_j (-1)^(j+1) (z_{2j} + z_{2j+1}) on a ring.
RVector staggered_magnetization_diagonal(int L);

struct DecayFit {
    int t_min = 0;
    int t_max = 0;
    CurveFit power_law;
    CurveFit exponential;
    double sse_ratio = 0.0;  // exponential SSE over power-law SSE
};

// Both models fitted on t in [t_min, t_max].
DecayFit fit_decay(const CorrelationSeries& series, int t_min, int t_max);

struct StaggeredResult {
    CorrelationSeries series;
    DecayFit fit;
};

// <S(t) S> / (L 2^L) on a ring; fit window [steps / 20, steps].
StaggeredResult staggered_correlation(const TwoQubitGate& gate, int L, int steps, CorrelationMethod method,
                                      const TypicalityOptions& options = {});

struct DomainWallResult {
    std::vector<int> times;
    std::vector<std::vector<double>> profiles;  // <sigma^z_j(t)>
    std::vector<double> transported;            // spins moved across the interface
    double max_sector_leak = 0.0;
};

// Starts from up spins on sites 0..L/2-1 and down spins on the rest.
DomainWallResult domain_wall_evolution(const TwoQubitGate& gate, int L, int steps,
                                       Boundary boundary = Boundary::open);

}  // namespace brickwall
