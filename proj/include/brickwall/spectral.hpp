#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brickwall/core.hpp"
#include "brickwall/operators.hpp"

namespace brickwall {

struct SectorKey {
    int L = 0;
    Boundary boundary = Boundary::open;
    int m = 0;
    std::optional<int> k;
    int reflection = 0;       // +-1 when split by reflection-with-spin-flip, else 0
    int spacetime_block = -1; // 0 or 1 when split by K = S O, else -1

    std::string label() const;
};

struct SpectrumResult {
    SectorKey key;
    std::vector<double> eigenphases;  // sorted, in [0, 2pi)
    std::vector<double> spacings;     // cyclic, scaled to unit mean
    double r_tilde = 0.0;
    double unitarity_residual = 0.0;
};

struct SpectrumOptions {
    std::optional<int> k;
    bool spacetime = false;
    // Splits by reflection j -> L-1-j composed with a spin flip whenever it
    // maps the sector to itself and commutes with the block.
    bool resolve_reflection = true;
    double unitarity_tol = 1e-10;
};

std::vector<SpectrumResult> sector_spectrum(const BrickworkCircuit& circuit, int m, const SpectrumOptions& options = {});

struct ResolutionOptions {
    bool momentum = false;
    bool spacetime = false;
    bool resolve_reflection = true;
    // m >= 0 only; m and -m are related by reflection with spin flip.
    bool nonnegative_m = true;
    std::size_t min_levels = 20;
    int threads = 1;
};

// Every (m, k) sector of a circuit, each split as far as the options allow.
std::vector<SpectrumResult> resolved_spectra(const BrickworkCircuit& circuit, const ResolutionOptions& options);

std::vector<double> scaled_spacings(const std::vector<double>& sorted_phases);
// Mean of min(s_n, s_{n+1}) / max(s_n, s_{n+1}) over cyclic consecutive spacings.
double r_tilde(const std::vector<double>& sorted_phases);
double pooled_r_tilde(const std::vector<SpectrumResult>& results);

inline constexpr double kPoissonRTilde = 0.38629436111989057;  // 2 ln 2 - 1

struct SpacingHistogram {
    std::vector<double> edges;
    std::vector<double> density;
    std::vector<double> poisson;  // reference densities at bin centres
    std::vector<double> coe;
    std::vector<double> cue;
    double tv_poisson = 0.0;
    double tv_coe = 0.0;
    double tv_cue = 0.0;
    std::size_t count = 0;
    bool too_few = false;  // fewer than 200 spacings
    std::string closest() const;
};

// Total variation uses bin-integrated reference probabilities, with the tail
// beyond s_max as one extra bin.
SpacingHistogram spacing_histogram(const std::vector<double>& spacings, int bins, double s_max = 4.0);
SpacingHistogram spacing_histogram(const std::vector<SpectrumResult>& results, int bins, double s_max = 4.0);

// Cumulative distributions of the spacing surmises.
double poisson_cdf(double s);
double coe_surmise_cdf(double s);
double cue_surmise_cdf(double s);

}  // namespace brickwall
