#include <numeric>
#include <random>

#include "brickwall/gates.hpp"
#include "brickwall/spectral.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace brickwall;

namespace {

std::vector<double> uniform_phases(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    std::vector<double> p(n);
    for (double& x : p) x = u(rng);
    std::sort(p.begin(), p.end());
    return p;
}

}  // namespace

TEST_CASE("spacings and r statistic against direct computation") {
    std::mt19937_64 rng(1);
    const auto p = uniform_phases(500, rng);
    const auto s = scaled_spacings(p);
    REQUIRE(s.size() == p.size());
    CHECK(std::accumulate(s.begin(), s.end(), 0.0) / s.size() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r_tilde(p) == doctest::Approx(oracle::r_tilde(p)).epsilon(1e-13));
}

TEST_CASE("RMT reference values from sampling oracles") {
    std::mt19937_64 rng(2);
    // Poisson: i.i.d. phases
    std::vector<double> all;
    double acc = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto p = uniform_phases(2000, rng);
        acc += oracle::r_tilde(p);
        const auto s = scaled_spacings(p);
        all.insert(all.end(), s.begin(), s.end());
    }
    CHECK(acc / 50 == doctest::Approx(kPoissonRTilde).epsilon(0.01));
    const SpacingHistogram hp = spacing_histogram(std::vector<double>(all.begin(), all.begin() + 10000), 40);
    CHECK(hp.tv_poisson < 0.05);
    CHECK(hp.closest() == "poisson");

    // COE and CUE from Haar unitaries.
    std::vector<double> coe_s, cue_s;
    double coe_r = 0.0, cue_r = 0.0;
    const int n = 200, reps = 30;
    for (int i = 0; i < reps; ++i) {
        const auto pc = oracle::phases_of(oracle::coe(n, rng));
        const auto pu = oracle::phases_of(oracle::cue(n, rng));
        coe_r += oracle::r_tilde(pc);
        cue_r += oracle::r_tilde(pu);
        const auto sc = scaled_spacings(pc), su = scaled_spacings(pu);
        coe_s.insert(coe_s.end(), sc.begin(), sc.end());
        cue_s.insert(cue_s.end(), su.begin(), su.end());
    }
    coe_r /= reps;
    cue_r /= reps;
    // targets used by the level-statistics acceptance
    CHECK(std::abs(coe_r - 0.53) < 0.015);
    CHECK(std::abs(cue_r - 0.60) < 0.015);
    const SpacingHistogram hc = spacing_histogram(coe_s, 40);
    CHECK(hc.tv_coe < 0.05);
    CHECK(hc.closest() == "coe");
    const SpacingHistogram hu = spacing_histogram(cue_s, 40);
    CHECK(hu.tv_cue < 0.05);
    CHECK(hu.closest() == "cue");

    CHECK(spacing_histogram(std::vector<double>(50, 1.0), 10).too_few);
}

TEST_CASE("surmise distributions are normalized") {
    CHECK(poisson_cdf(50.0) == doctest::Approx(1.0));
    CHECK(coe_surmise_cdf(50.0) == doctest::Approx(1.0));
    CHECK(cue_surmise_cdf(50.0) == doctest::Approx(1.0));
    // mean spacing one: integral of 1 - F
    for (auto f : {&poisson_cdf, &coe_surmise_cdf, &cue_surmise_cdf}) {
        double m = 0.0;
        const double h = 1e-4;
        for (double s = h / 2; s < 20; s += h) m += (1 - f(s)) * h;
        CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("sector spectra: identity, dimensions, unitarity") {
    const BrickworkCircuit id = BrickworkCircuit::homogeneous(8, Boundary::periodic, TwoQubitGate{});
    for (const auto& r : sector_spectrum(id, 0))
        for (double p : r.eigenphases) CHECK(std::min(p, 2 * pi - p) < 1e-12);

    const BrickworkCircuit c =
        BrickworkCircuit::two_gate(8, Boundary::periodic, gate_from_haar(sample_haar(1)), gate_from_haar(sample_haar(2)));
    std::size_t total = 0;
    for (int k = 0; k < 4; ++k) {
        SpectrumOptions o;
        o.k = k;
        o.resolve_reflection = false;
        for (const auto& r : sector_spectrum(c, 0, o)) {
            total += r.eigenphases.size();
            CHECK(r.unitarity_residual < 1e-10);
        }
    }
    CHECK(total == oracle::binomial(8, 4));
}

TEST_CASE("homogeneous integrable circuit is Poissonian once fully resolved") {
    HamiltonianGateParams p;
    p.tau = pi / 3;
    p.delta = 1.0;
    p.B = p.D = 0.5;
    const BrickworkCircuit c = BrickworkCircuit::homogeneous(10, Boundary::periodic, gate_from_hamiltonian(p));
    ResolutionOptions o;
    o.momentum = true;
    o.spacetime = true;
    o.min_levels = 10;
    const auto res = resolved_spectra(c, o);
    const SpacingHistogram h = spacing_histogram(res, 20);
    CHECK(h.closest() == "poisson");
    CHECK(std::abs(pooled_r_tilde(res) - kPoissonRTilde) < 0.05);
}

TEST_CASE("unresolved symmetry sectors push chaotic statistics towards Poisson") {
    const BrickworkCircuit c =
        BrickworkCircuit::two_gate(10, Boundary::open, gate_from_haar(sample_haar(5)), gate_from_haar(sample_haar(6)));
    const auto phases = oracle::phases_of(build_propagator(c).entries);
    const double merged = r_tilde(phases);
    ResolutionOptions o;
    o.min_levels = 10;
    const double resolved = pooled_r_tilde(resolved_spectra(c, o));
    CHECK(merged < 0.45);
    CHECK(resolved > merged + 0.05);
}
