#include <cmath>

#include "brickwall/dynamics.hpp"
#include "brickwall/gates.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace brickwall;

namespace {

TwoQubitGate xxz_gate(double delta, double tau = pi / 3) {
    HamiltonianGateParams p;
    p.tau = tau;
    p.delta = delta;
    return gate_from_hamiltonian(p);
}

// tr(U^-t A U^t B) / 2^L by repeated dense conjugation.
std::vector<double> dense_autocorrelation(const BrickworkCircuit& c, const RVector& a, const RVector& b, int steps) {
    const CMatrix u = build_propagator(c).entries;
    const double norm = std::ldexp(1.0, -c.L);
    CMatrix at = a.cast<cplx>().asDiagonal();
    const CMatrix bd = b.cast<cplx>().asDiagonal();
    std::vector<double> out;
    for (int t = 0; t <= steps; ++t) {
        out.push_back((at * bd).trace().real() * norm);
        at = u.adjoint() * at * u;
    }
    return out;
}

}  // namespace

TEST_CASE("exact traces against dense conjugation") {
    const int L = 8;
    const BrickworkCircuit c = BrickworkCircuit::two_gate(L, Boundary::open, gate_from_haar(sample_haar(3)),
                                                          gate_from_haar(sample_haar(4)));
    const RVector z0 = sigma_z_diagonal(0, L), z5 = sigma_z_diagonal(5, L);
    const auto ref = dense_autocorrelation(c, z0, z5, 12);
    const CorrelationSeries s = diagonal_autocorrelation(c, z0, z5, 12, CorrelationMethod::exact_trace);
    REQUIRE(s.values.size() == ref.size());
    for (std::size_t t = 0; t < ref.size(); ++t) CHECK(std::abs(s.values[t] - ref[t]) < 1e-12);

    const CorrelationSeries b = boundary_autocorrelation(xxz_gate(1.4), L, 5, CorrelationMethod::exact_trace);
    CHECK(b.values[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("typicality agrees with exact traces within its error bars") {
    const int L = 10, steps = 30;
    const TwoQubitGate g = xxz_gate(1.0);
    const CorrelationSeries exact = boundary_autocorrelation(g, L, steps, CorrelationMethod::exact_trace);
    int inside = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        TypicalityOptions o;
        o.samples = 20;
        o.seed = seed;
        const CorrelationSeries s = boundary_autocorrelation(g, L, steps, CorrelationMethod::typicality, o);
        for (int t = 0; t <= steps; ++t) {
            ++total;
            if (std::abs(s.values[t] - exact.values[t]) <= 3 * s.errors[t]) ++inside;
        }
        TypicalityOptions again = o;
        CHECK(boundary_autocorrelation(g, L, 3, CorrelationMethod::typicality, again).values[3] == s.values[3]);
    }
    CHECK(double(inside) / total >= 0.95);
}

TEST_CASE("trivial and conserved dynamics") {
    const int L = 8;
    const CorrelationSeries s = boundary_autocorrelation(TwoQubitGate{}, L, 10, CorrelationMethod::exact_trace);
    for (double v : s.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    const DomainWallResult still = domain_wall_evolution(TwoQubitGate{}, L, 5);
    for (const auto& prof : still.profiles)
        for (int j = 0; j < L; ++j) CHECK(prof[j] == (j < L / 2 ? 1.0 : -1.0));
    for (double m : still.transported) CHECK(m == 0.0);

    const DomainWallResult dw = domain_wall_evolution(gate_from_haar(sample_haar(17)), L, 40);
    CHECK(dw.max_sector_leak < 1e-12);
    for (const auto& prof : dw.profiles) {
        double tot = 0.0;
        for (double z : prof) tot += z;
        CHECK(std::abs(tot) < 1e-11);
    }
    CHECK(dw.transported.back() > 0.0);
}

TEST_CASE("staggered magnetization") {
    const int L = 8;
    const RVector s = staggered_magnetization_diagonal(L);
    // oracle: sign pattern - - + + - - + + over sites
    for (Eigen::Index st = 0; st < s.size(); ++st) {
        double v = 0.0;
        for (int j = 0; j < L; ++j) {
            const double z = (st >> (L - 1 - j)) & 1 ? 1.0 : -1.0;
            v += ((j / 2) % 2 == 0 ? -1.0 : 1.0) * z;
        }
        CHECK(s[st] == v);
    }
    CHECK(s.squaredNorm() * std::ldexp(1.0, -L) / L == doctest::Approx(1.0));
    const StaggeredResult r = staggered_correlation(xxz_gate(1.4), L, 10, CorrelationMethod::exact_trace);
    CHECK(r.series.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(staggered_magnetization_diagonal(6), ParameterError);
}

TEST_CASE("power-law and exponential fits") {
    std::vector<double> x, yp, ye;
    for (int t = 2; t <= 100; ++t) {
        x.push_back(t);
        yp.push_back(0.8 * std::pow(t, -0.7));
        ye.push_back(0.9 * std::exp(-0.05 * t));
    }
    const CurveFit p = fit_power_law(x, yp);
    CHECK(p.converged);
    CHECK(p.amplitude == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(p.exponent == doctest::Approx(-0.7).epsilon(1e-6));
    const CurveFit e = fit_exponential(x, ye);
    CHECK(e.converged);
    CHECK(e.amplitude == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(e.exponent == doctest::Approx(-0.05).epsilon(1e-6));
    // model selection goes the right way
    CHECK(fit_exponential(x, yp).sse > 10 * p.sse + 1e-12);
    CHECK(fit_power_law(x, ye).sse > 10 * e.sse + 1e-12);

    const LinearFit l = linear_fit({1, 2, 3}, {1, 3, 5});
    CHECK(l.slope == doctest::Approx(2.0));
    CHECK(l.intercept == doctest::Approx(-1.0));
}

TEST_CASE("dynamics capacity and argument errors") {
    const TwoQubitGate g = xxz_gate(1.0);
    CHECK_THROWS_AS(boundary_autocorrelation(g, 14, 2, CorrelationMethod::exact_trace), CapacityError);
    CHECK_THROWS_AS(boundary_autocorrelation(g, 16, 2, CorrelationMethod::typicality), CapacityError);
    CHECK_THROWS_AS(boundary_autocorrelation(g, 6, -1, CorrelationMethod::exact_trace), ParameterError);
    TypicalityOptions one;
    one.samples = 1;
    CHECK_THROWS_AS(boundary_autocorrelation(g, 6, 2, CorrelationMethod::typicality, one), ParameterError);
    CHECK_THROWS_AS(domain_wall_evolution(g, 22, 1), CapacityError);
    CHECK_THROWS_AS(parse_correlation_method("fast"), ParameterError);
}
