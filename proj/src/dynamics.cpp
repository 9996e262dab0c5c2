#include "brickwall/dynamics.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "brickwall/parallel.hpp"
#include "brickwall/rng.hpp"

namespace brickwall {

std::string to_string(CorrelationMethod m) {
    return m == CorrelationMethod::exact_trace ? "exact-trace" : "typicality";
}

CorrelationMethod parse_correlation_method(const std::string& s) {
    if (s == "exact-trace" || s == "exact") return CorrelationMethod::exact_trace;
    if (s == "typicality") return CorrelationMethod::typicality;
    throw ParameterError("unknown correlation method '" + s + "' (exact-trace or typicality)");
}

namespace {

constexpr int kMaxTypicalitySites = 14;

std::vector<int> time_axis(int steps) {
    std::vector<int> t(steps + 1);
    for (int i = 0; i <= steps; ++i) t[i] = i;
    return t;
}

void exact_trace(const BrickworkCircuit& circuit, const RVector& a, const RVector& b, int steps,
                 std::vector<double>& values) {
    const int L = circuit.L;
    std::vector<double> acc(steps + 1, 0.0);
    auto apply = [&](const CVector& v) { return propagator_apply(circuit, v); };
    for (int m = -L; m <= L; m += 2) {
        const SectorBasis basis = sector_basis(L, m);
        const auto d = static_cast<Eigen::Index>(basis.dim());
        if (d == 0) continue;
        const Operator block = restrict(apply, basis);
        // normal matrix: the Schur form is diagonal and the Schur vectors are orthonormal
        Eigen::ComplexSchur<CMatrix> schur(block.entries);
        const CMatrix& q = schur.matrixU();
        CVector phase(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const cplx z = schur.matrixT()(i, i);
            phase[i] = z / std::abs(z);
        }
        RVector ad(d), bd(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            ad[i] = a[static_cast<Eigen::Index>(basis.representatives[i])];
            bd[i] = b[static_cast<Eigen::Index>(basis.representatives[i])];
        }
        const CMatrix at = q.adjoint() * ad.asDiagonal() * q;
        const CMatrix bt = q.adjoint() * bd.asDiagonal() * q;
        // tr(D^-t At D^t Bt) = x^dagger (At o Bt^T) x with x = D^t 1
        const CMatrix w = at.cwiseProduct(bt.transpose());
        CVector x = CVector::Ones(d);
        for (int t = 0; t <= steps; ++t) {
            acc[t] += x.dot(w * x).real();
            x = x.cwiseProduct(phase);
        }
    }
    const double norm = std::ldexp(1.0, -L);
    values.resize(steps + 1);
    for (int t = 0; t <= steps; ++t) values[t] = acc[t] * norm;
}

}  // namespace

CorrelationSeries diagonal_autocorrelation(const BrickworkCircuit& circuit, const RVector& a, const RVector& b,
                                           int steps, CorrelationMethod method, const TypicalityOptions& options) {
    if (steps < 0) throw ParameterError("steps must be non-negative");
    const Eigen::Index dim = Eigen::Index(1) << circuit.L;
    if (a.size() != dim || b.size() != dim) throw ParameterError("observables do not match the register");
    CorrelationSeries s;
    s.times = time_axis(steps);
    s.method = method;
    if (method == CorrelationMethod::exact_trace) {
        if (circuit.L > kMaxDenseSites) throw CapacityError("exact traces are limited to L <= 12; use typicality");
        exact_trace(circuit, a, b, steps, s.values);
        s.errors.assign(steps + 1, 0.0);
        return s;
    }

    if (circuit.L > kMaxTypicalitySites) throw CapacityError("typicality is limited to L <= 14");
    if (options.samples < 2) throw ParameterError("typicality needs at least two samples");
    s.samples = options.samples;
    s.seed = options.seed;
    std::vector<std::vector<double>> per_sample(options.samples);
    parallel_for(options.samples, options.threads, [&](std::size_t i) {
        Rng rng(derive_seed(options.seed, i));
        CVector left = rng.random_state(dim);
        CVector right = b.cast<cplx>().cwiseProduct(left);
        std::vector<double>& out = per_sample[i];
        out.resize(steps + 1);
        for (int t = 0; t <= steps; ++t) {
            out[t] = left.dot(a.cast<cplx>().cwiseProduct(right)).real();
            if (t < steps) {
                left = propagator_apply(circuit, left);
                right = propagator_apply(circuit, right);
            }
        }
    });
    s.values.assign(steps + 1, 0.0);
    s.errors.assign(steps + 1, 0.0);
    const double n = options.samples;
    for (int t = 0; t <= steps; ++t) {
        double mean = 0.0;
        for (const auto& v : per_sample) mean += v[t];
        mean /= n;
        double var = 0.0;
        for (const auto& v : per_sample) var += (v[t] - mean) * (v[t] - mean);
        var /= (n - 1.0);
        s.values[t] = mean;
        s.errors[t] = std::sqrt(var / n);
    }
    return s;
}

CorrelationSeries boundary_autocorrelation(const TwoQubitGate& gate, int L, int steps, CorrelationMethod method,
                                           const TypicalityOptions& options) {
    const BrickworkCircuit c = BrickworkCircuit::homogeneous(L, Boundary::open, gate);
    const RVector z0 = sigma_z_diagonal(0, L);
    return diagonal_autocorrelation(c, z0, z0, steps, method, options);
}

RVector staggered_magnetization_diagonal(int L) {
    if (L % 4 != 0) throw ParameterError("staggered magnetization on a ring needs L divisible by 4");
    RVector s = RVector::Zero(Eigen::Index(1) << L);
    for (int pair = 0; pair < L / 2; ++pair) {
        const double sign = pair % 2 == 0 ? -1.0 : 1.0;
        s += sign * (sigma_z_diagonal(2 * pair, L) + sigma_z_diagonal(2 * pair + 1, L));
    }
    return s;
}

DecayFit fit_decay(const CorrelationSeries& series, int t_min, int t_max) {
    if (t_min < 1 || t_max <= t_min) throw ParameterError("fit window needs 1 <= t_min < t_max");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const int t = series.times[i];
        if (t < t_min || t > t_max) continue;
        x.push_back(t);
        y.push_back(series.values[i]);
    }
    DecayFit f;
    f.t_min = t_min;
    f.t_max = t_max;
    f.power_law = fit_power_law(x, y);
    f.exponential = fit_exponential(x, y);
    f.sse_ratio = f.power_law.sse > 0.0 ? f.exponential.sse / f.power_law.sse
                                        : std::numeric_limits<double>::infinity();
    return f;
}

StaggeredResult staggered_correlation(const TwoQubitGate& gate, int L, int steps, CorrelationMethod method,
                                      const TypicalityOptions& options) {
    const BrickworkCircuit c = BrickworkCircuit::homogeneous(L, Boundary::periodic, gate);
    const RVector s = staggered_magnetization_diagonal(L);
    StaggeredResult out;
    out.series = diagonal_autocorrelation(c, s, s, steps, method, options);
    for (auto& v : out.series.values) v /= L;
    for (auto& e : out.series.errors) e /= L;
    if (steps >= 40) out.fit = fit_decay(out.series, steps / 20, steps);
    return out;
}

DomainWallResult domain_wall_evolution(const TwoQubitGate& gate, int L, int steps, Boundary boundary) {
    if (steps < 0) throw ParameterError("steps must be non-negative");
    if (L > kMaxMatrixFreeSites) throw CapacityError("state-vector evolution is limited to L <= 20");
    const BrickworkCircuit c = BrickworkCircuit::homogeneous(L, boundary, gate);
    const int half = L / 2;
    const Eigen::Index dim = Eigen::Index(1) << L;
    CVector psi = CVector::Zero(dim);
    const std::uint64_t wall = ((std::uint64_t(1) << half) - 1) << (L - half);
    psi[static_cast<Eigen::Index>(wall)] = 1.0;
    const int up = __builtin_popcountll(wall);

    DomainWallResult out;
    for (int t = 0; t <= steps; ++t) {
        std::vector<double> z(L, 0.0);
        double leak = 0.0;
        for (Eigen::Index s = 0; s < dim; ++s) {
            const double p = std::norm(psi[s]);
            if (p == 0.0) continue;
            if (__builtin_popcountll(static_cast<std::uint64_t>(s)) != up) leak += p;
            for (int j = 0; j < L; ++j) z[j] += site_bit(static_cast<std::uint64_t>(s), j, L) ? p : -p;
        }
        double moved = 0.0;
        for (int j = 0; j < half; ++j) moved += (1.0 - z[j]) / 2.0;
        out.times.push_back(t);
        out.profiles.push_back(std::move(z));
        out.transported.push_back(moved);
        out.max_sector_leak = std::max(out.max_sector_leak, leak);
        if (t < steps) psi = propagator_apply(c, psi);
    }
    return out;
}

}  // namespace brickwall
